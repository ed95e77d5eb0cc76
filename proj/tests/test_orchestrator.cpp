#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "saut/checkpoint.hpp"
#include "saut/control_models.hpp"
#include "saut/orchestrator.hpp"

using namespace saut;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  std::string path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

SearchConfig rank3_config() {
  SearchConfig cfg;
  cfg.rank = 3;
  cfg.degree_lo = 2;
  cfg.degree_hi = 7;
  return cfg;
}

}  // namespace

TEST_CASE("configuration validation") {
  SearchConfig cfg = rank3_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.rank = 2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = rank3_config();
  cfg.degree_hi = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = rank3_config();
  cfg.tau_budget = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("rank three sweep") {
  const RunReport r = run_search(rank3_config());
  REQUIRE(r.degrees.size() == 6);
  for (const DegreeReport& d : r.degrees) {
    if (d.degree <= 6)
      CHECK(d.outcome == DegreeOutcome::exhausted);
    else
      CHECK(d.outcome == DegreeOutcome::nontrivial);
  }
  CHECK(r.minimal_degree == 7);
  CHECK(r.exhausted_through == 6);
  CHECK(verify_certificate(r.degrees.back().certificate).pass);
}

TEST_CASE("no early stop keeps sweeping") {
  SearchConfig cfg = rank3_config();
  cfg.degree_hi = 8;
  // without the stop the sweep would hit degree 8, where a padded copy of
  // the degree-7 action exists, so the monotonicity check stays satisfied
  cfg.early_stop = true;
  const RunReport r = run_search(cfg);
  CHECK(r.degrees.back().degree == 7);

  cfg.early_stop = false;
  const RunReport r2 = run_search(cfg);
  CHECK(r2.degrees.back().degree == 8);
  CHECK(r2.degrees.back().outcome == DegreeOutcome::nontrivial);
  CHECK(r2.minimal_degree == 7);
}

TEST_CASE("report text is stable") {
  const RunReport a = run_search(rank3_config());
  const RunReport b = run_search(rank3_config());
  CHECK(a.to_text() == b.to_text());
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_text().find("x_3 7") != std::string::npos);
}

TEST_CASE("checkpointing, interruption and resume") {
  TempDir ref("saut_test_ref");
  SearchConfig cfg = rank3_config();
  cfg.checkpoint_dir = ref.path;
  cfg.threads = 1;
  run_search(cfg);
  const std::string ref_report = read_file(ref.path + "/report.txt");
  const std::string ref_cert = read_file(ref.path + "/cert_m7.json");

  // different thread count, same bytes
  {
    TempDir t2("saut_test_t2");
    cfg.checkpoint_dir = t2.path;
    cfg.threads = 2;
    run_search(cfg);
    CHECK(read_file(t2.path + "/report.txt") == ref_report);
    CHECK(read_file(t2.path + "/cert_m7.json") == ref_cert);
  }

  // interrupt at several event counts, resume, same bytes
  for (int k : {1, 2, 4, 7, 11}) {
    TempDir ti("saut_test_int");
    cfg.checkpoint_dir = ti.path;
    cfg.threads = 2;
    int events = 0;
    RunHooks hooks;
    hooks.on_event = [&](const std::string&) { return ++events < k; };
    const RunReport partial = run_search(cfg, hooks);
    CHECK(partial.aborted);
    const RunReport resumed = resume(ti.path, 2);
    CHECK(!resumed.aborted);
    CHECK(read_file(ti.path + "/report.txt") == ref_report);
    CHECK(read_file(ti.path + "/cert_m7.json") == ref_cert);
  }

  // resume of a completed run is a no-op reprint
  const RunReport again = resume(ref.path, 1);
  CHECK(again.to_text() == ref_report);

  // verification straight from the certificate file
  CHECK(verify_certificate_file(ref.path + "/cert_m7.json").pass);
  CHECK(verify_certificate_file(ref.path + "/cert_m5.json").pass);
}

TEST_CASE("checkpoint integrity failures") {
  TempDir t("saut_test_integrity");
  SearchConfig cfg = rank3_config();
  cfg.degree_hi = 5;
  cfg.checkpoint_dir = t.path;
  run_search(cfg);

  // edited ledger checksum
  {
    const std::string led = t.path + "/p3_m5.led";
    std::string content = read_file(led);
    content[content.find("tested") + 7] = 'X';
    std::ofstream(led, std::ios::binary | std::ios::trunc) << content;
    fs::remove(t.path + "/cert_m5.json");
    CHECK_THROWS_AS(resume(t.path, 1), checkpoint_error);
  }
}

TEST_CASE("header mismatch is an input error") {
  TempDir t("saut_test_header");
  SearchConfig cfg = rank3_config();
  cfg.degree_hi = 4;
  cfg.checkpoint_dir = t.path;
  run_search(cfg);
  cfg.degree_hi = 5;
  CHECK_THROWS_AS(run_search(cfg), std::invalid_argument);

  // corrupted header version
  std::string h = read_file(t.path + "/header.txt");
  h[0] = 'X';
  std::ofstream(t.path + "/header.txt", std::ios::binary | std::ios::trunc) << h;
  CHECK_THROWS_AS(resume(t.path, 1), checkpoint_error);
}

TEST_CASE("rank five filters certify small degrees without scanning") {
  SearchConfig cfg;
  cfg.rank = 5;
  cfg.degree_lo = 2;
  cfg.degree_hi = 6;
  const RunReport r = run_search(cfg);
  for (const DegreeReport& d : r.degrees) {
    CHECK(d.outcome == DegreeOutcome::exhausted);
    CHECK(d.certificate.candidates_tested == 0);
    CHECK(!d.certificate.filter_justifications.empty());
    CHECK(verify_certificate(d.certificate).pass);
  }
}

TEST_CASE("found actions generate the projective image groups") {
  auto image_order = [](const TransvectionImages& t) {
    std::vector<Permutation> gens;
    for (int i = 1; i <= t.rank; ++i)
      for (int j = 1; j <= t.rank; ++j) {
        if (i == j) continue;
        gens.push_back(t.rho(i, j));
        gens.push_back(t.lam(i, j));
      }
    return PermGroup(t.degree, gens).order();
  };
  // The control construction pins the expected abstract image order for
  // each rank independently of the search.
  const RunReport r3 = run_search(rank3_config());
  CHECK(image_order(r3.degrees.back().certificate.images) == image_order(psl_action(3)));

  SearchConfig cfg4;
  cfg4.rank = 4;
  cfg4.degree_lo = 2;
  cfg4.degree_hi = 8;
  const RunReport r4 = run_search(cfg4);
  CHECK(r4.minimal_degree == 8);
  CHECK(image_order(r4.degrees.back().certificate.images) == image_order(psl_action(4)));
}

TEST_CASE("capacity outcomes are recorded and the sweep continues") {
  SearchConfig cfg = rank3_config();
  cfg.degree_hi = 6;
  cfg.tau_budget = 100;
  const RunReport r = run_search(cfg);
  REQUIRE(r.degrees.size() == 5);
  CHECK(r.degrees[3].outcome == DegreeOutcome::exhausted);  // m=5 fits the budget
  CHECK(r.degrees[4].outcome == DegreeOutcome::capacity);   // m=6 does not
  CHECK(!r.degrees[4].capacity_detail.empty());
  CHECK(r.exhausted_through == 5);
}

TEST_CASE("injectivity override is honored") {
  // forcing the filter off at rank 3 keeps the classes and still exhausts
  SearchConfig cfg = rank3_config();
  cfg.degree_hi = 5;
  cfg.injectivity = InjectivityMode::on;
  const RunReport with_filter = run_search(cfg);
  cfg.injectivity = InjectivityMode::off;
  const RunReport without = run_search(cfg);
  for (std::size_t i = 0; i < with_filter.degrees.size(); ++i) {
    CHECK(with_filter.degrees[i].outcome == DegreeOutcome::exhausted);
    CHECK(without.degrees[i].outcome == DegreeOutcome::exhausted);
    CHECK(with_filter.degrees[i].certificate.candidates_tested <=
          without.degrees[i].certificate.candidates_tested);
  }
}
