// Command line front end: degree sweeps with checkpoints, certificate
// verification, control certificates and the symbolic relation self test.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "saut/checkpoint.hpp"
#include "saut/common.hpp"
#include "saut/control_models.hpp"
#include "saut/free_aut.hpp"
#include "saut/orchestrator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitCheckpoint = 3;

int env_threads() {
  const char* v = std::getenv("SAUT_THREADS");
  return v ? std::atoi(v) : 0;
}

std::string default_checkpoint_dir(int rank, int lo, int hi) {
  const char* root = std::getenv("SAUT_CHECKPOINT_ROOT");
  if (!root || !*root) return {};
  return std::string(root) + "/rank" + std::to_string(rank) + "_d" + std::to_string(lo) + "-" +
         std::to_string(hi);
}

void print_report(const saut::RunReport& report, bool as_json) {
  if (as_json)
    std::cout << report.to_json();
  else
    std::cout << report.to_text();
}

struct ProgressPrinter {
  bool quiet = false;
  void operator()(const std::string& label) const {
    if (!quiet) std::fprintf(stderr, "[saut] %s\n", label.c_str());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exhaustive search for small permutation actions of the special automorphism group"};
  app.require_subcommand(1);

  // search
  auto* search = app.add_subcommand("search", "sweep a degree range for one rank");
  int rank = 3;
  std::string degrees = "2..7";
  int threads = env_threads();
  std::string checkpoint;
  std::string injectivity = "auto";
  std::string compat = "on";
  unsigned long long budget_tau = 1000000000ULL;
  long long budget_nodes = 100000000LL;
  long long budget_classes = 1000000LL;
  unsigned long long shard_size = 65536;
  bool no_early_stop = false;
  bool as_json = false;
  bool quiet = false;
  bool serial = false;
  search->add_option("--rank", rank, "rank of the free group (>= 3)")->required();
  search->add_option("--degrees", degrees, "degree range LO..HI")->required();
  search->add_option("--threads", threads, "worker threads (0: library default)");
  search->add_option("--checkpoint", checkpoint, "checkpoint directory (resumable)");
  search->add_option("--injectivity", injectivity, "injectivity filter: auto|on|off");
  search->add_option("--compat", compat, "restriction compatibility filter: on|off");
  search->add_option("--budget-tau", budget_tau, "max candidates per class");
  search->add_option("--budget-nodes", budget_nodes, "conjugacy search node budget");
  search->add_option("--budget-classes", budget_classes, "homomorphism class bound");
  search->add_option("--shard-size", shard_size, "candidates per work shard");
  bool extra_screen = false;
  search->add_flag("--no-early-stop", no_early_stop, "keep sweeping past the first nontrivial degree");
  search->add_flag("--extra-screen", extra_screen, "add a fourth-family screen to the inner loop");
  search->add_flag("--json", as_json, "machine readable report on stdout");
  search->add_flag("--quiet", quiet, "suppress progress lines");
  search->add_flag("--serial", serial, "disable the parallel kernel");

  // resume
  auto* res = app.add_subcommand("resume", "continue a checkpointed sweep");
  std::string res_checkpoint;
  int res_threads = env_threads();
  bool res_json = false;
  bool res_quiet = false;
  res->add_option("--checkpoint", res_checkpoint, "checkpoint directory")->required();
  res->add_option("--threads", res_threads, "worker threads");
  res->add_flag("--json", res_json, "machine readable report on stdout");
  res->add_flag("--quiet", res_quiet, "suppress progress lines");

  // verify
  auto* ver = app.add_subcommand("verify", "re-run the relation audit on a certificate file");
  std::string cert_path;
  ver->add_option("file", cert_path, "certificate file")->required();

  // control
  auto* control = app.add_subcommand("control", "known nontrivial actions as positive controls");
  auto* psl = control->add_subcommand("psl", "projective action over the field with two elements");
  int psl_rank = 3;
  std::string psl_out;
  psl->add_option("--rank", psl_rank, "rank (>= 3); degree is 2^rank - 1")->required();
  psl->add_option("--out", psl_out, "output certificate file");
  control->require_subcommand(1);

  // selftest
  auto* selftest = app.add_subcommand("selftest", "internal consistency checks");
  auto* gersten = selftest->add_subcommand("gersten", "verify the relation families symbolically");
  int st_rank = 3;
  gersten->add_option("--rank", st_rank, "rank (>= 3)")->required();
  selftest->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*search) {
      const auto dots = degrees.find("..");
      if (dots == std::string::npos) {
        std::fprintf(stderr, "error: --degrees must look like LO..HI\n");
        return kExitInput;
      }
      saut::SearchConfig cfg;
      cfg.rank = rank;
      cfg.degree_lo = std::stoi(degrees.substr(0, dots));
      cfg.degree_hi = std::stoi(degrees.substr(dots + 2));
      cfg.threads = threads;
      cfg.checkpoint_dir =
          checkpoint.empty() ? default_checkpoint_dir(rank, cfg.degree_lo, cfg.degree_hi) : checkpoint;
      cfg.injectivity = saut::parse_injectivity_mode(injectivity);
      if (compat != "on" && compat != "off") throw std::invalid_argument("--compat must be on or off");
      cfg.compat_filter = compat == "on";
      cfg.early_stop = !no_early_stop;
      cfg.tau_budget = budget_tau;
      cfg.node_budget = budget_nodes;
      cfg.class_bound = budget_classes;
      cfg.shard_size = shard_size;
      cfg.parallel = !serial;
      cfg.extra_inner_screen = extra_screen;

      ProgressPrinter progress{quiet || as_json};
      saut::RunHooks hooks;
      hooks.on_event = [&](const std::string& label) {
        progress(label);
        return true;
      };
      const saut::RunReport report = saut::run_search(cfg, hooks);
      print_report(report, as_json);
      return kExitOk;
    }

    if (*res) {
      ProgressPrinter progress{res_quiet || res_json};
      saut::RunHooks hooks;
      hooks.on_event = [&](const std::string& label) {
        progress(label);
        return true;
      };
      const saut::RunReport report = saut::resume(res_checkpoint, res_threads, true, hooks);
      print_report(report, res_json);
      return kExitOk;
    }

    if (*ver) {
      const saut::VerifyResult result = saut::verify_certificate_file(cert_path);
      std::printf("%s: %s\n", result.pass ? "pass" : "fail", result.detail.c_str());
      if (!result.pass && !result.audit.failures.empty())
        for (const std::string& f : result.audit.failures) std::printf("  witness: %s\n", f.c_str());
      return result.pass ? kExitOk : kExitFailure;
    }

    if (*psl) {
      const saut::TransvectionImages images = saut::psl_action(psl_rank);
      saut::Certificate cert;
      cert.kind = saut::Certificate::Kind::nontrivial;
      cert.rank = psl_rank;
      cert.degree = images.degree;
      cert.images = images;
      const saut::RelationAudit audit = saut::verify_certificate_images(images);
      cert.audit_instances = audit.instances;
      if (!audit.pass()) {
        std::fprintf(stderr, "control images fail the relation audit\n");
        return kExitFailure;
      }
      const std::string out =
          psl_out.empty() ? "control_psl_rank" + std::to_string(psl_rank) + ".json" : psl_out;
      saut::atomic_write_file(out, cert.to_json());
      std::printf("wrote %s: degree %d, %lld relation instances verified, %s\n", out.c_str(),
                  images.degree, audit.instances,
                  saut::classify(images) == saut::ImageClass::nontrivial ? "nontrivial" : "trivial");
      return kExitOk;
    }

    if (*gersten) {
      const saut::GerstenReport report = saut::check_gersten(st_rank);
      std::printf("rank %d: %lld relation instances, %zu failures\n", st_rank, report.instances,
                  report.failures.size());
      for (const std::string& f : report.failures) std::printf("  FAIL %s\n", f.c_str());
      return report.ok() ? kExitOk : kExitFailure;
    }
  } catch (const saut::checkpoint_error& e) {
    std::fprintf(stderr, "checkpoint error: %s\n", e.what());
    return kExitCheckpoint;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const saut::capacity_error& e) {
    std::fprintf(stderr, "capacity error: %s\n", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitInput;
}
