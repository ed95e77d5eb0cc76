// End-to-end acceptance suite.  Each criterion prints one pass/fail line;
// the process exits nonzero if any of them fail.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "saut/checkpoint.hpp"
#include "saut/control_models.hpp"
#include "saut/free_aut.hpp"
#include "saut/hom_enum.hpp"
#include "saut/orchestrator.hpp"

using namespace saut;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion %d: %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(), secs,
              detail.empty() ? "" : " - ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

RunReport sweep(int rank, int lo, int hi) {
  SearchConfig cfg;
  cfg.rank = rank;
  cfg.degree_lo = lo;
  cfg.degree_hi = hi;
  return run_search(cfg);
}

bool outcomes_match(const RunReport& r, int nontrivial_at, std::string& detail) {
  for (const DegreeReport& d : r.degrees) {
    const DegreeOutcome want =
        (nontrivial_at > 0 && d.degree == nontrivial_at) ? DegreeOutcome::nontrivial : DegreeOutcome::exhausted;
    if (d.outcome != want) {
      detail = "unexpected outcome at degree " + std::to_string(d.degree);
      return false;
    }
    if (!verify_certificate(d.certificate).pass) {
      detail = "certificate verification failed at degree " + std::to_string(d.degree);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  RunReport rank3, rank4, rank5;

  criterion(1, "transvection relation families hold symbolically for ranks 3..6", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int n : {3, 4, 5, 6}) {
      const GerstenReport r = check_gersten(n);
      if (!r.ok() || r.instances == 0) {
        detail = "rank " + std::to_string(n) + ": " + std::to_string(r.failures.size()) + " failures";
        return false;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) {
      detail = "exceeded one minute";
      return false;
    }
    return true;
  });

  criterion(2, "centralizer of the first transvection in D_5' is the order-12 stabilizer",
            [](std::string& detail) {
              const auto t0 = std::chrono::steady_clock::now();
              const std::vector<FreeAut> d5 = d_n_prime_elements(5);
              if (d5.size() != 960) {
                detail = "expected 960 elements";
                return false;
              }
              const FreeAut rho12 = FreeAut::make_generator(GenKind::rho, 1, 2, 5);
              const std::vector<FreeAut> cent = brute_force_centralizer(d5, rho12);
              const std::vector<FreeAut> stab = stabilizer_of_first_two(d5);
              if (cent.size() != 12 || stab.size() != 12 || cent != stab) {
                detail = "centralizer has " + std::to_string(cent.size()) + " elements";
                return false;
              }
              const double secs =
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
              if (secs >= 60.0) {
                detail = "exceeded one minute";
                return false;
              }
              return true;
            });

  criterion(3, "rank 3: exhausted through degree 6, verified nontrivial at 7", [&](std::string& detail) {
    rank3 = sweep(3, 2, 7);
    if (!outcomes_match(rank3, 7, detail)) return false;
    if (rank3.minimal_degree != 7) {
      detail = "minimal degree " + std::to_string(rank3.minimal_degree);
      return false;
    }
    return true;
  });

  criterion(4, "rank 4: exhausted through degree 7, verified nontrivial at 8", [&](std::string& detail) {
    rank4 = sweep(4, 2, 8);
    if (!outcomes_match(rank4, 8, detail)) return false;
    if (rank4.minimal_degree != 8) {
      detail = "minimal degree " + std::to_string(rank4.minimal_degree);
      return false;
    }
    return true;
  });

  criterion(5, "projective control certificates pass the full audit", [](std::string& detail) {
    for (int n : {3, 5}) {
      const TransvectionImages t = psl_action(n);
      if (t.degree != (1 << n) - 1) {
        detail = "wrong degree for rank " + std::to_string(n);
        return false;
      }
      const RelationAudit audit = verify_certificate_images(t);
      if (!audit.pass() || classify(t) != ImageClass::nontrivial) {
        detail = "rank " + std::to_string(n) + " control failed";
        return false;
      }
    }
    return true;
  });

  criterion(6, "rank 5: exhausted for every degree through 11", [&](std::string& detail) {
    rank5 = sweep(5, 2, 11);
    if (!outcomes_match(rank5, 0, detail)) return false;
    if (rank5.exhausted_through != 11) {
      detail = "exhausted through " + std::to_string(rank5.exhausted_through);
      return false;
    }
    return true;
  });

  criterion(7, "class enumeration equals the brute force oracle on five source/degree pairs",
            [](std::string& detail) {
              struct Case {
                SmallGroup g;
                int m;
              };
              std::vector<Case> cases;
              cases.push_back({SmallGroup::from_generators("C2", 2, {Permutation::from_images({1, 0})}), 4});
              cases.push_back({SmallGroup::from_generators("C2", 2, {Permutation::from_images({1, 0})}), 5});
              cases.push_back({SmallGroup::from_generators(
                                   "S3", 3,
                                   {Permutation::from_images({1, 0, 2}), Permutation::from_images({1, 2, 0})}),
                               5});
              cases.push_back({SmallGroup::d_n_prime(3), 6});
              cases.push_back({SmallGroup::alternating(4), 6});
              for (const Case& c : cases) {
                const auto fast = enumerate_hom_classes(c.g, subgroup_classes(c.g), c.m);
                const auto brute = brute_force_homs(c.g, c.m);
                std::set<std::vector<Permutation>> a, b;
                for (const HomClass& h : fast) a.insert(canonical_hom_tuple(h.gen_images, c.m));
                for (const HomClass& h : brute) b.insert(canonical_hom_tuple(h.gen_images, c.m));
                if (a != b || fast.size() != brute.size()) {
                  detail = c.g.name() + " at degree " + std::to_string(c.m) + ": " +
                           std::to_string(fast.size()) + " vs " + std::to_string(brute.size());
                  return false;
                }
              }
              return true;
            });

  criterion(8, "the twelfth-root character is multiplicative and its order-two quotient is onto",
            [](std::string& detail) {
              if (chi(SL2Mat{}) != 0) {
                detail = "identity image nonzero";
                return false;
              }
              std::mt19937_64 rng(1618);
              std::uniform_int_distribution<int> pick(0, 1);
              std::uniform_int_distribution<int> len(1, 30);
              bool onto = false;
              for (int trial = 0; trial < 1000; ++trial) {
                SL2Mat x, y;
                for (int i = 0, n = len(rng); i < n; ++i) x = sl2_mul(x, pick(rng) ? sl2_s() : sl2_t());
                for (int i = 0, n = len(rng); i < n; ++i) y = sl2_mul(y, pick(rng) ? sl2_s() : sl2_t());
                if (chi(sl2_mul(x, y)) != (chi(x) + chi(y)) % 12) {
                  detail = "multiplicativity failed";
                  return false;
                }
                if (psi_chi(x) == 1) onto = true;
              }
              if (psi_chi(sl2_t()) != 1) onto = false;
              if (!onto) {
                detail = "order-two quotient not onto";
                return false;
              }
              return true;
            });

  criterion(9, "interrupted runs resume to byte-identical reports at any thread count",
            [](std::string& detail) {
              const std::string base = (fs::temp_directory_path() / "saut_acceptance").string();
              fs::remove_all(base);
              SearchConfig cfg;
              cfg.rank = 3;
              cfg.degree_lo = 2;
              cfg.degree_hi = 7;

              cfg.checkpoint_dir = base + "/ref";
              cfg.threads = 1;
              run_search(cfg);
              const std::string ref_report = read_file(cfg.checkpoint_dir + "/report.txt");
              const std::string ref_cert = read_file(cfg.checkpoint_dir + "/cert_m7.json");

              // count checkpoint events of a clean run
              int total_events = 0;
              {
                cfg.checkpoint_dir = base + "/count";
                cfg.threads = 2;
                RunHooks hooks;
                hooks.on_event = [&](const std::string&) {
                  ++total_events;
                  return true;
                };
                run_search(cfg, hooks);
                if (read_file(cfg.checkpoint_dir + "/report.txt") != ref_report) {
                  detail = "two-thread report differs";
                  return false;
                }
                if (read_file(cfg.checkpoint_dir + "/cert_m7.json") != ref_cert) {
                  detail = "two-thread certificate differs";
                  return false;
                }
              }

              std::mt19937_64 rng(31415);
              std::uniform_int_distribution<int> point(1, total_events);
              for (int trial = 0; trial < 5; ++trial) {
                const int stop_at = point(rng);
                cfg.checkpoint_dir = base + "/int" + std::to_string(trial);
                cfg.threads = 2;
                int events = 0;
                RunHooks hooks;
                hooks.on_event = [&](const std::string&) { return ++events < stop_at; };
                run_search(cfg, hooks);
                resume(cfg.checkpoint_dir, 2);
                if (read_file(cfg.checkpoint_dir + "/report.txt") != ref_report ||
                    read_file(cfg.checkpoint_dir + "/cert_m7.json") != ref_cert) {
                  detail = "resume after interruption at event " + std::to_string(stop_at) + " differs";
                  return false;
                }
              }
              fs::remove_all(base);
              return true;
            });

  criterion(10, "computed minimal degrees are monotone: 7, 8, then a rank-5 bound of at least 12",
            [&](std::string& detail) {
              if (rank3.minimal_degree != 7 || rank4.minimal_degree != 8) {
                detail = "minimal degrees not established";
                return false;
              }
              const int rank5_bound = rank5.exhausted_through + 1;
              if (rank5_bound < 12) {
                detail = "rank-5 lower bound only " + std::to_string(rank5_bound);
                return false;
              }
              if (!(rank3.minimal_degree <= rank4.minimal_degree &&
                    rank4.minimal_degree <= rank5_bound)) {
                detail = "sequence not increasing";
                return false;
              }
              return true;
            });

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
