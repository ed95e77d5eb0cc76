#pragma once

#include <functional>
#include <string>
#include <vector>

#include "saut/gersten_search.hpp"

namespace saut {

enum class InjectivityMode { automatic, on, off };

struct SearchConfig {
  int rank = 3;
  int degree_lo = 2;
  int degree_hi = 7;
  int threads = 0;  // 0: library default
  std::string checkpoint_dir;
  InjectivityMode injectivity = InjectivityMode::automatic;
  bool compat_filter = true;
  bool early_stop = true;
  unsigned long long tau_budget = 1000000000ULL;
  long long node_budget = 100000000LL;
  long long class_bound = 1000000LL;
  unsigned long long shard_size = 65536;
  bool parallel = true;
  bool extra_inner_screen = false;

  void validate() const;  // throws std::invalid_argument
};

enum class DegreeOutcome { exhausted, nontrivial, capacity };

struct DegreeReport {
  int degree = 0;
  DegreeOutcome outcome = DegreeOutcome::exhausted;
  Certificate certificate;
  std::string capacity_detail;
};

struct RunReport {
  int rank = 0;
  int degree_lo = 0, degree_hi = 0;
  InjectivityMode injectivity = InjectivityMode::automatic;
  bool compat_filter = true;
  bool early_stop = true;
  std::vector<DegreeReport> degrees;
  int minimal_degree = -1;        // smallest degree with a nontrivial action, if found
  int exhausted_through = -1;     // largest m with every degree in [lo..m] exhausted
  bool aborted = false;           // stopped early by a hook; not serialized

  std::string to_text() const;
  std::string to_json() const;
};

struct RunHooks {
  // Called after every checkpoint event; return false to stop the run at a
  // clean point (the partial state resumes losslessly).
  std::function<bool(const std::string&)> on_event;
};

// Phases: construct the finite source groups, enumerate and filter the
// homomorphism classes per degree, then scan every candidate transvection
// image.  Low-to-high over degrees, stopping at the first nontrivial degree
// unless early_stop is off.  With a checkpoint directory the run is
// resumable and its report and certificates are byte-identical across
// thread counts and interruption patterns.
RunReport run_search(const SearchConfig& cfg, const RunHooks& hooks = {});

// Reconstructs the configuration from the checkpoint header and continues.
RunReport resume(const std::string& checkpoint_dir, int threads = 0, bool parallel = true,
                 const RunHooks& hooks = {});

VerifyResult verify_certificate_file(const std::string& path);

std::string injectivity_mode_name(InjectivityMode m);
InjectivityMode parse_injectivity_mode(const std::string& s);

}  // namespace saut
