#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "saut/hom_enum.hpp"
#include "saut/perm.hpp"
#include "saut/perm_group.hpp"
#include "saut/small_group.hpp"

namespace saut {

// Candidate images of every transvection, indexed by ordered pairs of
// distinct 1-based indices.
struct TransvectionImages {
  int rank = 0;
  int degree = 0;
  std::vector<Permutation> rho_flat, lam_flat;  // rank*rank entries, diagonal unused

  TransvectionImages() = default;
  TransvectionImages(int n, int m);

  const Permutation& rho(int i, int j) const { return rho_flat[(i - 1) * rank + (j - 1)]; }
  const Permutation& lam(int i, int j) const { return lam_flat[(i - 1) * rank + (j - 1)]; }
  Permutation& rho(int i, int j) { return rho_flat[(i - 1) * rank + (j - 1)]; }
  Permutation& lam(int i, int j) { return lam_flat[(i - 1) * rank + (j - 1)]; }

  bool all_trivial() const;
};

struct RelationAudit {
  long long instances = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// Full relation audit over the images; a clean pass proves the images
// extend to a homomorphism of the whole special automorphism group.
RelationAudit verify_certificate_images(const TransvectionImages& t);

// Fast variant: stops at the first failure, no labels.
bool audit_images_pass(const TransvectionImages& t);

// The single cheap necessary test applied to every candidate.
bool check_r2(const TransvectionImages& t);

enum class ImageClass { trivial, nontrivial };
ImageClass classify(const TransvectionImages& t);

// Per-class data for rebuilding transvection images from a candidate tau:
// conjugators for directly reachable pairs, recipes through the commutator
// relation for the rest, and the images of the pair sign flips.
class TransvectionBuilder {
public:
  // alpha_images are aligned with d.generators().
  TransvectionBuilder(const SmallGroup& d, const std::vector<Permutation>& alpha_images, int n, int m);

  int rank() const { return n_; }
  int degree() const { return m_; }

  // Images of the stabilizer subgroup generators (empty for rank 3).
  const std::vector<Permutation>& stabilizer_images() const { return s_images_; }

  // Requires tau even and centralizing the stabilizer images.
  TransvectionImages build(const Permutation& tau) const;

  // Evaluates the tested relation from the three images it involves,
  // without building the rest.  Falls back to a full build at rank 3,
  // where the third image is synthesized from the relation itself.
  bool passes_r2(const Permutation& tau) const;

private:
  int n_, m_;
  struct PairRecipe {
    bool direct = true;
    Permutation conj;  // image of the chosen even label permutation
    int via = 0;       // intermediate index for the commutator route
  };
  std::vector<PairRecipe> pair_;  // (i-1)*n + (j-1)
  std::vector<Permutation> eps_conj_;
  std::vector<Permutation> s_images_;
  std::vector<std::pair<int, int>> build_order_;  // direct pairs first
};

// Either a verified nontrivial homomorphism or an exhaustion record.
struct Certificate {
  enum class Kind { nontrivial, exhausted };
  Kind kind = Kind::exhausted;
  int rank = 0;
  int degree = 0;

  // nontrivial
  int alpha_index = -1;
  unsigned long long tau_index = 0;
  TransvectionImages images;
  long long audit_instances = 0;

  // exhausted
  long long classes_enumerated = 0;
  long long classes_filtered = 0;
  long long alphas_searched = 0;
  unsigned long long candidates_tested = 0;
  unsigned long long r2_passes = 0;
  unsigned long long full_audit_passes = 0;
  std::vector<std::string> filter_justifications;

  std::string to_json() const;
  static Certificate from_json(const std::string& text);
};

// Re-runs the full audit from the certificate contents alone.  Exhaustion
// records are checked structurally.
struct VerifyResult {
  bool pass = false;
  std::string detail;
  RelationAudit audit;
};
VerifyResult verify_certificate(const Certificate& c);

struct ShardSpec {
  int id = 0;
  int alpha = 0;
  unsigned long long tau_lo = 0, tau_hi = 0;
};

struct ShardResult {
  int id = 0;
  int alpha = 0;
  unsigned long long tau_lo = 0, tau_hi = 0;
  unsigned long long tested = 0, r2_passes = 0, audit_passes = 0;
  long long hit_tau = -1;  // first candidate passing the full audit nontrivially

  std::string to_line() const;
  static ShardResult from_line(const std::string& line);
};

// Scans candidates [tau_lo, tau_hi) of the centralizer enumeration for one
// class; stops at the first nontrivial full-audit pass.
ShardResult scan_shard(const TransvectionBuilder& builder, const ElementIndexer& centralizer,
                       const ShardSpec& spec, bool extra_inner_screen = false);

struct SearchDegreeConfig {
  unsigned long long tau_budget = 1000000000ULL;
  unsigned long long shard_size = 65536;
  int threads = 0;  // 0: library default
  bool parallel = true;
  // Additionally screens candidates with one fourth-family instance before
  // the full audit.  Purely an optimization: outcomes and counts are
  // unchanged, since every screen is necessary and passers are audited in
  // full either way.
  bool extra_inner_screen = false;
};

struct DegreeSearchInput {
  int rank = 0;
  int degree = 0;
  const SmallGroup* d_group = nullptr;
  std::vector<HomClass> alphas;
  long long classes_enumerated = 0;
  long long classes_filtered = 0;
  std::vector<std::string> filter_justifications;
};

// Runs the candidate scan for one degree.  `precomputed` carries shard
// results from a checkpoint; `on_shard` is called once per freshly
// completed shard and may return false to request a stop, in which case
// search_interrupted is raised once in-flight work drains.  The outcome is
// independent of thread count.
Certificate search_degree(const DegreeSearchInput& input, const SearchDegreeConfig& cfg,
                          const std::vector<ShardResult>* precomputed = nullptr,
                          const std::function<bool(const ShardResult&)>& on_shard = nullptr);

// Plain double loop over classes and candidates, no shards, no threads.
// Kept as the reference the parallel kernel is tested against; agrees with
// search_degree on the outcome, the winning candidate, and (for exhausted
// degrees) the work counts.
Certificate search_degree_serial(const DegreeSearchInput& input, unsigned long long tau_budget);

}  // namespace saut
