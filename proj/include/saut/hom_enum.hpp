#pragma once

#include <string>
#include <vector>

#include "saut/perm.hpp"
#include "saut/perm_group.hpp"
#include "saut/small_group.hpp"

namespace saut {

// One conjugacy class of homomorphisms from a source group into the
// symmetric group of the stated degree, stored through its generator images
// and multiset of transitive constituents.
struct HomClass {
  std::string source;
  int degree = 0;
  std::vector<Permutation> gen_images;           // aligned with the source's generators
  std::vector<std::pair<int, int>> constituents;  // (subgroup class id, multiplicity)
  bool alternating = false;                       // every generator image even
  bool injective = false;                         // image order equals the source order
};

// One representative per conjugacy class of homomorphisms from g into the
// symmetric group on m points, enumerated as multisets of transitive
// constituents (coset actions on proper subgroup classes) padded with fixed
// points.  Classes not landing in the alternating group are included and
// flagged.  Output order is the lexicographic multiset order, so the
// trivial class comes first.
std::vector<HomClass> enumerate_hom_classes(const SmallGroup& g,
                                            const std::vector<SubgroupClass>& classes, int m,
                                            long long class_bound = 1000000);

// Oracle: direct generator-image search with relation checking, reduced to
// conjugacy classes by scanning the full symmetric group.  Feasible only
// for small sources and m <= 7.
std::vector<HomClass> brute_force_homs(const SmallGroup& g, int m);

// Lexicographically least conjugate of the image tuple under the full
// symmetric group; equal canonical forms mean conjugate homomorphisms.
std::vector<Permutation> canonical_hom_tuple(const std::vector<Permutation>& images, int m);

bool is_injective(const HomClass& h, const SmallGroup& g);

// Images of the marked generators (positions into gen_images).
std::vector<Permutation> restriction_images(const HomClass& h, const std::vector<int>& positions);

struct CompatibilityStats {
  long long kept = 0;
  long long removed = 0;
  long long conjugacy_tests = 0;
};

// Keeps the alphas whose restricted subgroup is conjugate, inside the full
// symmetric group, to some beta's restricted subgroup.  A kept alpha may
// still fail to extend; a removed one never extends.
std::vector<HomClass> compatibility_filter(const std::vector<HomClass>& alphas,
                                           const std::vector<int>& alpha_positions,
                                           const std::vector<HomClass>& betas,
                                           const std::vector<int>& beta_positions, int m,
                                           long long node_budget, CompatibilityStats* stats = nullptr);

}  // namespace saut
