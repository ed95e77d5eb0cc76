#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "saut/perm.hpp"

namespace saut {

// One level of a stabilizer chain.  transversal[t] maps base to orbit[t];
// orbit[0] == base and transversal[0] is the identity.
struct ChainLevel {
  int base = -1;
  std::vector<int> orbit;
  std::vector<int> orbit_pos;  // point -> orbit index, -1 outside
  std::vector<Permutation> transversal;
  std::vector<Permutation> gens;
};

struct StabChain {
  int degree = 0;
  std::vector<ChainLevel> levels;

  unsigned long long order() const;  // capacity error beyond 64 bits
  bool contains(const Permutation& p) const;
};

// A finitely generated permutation group.  Once built, the chain is
// immutable and shared; copies are cheap and safe across threads.
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Permutation> generators);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  // Deterministic chain: base points are the smallest moved points, orbits
  // in generator-BFS order.  Idempotent.
  void build_chain() const;
  const StabChain& chain() const;

  unsigned long long order() const;
  bool contains(const Permutation& p) const;

  // All elements in lexicographic order of image arrays.
  std::vector<Permutation> elements(unsigned long long bound) const;

private:
  int degree_ = 0;
  std::vector<Permutation> gens_;
  mutable std::shared_ptr<const StabChain> chain_;
};

PermGroup symmetric_group(int m);
PermGroup alternating_group(int m);

// Random access to the elements of a group through its stabilizer chain:
// index digits are transversal positions, most significant level last.
// The enumeration order is stable for a fixed chain, which is what shard
// resume keys on.
class ElementIndexer {
public:
  explicit ElementIndexer(const PermGroup& group);
  unsigned long long size() const { return size_; }
  Permutation element(unsigned long long index) const;

private:
  const StabChain* chain_;
  int degree_;
  unsigned long long size_;
};

// Generators of the even-permutation subgroup of <gens>: the whole group
// when every generator is even, otherwise its index-2 kernel under parity.
std::vector<Permutation> even_subgroup_generators(const std::vector<Permutation>& gens, int degree);

// Exact centralizer of <centralized> inside the alternating group A_m,
// assembled from per-orbit centralizing elements and orbit-swapping
// isomorphisms, then intersected with A_m by parity bookkeeping.
PermGroup centralizer_in_alternating(int m, const std::vector<Permutation>& centralized);

// Searches `ambient` for g with H1^g == H2.  `ambient == nullptr` means the
// full symmetric group.  Screens by order, orbit sizes and the cycle-type
// census before backtracking over generator images; `node_budget` caps the
// search, overflow is a capacity error, never a wrong answer.
std::optional<Permutation> are_conjugate_subgroups(const PermGroup* ambient, const PermGroup& h1,
                                                   const PermGroup& h2,
                                                   long long node_budget = 100000000LL);

}  // namespace saut
