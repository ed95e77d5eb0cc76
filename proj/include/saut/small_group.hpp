#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "saut/free_aut.hpp"
#include "saut/perm.hpp"
#include "saut/perm_group.hpp"

namespace saut {

// A fully materialized finite group: faithful permutation representation,
// sorted element list, multiplication tables and a fixed, ordered
// generating set.  Element 0 is always the identity (it is lexicographically
// least).  The cap keeps accidental big groups out.
class SmallGroup {
public:
  static constexpr std::size_t kMaxOrder = 10000;

  static SmallGroup from_generators(std::string name, int degree, std::vector<Permutation> gens,
                                    std::size_t cap = kMaxOrder);

  // D_n' = <eps_1 eps_2, eps_2 eps_3, consecutive 3-cycles>, acting on the
  // 2n signed points.  The generator order is fixed: the two sign pairs
  // first, then the n-2 cycles generating the label alternating group.
  static SmallGroup d_n_prime(int n);

  // Alternating group on {0..k-1} with the consecutive 3-cycles
  // (0 1 2), (1 2 3), ... as its fixed generating set.
  static SmallGroup alternating(int k);

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<Permutation>& generators() const { return gens_; }
  const std::vector<Permutation>& elements() const { return elems_; }
  const Permutation& element(int i) const { return elems_[i]; }

  int index_of(const Permutation& p) const;
  int mult(int a, int b) const { return mult_[static_cast<std::size_t>(a) * elems_.size() + b]; }
  int inv(int a) const { return inv_[a]; }
  int conjugate_elem(int x, int g) const { return mult(mult(inv(g), x), g); }
  int generator_index(int gi) const { return gen_idx_[gi]; }
  int element_order_of(int a) const { return elem_order_[a]; }

  const std::vector<int>& conjugacy_class_reps() const { return class_reps_; }
  int class_of(int e) const { return class_of_[e]; }

  // Image of element e under the homomorphism with the given generator
  // images (aligned with generators()), through the BFS factorization.
  Permutation evaluate(int e, const std::vector<Permutation>& gen_images) const;

  // Images of all elements at once; cheaper than repeated evaluate().
  std::vector<Permutation> evaluate_all(const std::vector<Permutation>& gen_images) const;

private:
  std::string name_;
  int degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Permutation> elems_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
  std::vector<int> gen_idx_;
  std::vector<int> mult_;
  std::vector<int> inv_;
  std::vector<std::pair<int, int>> bfs_;  // (parent, generator); identity has (-1,-1)
  std::vector<int> elem_order_;
  std::vector<int> class_of_;
  std::vector<int> class_reps_;
};

// One conjugacy class of subgroups.  Element indices refer to the parent
// SmallGroup's sorted element list; `rep` is sorted and closed under the
// group operation.
struct SubgroupClass {
  std::vector<int> rep;
  std::vector<int> canonical;  // lexicographically least conjugate
  long long order = 0;
  long long index = 0;
  long long class_size = 0;
  long long normalizer_order = 0;  // class_size * normalizer_order == |G|
};

// Exactly one representative per conjugacy class of subgroups, ordered by
// (order, canonical key).  Cyclic extension over normalizing prime-order
// coset representatives, seeded with the perfect subgroups; complete for
// the group sizes in scope.
std::vector<SubgroupClass> subgroup_classes(const SmallGroup& g);

// Independent oracle: closes the set of cyclic subgroups under pairwise
// joins.  Exponential-ish but exact; intended for small orders.
struct BruteForceSubgroups {
  long long total = 0;
  std::vector<SubgroupClass> classes;
};
BruteForceSubgroups brute_force_subgroups(const SmallGroup& g, std::size_t max_subgroups = 200000);

// Right-coset action of g on the cosets of `subgroup` (sorted element
// indices): one permutation of {0..index-1} per fixed generator.  Coset 0
// is the subgroup itself; the point order is generator-BFS order.
std::vector<Permutation> coset_action(const SmallGroup& g, const std::vector<int>& subgroup);

// Kernel of the coset action, as sorted element indices (the core).
std::vector<int> coset_action_core(const SmallGroup& g, const std::vector<int>& subgroup);

}  // namespace saut
