#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "saut/common.hpp"
#include "saut/perm.hpp"

namespace saut {

// A freely reduced word in the free group F_n.  Letters are signed indices:
// +k stands for a_k and -k for a_k^-1, with 1 <= k <= rank.
class FreeWord {
public:
  FreeWord() = default;

  // Free reduction of a raw letter sequence; validates letter range.
  static FreeWord reduce(const std::vector<int>& letters, int rank);

  static FreeWord generator(int k) { return FreeWord({k}); }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  FreeWord inverse() const;

  bool operator==(const FreeWord& o) const { return letters_ == o.letters_; }
  bool operator!=(const FreeWord& o) const { return letters_ != o.letters_; }
  bool operator<(const FreeWord& o) const { return letters_ < o.letters_; }

  // Fixture form, e.g. "a1 a2^-1"; the empty word prints as "1".
  std::string to_string() const;

private:
  explicit FreeWord(std::vector<int> letters) : letters_(std::move(letters)) {}
  friend class FreeAut;
  friend FreeWord concat_reduced(const FreeWord&, const FreeWord&);
  std::vector<int> letters_;
};

FreeWord concat_reduced(const FreeWord& u, const FreeWord& v);

// Integer matrix with the images of the basis written in columns: entry
// (r,c) is the exponent sum of a_r in the image of a_c.
class IntMatrix {
public:
  IntMatrix() = default;
  static IntMatrix identity(int n);
  explicit IntMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  long long& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * n_ + c]; }
  long long at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * n_ + c]; }

  // Matrix of "this then other" under the project-wide composition order.
  IntMatrix compose(const IntMatrix& other) const;

  // Exact determinant by fraction-free elimination; overflow is an error.
  long long det() const;

  bool operator==(const IntMatrix& o) const { return n_ == o.n_ && entries_ == o.entries_; }

private:
  int n_ = 0;
  std::vector<long long> entries_;
};

enum class GenKind { sigma, epsilon, sigma_last, rho, lambda };

// An automorphism of F_n given by the images of the basis.  Every value
// constructed through this interface also carries the basis images of its
// inverse, composed alongside, so inversion is O(1).
class FreeAut {
public:
  FreeAut() = default;

  static FreeAut identity(int rank);

  // The generators of section-wise families:
  //   sigma(i,j):    a_i <-> a_j
  //   epsilon(i):    a_i -> a_i^-1
  //   sigma_last(i): a_i -> a_i^-1, a_k -> a_k a_i^-1 otherwise
  //   rho(i,j):      a_i -> a_i a_j   (right transvection)
  //   lambda(i,j):   a_i -> a_j a_i   (left transvection)
  // Indices are 1-based; j is ignored for epsilon and sigma_last.
  static FreeAut make_generator(GenKind kind, int i, int j, int rank);

  // Automorphism a_k -> a_{labels[k-1]} for a permutation of {1..n}.
  static FreeAut from_label_permutation(const std::vector<int>& labels);

  int rank() const { return rank_; }
  const FreeWord& image(int k) const { return images_[k - 1]; }
  const std::vector<FreeWord>& images() const { return images_; }

  FreeAut inverse() const;

  // Image of w, freely reduced.  Guards against accidental blowup: an
  // intermediate word longer than `max_len` raises a capacity error.
  FreeWord apply(const FreeWord& w, std::size_t max_len = kDefaultWordBound) const;

  bool is_identity() const;

  // True when every basis image is a single signed letter.
  bool is_signed_letter_aut() const;

  bool operator==(const FreeAut& o) const { return rank_ == o.rank_ && images_ == o.images_; }
  bool operator!=(const FreeAut& o) const { return !(*this == o); }
  bool operator<(const FreeAut& o) const { return images_ < o.images_; }

  std::uint64_t hash() const;
  std::string to_string() const;  // "a1 -> a1 a2; a2 -> a2; ..."

  static constexpr std::size_t kDefaultWordBound = 1u << 20;

private:
  int rank_ = 0;
  std::vector<FreeWord> images_;
  std::vector<FreeWord> inv_images_;
  friend FreeAut compose_aut(const FreeAut&, const FreeAut&);
};

// (f then g) under the global left-to-right convention: the image of w is
// g(f(w)).
FreeAut compose_aut(const FreeAut& f, const FreeAut& g);

// f^g = g^-1 * f * g, matching conjugate() on permutations.
FreeAut conjugate_aut(const FreeAut& f, const FreeAut& g);

// [a,b] in the same function-application order as commutator() on
// permutations.
FreeAut commutator_aut(const FreeAut& a, const FreeAut& b);

// Signed letter counts of the basis images; det is +-1 for automorphisms.
IntMatrix abelianize(const FreeAut& aut);

// Membership in the special automorphism group: det of the abelianization
// is +1.
bool in_saut(const FreeAut& aut);

// Action of a signed-letter automorphism on the 2n letters, point 2(k-1)
// standing for a_k and 2(k-1)+1 for a_k^-1.  Faithful on the signed
// permutation subgroup.
Permutation signed_perm_rep(const FreeAut& aut);

// All elements of the signed permutation group B_n = <eps_i, sigma_ij>,
// materialized at the automorphism level and deterministically sorted.
std::vector<FreeAut> b_n_elements(int n);

// All elements of D_n' = <eps_i eps_j, 3-cycles>, the index-2 "even"
// signed permutation group inside the special automorphism group.
std::vector<FreeAut> d_n_prime_elements(int n);

// The sublist of `elements` commuting with x (equality of basis images
// under both composition orders).
std::vector<FreeAut> brute_force_centralizer(const std::vector<FreeAut>& elements, const FreeAut& x);

// Elements of D_n' fixing a_1 and a_2.
std::vector<FreeAut> stabilizer_of_first_two(const std::vector<FreeAut>& d_elements);

struct GerstenReport {
  long long instances = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Evaluates every instance of the four transvection relation families over
// all valid index tuples and independent sign choices, at the automorphism
// level.  Any failure would be an implementation bug.
GerstenReport check_gersten(int n);

}  // namespace saut
