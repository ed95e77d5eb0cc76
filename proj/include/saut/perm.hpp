#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saut/common.hpp"

namespace saut {

// A permutation of {0..m-1}, stored as its image array under the right
// action: x^p = images[x].  Immutable after construction.
//
// Composition is left-to-right throughout the project: x^(p*q) = (x^p)^q.
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(int degree);

  // Validates that `images` is a bijection of {0..degree-1}.
  static Permutation from_images(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  bool operator==(const Permutation& other) const { return images_ == other.images_; }
  bool operator!=(const Permutation& other) const { return images_ != other.images_; }
  bool operator<(const Permutation& other) const { return images_ < other.images_; }

  std::uint64_t hash() const;

  // External serialization: 0-based image array, e.g. "[1,0,2]".
  std::string to_string() const;
  static Permutation parse(const std::string& text);

private:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}
  std::vector<int> images_;
};

// x^(compose(p,q)) = (x^p)^q.
Permutation compose(const Permutation& p, const Permutation& q);

// p^g = g^-1 * p * g under the composition convention above.
// Satisfies (x^g)^(p^g) = (x^p)^g.
Permutation conjugate(const Permutation& p, const Permutation& g);

// The commutator [a,b] = a b a^-1 b^-1 read as a composition of functions
// applied right to left, i.e. the element obtained by applying b^-1 first
// and a last.  This is the convention all relation checks rely on.
Permutation commutator(const Permutation& a, const Permutation& b);

enum class Parity { even, odd };

Parity parity(const Permutation& p);

inline Parity parity_product(Parity a, Parity b) {
  return a == b ? Parity::even : Parity::odd;
}

// Multiset of cycle lengths (fixed points included), sorted descending.
// Invariant under conjugation.
std::vector<int> cycle_type(const Permutation& p);

int element_order(const Permutation& p);

struct PermHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace saut
