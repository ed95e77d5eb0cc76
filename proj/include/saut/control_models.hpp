#pragma once

#include <cstdint>
#include <vector>

#include "saut/gersten_search.hpp"

namespace saut {

// An n x n matrix over GF(2), rows as bitmasks.
class GF2Matrix {
public:
  explicit GF2Matrix(int n) : n_(n), rows_(n, 0) {}
  static GF2Matrix identity(int n);

  int size() const { return n_; }
  bool get(int r, int c) const { return (rows_[r] >> c) & 1u; }
  void set(int r, int c, bool v) {
    if (v)
      rows_[r] |= (1u << c);
    else
      rows_[r] &= ~(1u << c);
  }

  // Column-vector action: bit i of the result is row i dot v.
  std::uint32_t apply(std::uint32_t v) const;

  GF2Matrix multiply(const GF2Matrix& other) const;  // this * other
  bool invertible() const;

private:
  int n_;
  std::vector<std::uint32_t> rows_;
};

// The action of the elementary transvection matrices on the nonzero vectors
// of GF(2)^n, vectors ordered by their binary value 1..2^n-1 (coordinate 1
// is the least significant bit).  Right and left transvections get the same
// image since they agree after abelianizing mod 2.  Degree 2^n - 1.
TransvectionImages psl_action(int n);

// 2x2 integer matrix of determinant 1.
struct SL2Mat {
  long long a = 1, b = 0, c = 0, d = 1;
  long long det() const;
};

SL2Mat sl2_mul(const SL2Mat& x, const SL2Mat& y);

inline SL2Mat sl2_s() { return SL2Mat{0, -1, 1, 0}; }
inline SL2Mat sl2_t() { return SL2Mat{1, 1, 0, 1}; }

// The twelfth-root character exponent: the integer k mod 12 with image
// exp(2*pi*i*k/12), computed by the closed formula
// (1-c^2)(bd+3(c-1)d+c+3)+c(a+d-3).
int chi(const SL2Mat& m);

// Composition with z -> z^6, collapsed to {0,1}; a surjection onto Z/2Z.
int psi_chi(const SL2Mat& m);

}  // namespace saut
