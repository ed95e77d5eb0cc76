#include "saut/control_models.hpp"

#include "saut/common.hpp"

namespace saut {

GF2Matrix GF2Matrix::identity(int n) {
  GF2Matrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

std::uint32_t GF2Matrix::apply(std::uint32_t v) const {
  std::uint32_t out = 0;
  for (int r = 0; r < n_; ++r) out |= static_cast<std::uint32_t>(__builtin_parity(rows_[r] & v)) << r;
  return out;
}

GF2Matrix GF2Matrix::multiply(const GF2Matrix& other) const {
  GF2Matrix out(n_);
  for (int r = 0; r < n_; ++r) {
    std::uint32_t row = 0;
    for (int c = 0; c < n_; ++c) {
      std::uint32_t col = 0;
      for (int k = 0; k < n_; ++k) col |= static_cast<std::uint32_t>(other.get(k, c)) << k;
      row |= static_cast<std::uint32_t>(__builtin_parity(rows_[r] & col)) << c;
    }
    out.rows_[r] = row;
  }
  return out;
}

bool GF2Matrix::invertible() const {
  std::vector<std::uint32_t> rows(rows_);
  int rank = 0;
  for (int c = 0; c < n_; ++c) {
    int pivot = -1;
    for (int r = rank; r < n_; ++r)
      if ((rows[r] >> c) & 1u) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < n_; ++r)
      if (r != rank && ((rows[r] >> c) & 1u)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank == n_;
}

TransvectionImages psl_action(int n) {
  if (n < 3) throw std::invalid_argument("projective action needs rank >= 3");
  if (n > 16) throw capacity_error("projective action degree out of range");
  const int m = (1 << n) - 1;
  TransvectionImages t(n, m);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      GF2Matrix e = GF2Matrix::identity(n);
      e.set(i - 1, j - 1, true);
      std::vector<int> im(m);
      for (std::uint32_t v = 1; v <= static_cast<std::uint32_t>(m); ++v)
        im[v - 1] = static_cast<int>(e.apply(v)) - 1;
      Permutation p = Permutation::from_images(std::move(im));
      t.rho(i, j) = p;
      t.lam(i, j) = std::move(p);
    }
  }
  return t;
}

long long SL2Mat::det() const {
  return checked_add(checked_mul(a, d), -checked_mul(b, c));
}

SL2Mat sl2_mul(const SL2Mat& x, const SL2Mat& y) {
  SL2Mat r;
  r.a = checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c));
  r.b = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d));
  r.c = checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c));
  r.d = checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d));
  return r;
}

int chi(const SL2Mat& m) {
  if (m.det() != 1) throw std::invalid_argument("matrix must have determinant 1");
  const long long a = m.a, b = m.b, c = m.c, d = m.d;
  const long long one_minus_c2 = checked_add(1, -checked_mul(c, c));
  const long long inner = checked_add(
      checked_add(checked_mul(b, d), checked_mul(3, checked_mul(checked_add(c, -1), d))),
      checked_add(c, 3));
  const long long val =
      checked_add(checked_mul(one_minus_c2, inner), checked_mul(c, checked_add(checked_add(a, d), -3)));
  return static_cast<int>(((val % 12) + 12) % 12);
}

int psi_chi(const SL2Mat& m) { return (6 * chi(m)) % 12 == 0 ? 0 : 1; }

}  // namespace saut
