#include "saut/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "saut/common.hpp"

namespace saut {

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed) {
  static std::uint32_t table[256];
  static bool init = false;
  if (!init) {
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      table[i] = c;
    }
    init = true;
  }
  std::uint32_t c = seed ^ 0xffffffffu;
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) c = table[(c ^ p[i]) & 0xffu] ^ (c >> 8);
  return c ^ 0xffffffffu;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw capacity_error("integer overflow in multiplication");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw capacity_error("integer overflow in addition");
  return r;
}

Permutation Permutation::identity(int degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int m = static_cast<int>(images.size());
  std::vector<char> seen(m, 0);
  for (int v : images) {
    if (v < 0 || v >= m || seen[v]) throw std::invalid_argument("image array is not a bijection");
    seen[v] = 1;
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

std::uint64_t Permutation::hash() const {
  std::uint64_t h = 0x9d3f55a1u ^ images_.size();
  for (int v : images_) h = hash_combine(h, static_cast<std::uint64_t>(v));
  return h;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < degree(); ++i) {
    if (i) os << ',';
    os << images_[i];
  }
  os << ']';
  return os.str();
}

Permutation Permutation::parse(const std::string& text) {
  std::vector<int> im;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i >= text.size() || text[i] != '[') throw std::invalid_argument("permutation must start with '['");
  ++i;
  skip_ws();
  if (i < text.size() && text[i] == ']') return from_images({});
  while (true) {
    skip_ws();
    std::size_t j = i;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])))) ++j;
    if (j == i) throw std::invalid_argument("expected point number in permutation");
    im.push_back(std::stoi(text.substr(i, j - i)));
    i = j;
    skip_ws();
    if (i >= text.size()) throw std::invalid_argument("unterminated permutation");
    if (text[i] == ']') break;
    if (text[i] != ',') throw std::invalid_argument("expected ',' in permutation");
    ++i;
  }
  return from_images(std::move(im));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> im(p.degree());
  for (int x = 0; x < p.degree(); ++x) im[x] = q[p[x]];
  return Permutation::from_images(std::move(im));
}

Permutation conjugate(const Permutation& p, const Permutation& g) {
  if (p.degree() != g.degree()) throw std::invalid_argument("conjugate: degree mismatch");
  // g^-1 * p * g without materializing the inverse: image of x^g is (x^p)^g.
  std::vector<int> im(p.degree());
  for (int x = 0; x < p.degree(); ++x) im[g[x]] = g[p[x]];
  return Permutation::from_images(std::move(im));
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("commutator: degree mismatch");
  // As a function this is a o b o a^-1 o b^-1; pointwise, x travels through
  // b^-1, a^-1, b, a in that order.
  const Permutation ai = a.inverse();
  const Permutation bi = b.inverse();
  std::vector<int> im(a.degree());
  for (int x = 0; x < a.degree(); ++x) im[x] = a[b[ai[bi[x]]]];
  return Permutation::from_images(std::move(im));
}

Parity parity(const Permutation& p) {
  const int m = p.degree();
  std::vector<char> seen(m, 0);
  int transpositions = 0;
  for (int i = 0; i < m; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return (transpositions % 2 == 0) ? Parity::even : Parity::odd;
}

std::vector<int> cycle_type(const Permutation& p) {
  const int m = p.degree();
  std::vector<char> seen(m, 0);
  std::vector<int> lengths;
  for (int i = 0; i < m; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

int element_order(const Permutation& p) {
  long long ord = 1;
  for (int len : cycle_type(p)) ord = std::lcm(ord, static_cast<long long>(len));
  if (ord > (1LL << 31)) throw capacity_error("element order out of range");
  return static_cast<int>(ord);
}

}  // namespace saut
