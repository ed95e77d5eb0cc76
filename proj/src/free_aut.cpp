#include "saut/free_aut.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "saut/gersten_relations.hpp"

namespace saut {

namespace {

void push_reduced(std::vector<int>& stack, int letter, std::size_t max_len) {
  if (!stack.empty() && stack.back() == -letter) {
    stack.pop_back();
    return;
  }
  stack.push_back(letter);
  if (stack.size() > max_len) throw capacity_error("word length bound exceeded");
}

// Substitutes `images[k-1]` for a_k throughout w, reducing as it goes.
FreeWord substitute(const std::vector<FreeWord>& images, const FreeWord& w, std::size_t max_len) {
  std::vector<int> out;
  for (int letter : w.letters()) {
    const FreeWord& im = images[std::abs(letter) - 1];
    if (letter > 0) {
      for (int x : im.letters()) push_reduced(out, x, max_len);
    } else {
      for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it)
        push_reduced(out, -*it, max_len);
    }
  }
  return FreeWord::reduce(out, static_cast<int>(images.size()));
}

}  // namespace

FreeWord FreeWord::reduce(const std::vector<int>& letters, int rank) {
  std::vector<int> stack;
  stack.reserve(letters.size());
  for (int letter : letters) {
    if (letter == 0 || std::abs(letter) > rank)
      throw std::invalid_argument("letter index out of range");
    if (!stack.empty() && stack.back() == -letter)
      stack.pop_back();
    else
      stack.push_back(letter);
  }
  return FreeWord(std::move(stack));
}

FreeWord FreeWord::inverse() const {
  std::vector<int> inv(letters_.rbegin(), letters_.rend());
  for (int& x : inv) x = -x;
  return FreeWord(std::move(inv));
}

std::string FreeWord::to_string() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    if (letters_[i] > 0)
      os << 'a' << letters_[i];
    else
      os << 'a' << -letters_[i] << "^-1";
  }
  return os.str();
}

FreeWord concat_reduced(const FreeWord& u, const FreeWord& v) {
  std::vector<int> out(u.letters());
  for (int x : v.letters()) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return FreeWord(std::move(out));
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::compose(const IntMatrix& other) const {
  if (n_ != other.n_) throw std::invalid_argument("matrix size mismatch");
  // "this then other" on column vectors is the ordinary product other*this.
  IntMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const long long o = other.at(i, k);
      if (o == 0) continue;
      for (int j = 0; j < n_; ++j)
        r.at(i, j) = checked_add(r.at(i, j), checked_mul(o, at(k, j)));
    }
  return r;
}

long long IntMatrix::det() const {
  if (n_ == 0) return 1;
  std::vector<long long> a(entries_);
  auto at2 = [&](int r, int c) -> long long& { return a[static_cast<std::size_t>(r) * n_ + c]; };
  long long sign = 1;
  long long prev = 1;
  for (int k = 0; k + 1 < n_; ++k) {
    if (at2(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n_; ++r)
        if (at2(r, k) != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      for (int c = 0; c < n_; ++c) std::swap(at2(k, c), at2(swap_row, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n_; ++r) {
      for (int c = k + 1; c < n_; ++c) {
        long long num = checked_add(checked_mul(at2(r, c), at2(k, k)), -checked_mul(at2(r, k), at2(k, c)));
        at2(r, c) = num / prev;  // Bareiss: division is exact
      }
      at2(r, k) = 0;
    }
    prev = at2(k, k);
  }
  return sign * at2(n_ - 1, n_ - 1);
}

FreeAut FreeAut::identity(int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  FreeAut a;
  a.rank_ = rank;
  for (int k = 1; k <= rank; ++k) {
    a.images_.push_back(FreeWord::generator(k));
    a.inv_images_.push_back(FreeWord::generator(k));
  }
  return a;
}

FreeAut FreeAut::make_generator(GenKind kind, int i, int j, int rank) {
  auto check_index = [rank](int x) {
    if (x < 1 || x > rank) throw std::invalid_argument("generator index out of range");
  };
  check_index(i);
  if (kind == GenKind::sigma || kind == GenKind::rho || kind == GenKind::lambda) {
    check_index(j);
    if (i == j) throw std::invalid_argument("generator indices must differ");
  }
  FreeAut a = identity(rank);
  auto word = [rank](std::vector<int> ls) { return FreeWord::reduce(ls, rank); };
  switch (kind) {
    case GenKind::sigma:
      a.images_[i - 1] = word({j});
      a.images_[j - 1] = word({i});
      a.inv_images_ = a.images_;
      break;
    case GenKind::epsilon:
      a.images_[i - 1] = word({-i});
      a.inv_images_ = a.images_;
      break;
    case GenKind::sigma_last:
      for (int k = 1; k <= rank; ++k)
        a.images_[k - 1] = (k == i) ? word({-i}) : word({k, -i});
      a.inv_images_ = a.images_;  // involution
      break;
    case GenKind::rho:
      a.images_[i - 1] = word({i, j});
      a.inv_images_[i - 1] = word({i, -j});
      break;
    case GenKind::lambda:
      a.images_[i - 1] = word({j, i});
      a.inv_images_[i - 1] = word({-j, i});
      break;
  }
  return a;
}

FreeAut FreeAut::from_label_permutation(const std::vector<int>& labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<char> seen(n + 1, 0);
  for (int v : labels) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of 1..n");
    seen[v] = 1;
  }
  FreeAut a = identity(n);
  for (int k = 1; k <= n; ++k) {
    a.images_[k - 1] = FreeWord::generator(labels[k - 1]);
    a.inv_images_[labels[k - 1] - 1] = FreeWord::generator(k);
  }
  return a;
}

FreeAut FreeAut::inverse() const {
  FreeAut a;
  a.rank_ = rank_;
  a.images_ = inv_images_;
  a.inv_images_ = images_;
  return a;
}

FreeWord FreeAut::apply(const FreeWord& w, std::size_t max_len) const {
  for (int letter : w.letters())
    if (std::abs(letter) > rank_) throw std::invalid_argument("apply: rank mismatch");
  return substitute(images_, w, max_len);
}

bool FreeAut::is_identity() const {
  for (int k = 1; k <= rank_; ++k) {
    const auto& ls = images_[k - 1].letters();
    if (ls.size() != 1 || ls[0] != k) return false;
  }
  return true;
}

bool FreeAut::is_signed_letter_aut() const {
  for (const FreeWord& w : images_)
    if (w.length() != 1) return false;
  return true;
}

std::uint64_t FreeAut::hash() const {
  std::uint64_t h = 0x8f1bbcdcu ^ rank_;
  for (const FreeWord& w : images_) {
    h = hash_combine(h, w.length());
    for (int x : w.letters()) h = hash_combine(h, static_cast<std::uint64_t>(x + (1 << 20)));
  }
  return h;
}

std::string FreeAut::to_string() const {
  std::ostringstream os;
  for (int k = 1; k <= rank_; ++k) {
    if (k > 1) os << "; ";
    os << 'a' << k << " -> " << images_[k - 1].to_string();
  }
  return os.str();
}

FreeAut compose_aut(const FreeAut& f, const FreeAut& g) {
  if (f.rank() != g.rank()) throw std::invalid_argument("compose_aut: rank mismatch");
  FreeAut r;
  r.rank_ = f.rank();
  r.images_.reserve(f.rank());
  r.inv_images_.reserve(f.rank());
  for (int k = 0; k < f.rank(); ++k) {
    r.images_.push_back(substitute(g.images_, f.images_[k], FreeAut::kDefaultWordBound));
    r.inv_images_.push_back(substitute(f.inv_images_, g.inv_images_[k], FreeAut::kDefaultWordBound));
  }
  return r;
}

FreeAut conjugate_aut(const FreeAut& f, const FreeAut& g) {
  return compose_aut(compose_aut(g.inverse(), f), g);
}

FreeAut commutator_aut(const FreeAut& a, const FreeAut& b) {
  // Apply b^-1 first, then a^-1, then b, then a.
  return compose_aut(compose_aut(compose_aut(b.inverse(), a.inverse()), b), a);
}

IntMatrix abelianize(const FreeAut& aut) {
  const int n = aut.rank();
  IntMatrix m(n);
  for (int c = 1; c <= n; ++c)
    for (int letter : aut.image(c).letters()) {
      const int r = std::abs(letter) - 1;
      m.at(r, c - 1) += (letter > 0) ? 1 : -1;
    }
  return m;
}

bool in_saut(const FreeAut& aut) { return abelianize(aut).det() == 1; }

Permutation signed_perm_rep(const FreeAut& aut) {
  const int n = aut.rank();
  std::vector<int> im(2 * n);
  for (int k = 1; k <= n; ++k) {
    const auto& ls = aut.image(k).letters();
    if (ls.size() != 1)
      throw std::invalid_argument("signed_perm_rep: basis image is not a single signed letter");
    const int t = ls[0];
    const int pos = 2 * (std::abs(t) - 1);
    im[2 * (k - 1)] = (t > 0) ? pos : pos + 1;
    im[2 * (k - 1) + 1] = (t > 0) ? pos + 1 : pos;
  }
  return Permutation::from_images(std::move(im));
}

namespace {

std::vector<FreeAut> closure(std::vector<FreeAut> gens) {
  if (gens.empty()) throw std::invalid_argument("closure needs at least one generator");
  const int n = gens.front().rank();
  std::map<std::vector<FreeWord>, int> seen;
  std::deque<FreeAut> queue;
  std::vector<FreeAut> out;
  auto add = [&](const FreeAut& a) {
    if (seen.emplace(a.images(), 1).second) {
      out.push_back(a);
      queue.push_back(a);
    }
  };
  add(FreeAut::identity(n));
  for (const auto& g : gens) add(g);
  while (!queue.empty()) {
    FreeAut x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) add(compose_aut(x, g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<FreeAut> b_n_elements(int n) {
  if (n < 2) throw std::invalid_argument("signed permutation group needs rank >= 2");
  std::vector<FreeAut> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(FreeAut::make_generator(GenKind::epsilon, i, 0, n));
  for (int i = 1; i < n; ++i) gens.push_back(FreeAut::make_generator(GenKind::sigma, i, i + 1, n));
  return closure(std::move(gens));
}

std::vector<FreeAut> d_n_prime_elements(int n) {
  if (n < 3) throw std::invalid_argument("D_n' needs rank >= 3");
  std::vector<FreeAut> gens;
  auto eps = [n](int i) { return FreeAut::make_generator(GenKind::epsilon, i, 0, n); };
  gens.push_back(compose_aut(eps(1), eps(2)));
  gens.push_back(compose_aut(eps(2), eps(3)));
  for (int k = 1; k + 2 <= n; ++k) {
    std::vector<int> labels(n);
    for (int t = 1; t <= n; ++t) labels[t - 1] = t;
    labels[k - 1] = k + 1;
    labels[k] = k + 2;
    labels[k + 1] = k;
    gens.push_back(FreeAut::from_label_permutation(labels));
  }
  return closure(std::move(gens));
}

std::vector<FreeAut> brute_force_centralizer(const std::vector<FreeAut>& elements, const FreeAut& x) {
  std::vector<FreeAut> out;
  for (const FreeAut& e : elements)
    if (compose_aut(e, x) == compose_aut(x, e)) out.push_back(e);
  return out;
}

std::vector<FreeAut> stabilizer_of_first_two(const std::vector<FreeAut>& d_elements) {
  std::vector<FreeAut> out;
  for (const FreeAut& e : d_elements) {
    const auto& w1 = e.image(1).letters();
    const auto& w2 = e.image(2).letters();
    if (w1.size() == 1 && w1[0] == 1 && w2.size() == 1 && w2[0] == 2) out.push_back(e);
  }
  return out;
}

namespace {

struct AutRelationProvider {
  using Elem = FreeAut;
  int n;
  std::map<std::tuple<int, int, int, int>, FreeAut> cache;

  const FreeAut& gen(int kind, int i, int j, int sign) {
    auto key = std::make_tuple(kind, i, j, sign);
    auto it = cache.find(key);
    if (it == cache.end()) {
      FreeAut a = FreeAut::make_generator(kind == 0 ? GenKind::rho : GenKind::lambda, i, j, n);
      if (sign < 0) a = a.inverse();
      it = cache.emplace(key, std::move(a)).first;
    }
    return it->second;
  }
  const FreeAut& rho(int i, int j, int s) { return gen(0, i, j, s); }
  const FreeAut& lam(int i, int j, int s) { return gen(1, i, j, s); }
  FreeAut id() const { return FreeAut::identity(n); }
  FreeAut mul(const FreeAut& a, const FreeAut& b) const { return compose_aut(a, b); }
  bool eq(const FreeAut& a, const FreeAut& b) const { return a == b; }
};

}  // namespace

GerstenReport check_gersten(int n) {
  if (n < 3) throw std::invalid_argument("relation check needs rank >= 3");
  AutRelationProvider pr{n, {}};
  GerstenReport report;
  walk_gersten_relations<AutRelationProvider>(n, pr, [&](const char*, const std::string& label, bool ok) {
    ++report.instances;
    if (!ok) report.failures.push_back(label);
    return true;
  });
  return report;
}

}  // namespace saut
