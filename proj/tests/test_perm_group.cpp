#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "saut/free_aut.hpp"
#include "saut/perm_group.hpp"
#include "test_util.hpp"

using namespace saut;

namespace {

// Closure enumeration oracle, independent of the stabilizer chain.
std::set<Permutation> closure_oracle(int degree, const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation::identity(degree)};
  std::vector<Permutation> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    Permutation x = queue.back();
    queue.pop_back();
    for (const Permutation& g : gens) {
      Permutation y = compose(x, g);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return seen;
}

Permutation random_even(int m, std::mt19937_64& rng) {
  std::vector<int> im(m);
  std::iota(im.begin(), im.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    std::uniform_int_distribution<int> d(0, i);
    std::swap(im[i], im[d(rng)]);
  }
  Permutation p = Permutation::from_images(im);
  if (parity(p) == Parity::odd) {
    std::swap(im[0], im[1]);
    p = Permutation::from_images(im);
  }
  return p;
}

}  // namespace

TEST_CASE("chain order matches closure enumeration") {
  PermGroup a5(5, {cyc(5, {{0, 1, 2}}), cyc(5, {{0, 1, 2, 3, 4}})});
  CHECK(a5.order() == 60);
  CHECK(closure_oracle(5, a5.generators()).size() == 60);

  PermGroup trivial(4, {});
  CHECK(trivial.order() == 1);

  PermGroup s6 = symmetric_group(6);
  CHECK(s6.order() == 720);
  CHECK(closure_oracle(6, s6.generators()).size() == 720);
}

TEST_CASE("order of the alternating group on 17 points") {
  PermGroup a17 = alternating_group(17);
  unsigned long long expected = 1;
  for (int k = 2; k <= 17; ++k) expected *= k;
  CHECK(a17.order() == expected / 2);
}

TEST_CASE("membership agrees with element enumeration") {
  PermGroup g(6, {cyc(6, {{0, 1, 2}}), cyc(6, {{3, 4}, {0, 1}})});
  const auto elems = g.elements(100000);
  CHECK(elems.size() == g.order());
  const std::set<Permutation> eset(elems.begin(), elems.end());
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> im(6);
    std::iota(im.begin(), im.end(), 0);
    for (int i = 5; i > 0; --i) {
      std::uniform_int_distribution<int> d(0, i);
      std::swap(im[i], im[d(rng)]);
    }
    const Permutation p = Permutation::from_images(im);
    CHECK(g.contains(p) == (eset.count(p) > 0));
  }
  // sorted lexicographically
  CHECK(std::is_sorted(elems.begin(), elems.end()));
}

TEST_CASE("element enumeration basics") {
  PermGroup trivial(3, {});
  CHECK(trivial.elements(10) == std::vector<Permutation>{Permutation::identity(3)});

  PermGroup c3(3, {cyc(3, {{0, 1, 2}})});
  CHECK(c3.elements(10).size() == 3);
  CHECK_THROWS_AS(c3.elements(2), capacity_error);

  std::vector<Permutation> dgens;
  for (const FreeAut& f : {compose_aut(FreeAut::make_generator(GenKind::epsilon, 1, 0, 5),
                                       FreeAut::make_generator(GenKind::epsilon, 2, 0, 5))})
    dgens.push_back(signed_perm_rep(f));
  // full D_5' via its natural generators
  std::vector<int> labels{2, 3, 1, 4, 5};
  dgens.push_back(signed_perm_rep(FreeAut::from_label_permutation(labels)));
  labels = {1, 2, 4, 5, 3};
  dgens.push_back(signed_perm_rep(FreeAut::from_label_permutation(labels)));
  PermGroup d5(10, dgens);
  CHECK(d5.order() == 960);
  CHECK(d5.elements(2000).size() == 960);
}

TEST_CASE("element indexer is a bijection") {
  PermGroup s5 = symmetric_group(5);
  ElementIndexer idx(s5);
  CHECK(idx.size() == 120);
  std::set<Permutation> all;
  for (unsigned long long i = 0; i < idx.size(); ++i) all.insert(idx.element(i));
  CHECK(all.size() == 120);
  CHECK_THROWS_AS(idx.element(120), std::invalid_argument);
}

TEST_CASE("even subgroup generators") {
  PermGroup s7 = symmetric_group(7);
  PermGroup a(7, even_subgroup_generators(s7.generators(), 7));
  CHECK(a.order() == 2520);
  for (const Permutation& g : a.generators()) CHECK(parity(g) == Parity::even);

  // already-even input passes through
  PermGroup a5 = alternating_group(5);
  CHECK(PermGroup(5, even_subgroup_generators(a5.generators(), 5)).order() == 60);
}

TEST_CASE("centralizer in the alternating group, brute force cross-check") {
  // trivial centralized set: the whole alternating group
  CHECK(centralizer_in_alternating(5, {}).order() == 60);
  CHECK(centralizer_in_alternating(1, {}).order() == 1);

  auto brute = [](int m, const std::vector<Permutation>& hs) {
    std::vector<Permutation> kept;
    PermGroup am = alternating_group(m);
    for (const Permutation& p : am.elements(100000)) {
      bool commutes = true;
      for (const Permutation& h : hs)
        if (compose(p, h) != compose(h, p)) {
          commutes = false;
          break;
        }
      if (commutes) kept.push_back(p);
    }
    return kept;
  };

  struct Case {
    int m;
    std::vector<Permutation> hs;
  };
  std::vector<Case> cases;
  cases.push_back({4, {cyc(4, {{0, 1}, {2, 3}})}});
  cases.push_back({5, {cyc(5, {{0, 1, 2}})}});
  cases.push_back({6, {cyc(6, {{0, 1, 2}}), cyc(6, {{3, 4, 5}})}});
  cases.push_back({7, {cyc(7, {{0, 1}, {2, 3}}), cyc(7, {{4, 5, 6}})}});
  cases.push_back({8, {cyc(8, {{0, 1, 2, 3}, {4, 5}})}});

  for (const auto& c : cases) {
    PermGroup cent = centralizer_in_alternating(c.m, c.hs);
    const auto expected = brute(c.m, c.hs);
    CHECK(cent.order() == expected.size());
    for (const Permutation& p : expected) CHECK(cent.contains(p));
  }

  // the documented order-4 example
  PermGroup cent4 = centralizer_in_alternating(4, {cyc(4, {{0, 1}, {2, 3}})});
  CHECK(cent4.order() == 4);
}

TEST_CASE("centralizer at degree 17 with a faithful small group") {
  // The order-12 subgroup fixing four points and acting on {4..9}, padded
  // to 17 points.
  std::vector<Permutation> hs = {cyc(17, {{4, 6}, {5, 7}}), cyc(17, {{6, 8}, {7, 9}}),
                                 cyc(17, {{4, 6, 8}, {5, 7, 9}})};
  PermGroup cent = centralizer_in_alternating(17, hs);
  for (const Permutation& g : cent.generators()) {
    CHECK(parity(g) == Parity::even);
    for (const Permutation& h : hs) CHECK(compose(g, h) == compose(h, g));
  }
  // randomized outer check: no commuting even element outside the result
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100000; ++trial) {
    const Permutation p = random_even(17, rng);
    bool commutes = true;
    for (const Permutation& h : hs)
      if (compose(p, h) != compose(h, p)) {
        commutes = false;
        break;
      }
    if (commutes) CHECK(cent.contains(p));
  }
}

TEST_CASE("subgroup conjugacy") {
  // identical subgroups: identity conjugator
  PermGroup h(5, {cyc(5, {{0, 1, 2}})});
  auto r = are_conjugate_subgroups(nullptr, h, h);
  REQUIRE(r.has_value());
  CHECK(r->is_identity());

  // two point stabilizers of A_5 are conjugate inside A_5
  PermGroup a5 = alternating_group(5);
  PermGroup stab0(5, {cyc(5, {{1, 2, 3}}), cyc(5, {{2, 3, 4}})});
  PermGroup stab4(5, {cyc(5, {{0, 1, 2}}), cyc(5, {{1, 2, 3}})});
  CHECK(stab0.order() == 12);
  CHECK(stab4.order() == 12);
  r = are_conjugate_subgroups(&a5, stab0, stab4);
  REQUIRE(r.has_value());
  CHECK(a5.contains(*r));
  for (const Permutation& g : stab0.generators()) CHECK(stab4.contains(conjugate(g, *r)));

  // different orders: screened out immediately
  PermGroup v(4, {cyc(4, {{0, 1}, {2, 3}})});
  PermGroup c3(4, {cyc(4, {{0, 1, 2}})});
  CHECK(!are_conjugate_subgroups(nullptr, v, c3).has_value());

  // same order, different cycle census
  PermGroup t(4, {cyc(4, {{0, 1}})});
  CHECK(!are_conjugate_subgroups(nullptr, v, t).has_value());

  // klein four vs cyclic four
  PermGroup v4(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  PermGroup c4(4, {cyc(4, {{0, 1, 2, 3}})});
  CHECK(!are_conjugate_subgroups(nullptr, v4, c4).has_value());

  // conjugate three-cycles with an explicit conjugator
  PermGroup x(4, {cyc(4, {{0, 1, 2}})});
  PermGroup y(4, {cyc(4, {{1, 2, 3}})});
  r = are_conjugate_subgroups(nullptr, x, y);
  REQUIRE(r.has_value());
  for (const Permutation& g : x.generators()) CHECK(y.contains(conjugate(g, *r)));

  // symmetry
  CHECK(are_conjugate_subgroups(nullptr, y, x).has_value());

  // node budget converts to a capacity error
  CHECK_THROWS_AS(are_conjugate_subgroups(nullptr, x, y, 2), capacity_error);
}
