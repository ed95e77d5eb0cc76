#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "saut/hom_enum.hpp"
#include "test_util.hpp"

using namespace saut;

namespace {

SmallGroup c2() { return SmallGroup::from_generators("C2", 2, {cyc(2, {{0, 1}})}); }
SmallGroup s3() { return SmallGroup::from_generators("S3", 3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}); }

// Class sets are compared through canonical conjugates of the image tuples.
std::set<std::vector<Permutation>> canonical_set(const std::vector<HomClass>& hs, int m) {
  std::set<std::vector<Permutation>> out;
  for (const HomClass& h : hs) out.insert(canonical_hom_tuple(h.gen_images, m));
  return out;
}

}  // namespace

TEST_CASE("classes of the order-two group at degree three") {
  SmallGroup g = c2();
  const auto classes = subgroup_classes(g);
  const auto homs = enumerate_hom_classes(g, classes, 3);
  REQUIRE(homs.size() == 2);
  // trivial class first
  CHECK(homs[0].constituents.empty());
  CHECK(homs[0].alternating);
  CHECK(!homs[0].injective);
  // the 2-cycle with a fixed point is odd
  CHECK(homs[1].constituents.size() == 1);
  CHECK(!homs[1].alternating);
  CHECK(homs[1].injective);
}

TEST_CASE("degree one admits only the trivial class") {
  for (SmallGroup g : {c2(), s3(), SmallGroup::alternating(4)}) {
    const auto homs = enumerate_hom_classes(g, subgroup_classes(g), 1);
    REQUIRE(homs.size() == 1);
    CHECK(homs[0].constituents.empty());
    CHECK(homs[0].gen_images.front().degree() == 1);
  }
}

TEST_CASE("the simple group on six letters has no small actions") {
  SmallGroup a6 = SmallGroup::alternating(6);
  const auto homs = enumerate_hom_classes(a6, subgroup_classes(a6), 5);
  REQUIRE(homs.size() == 1);
  CHECK(homs[0].constituents.empty());
}

TEST_CASE("the trivial source admits exactly one class") {
  SmallGroup one = SmallGroup::from_generators("1", 1, {});
  CHECK(one.order() == 1);
  CHECK(brute_force_homs(one, 4).size() == 1);
  CHECK(enumerate_hom_classes(one, subgroup_classes(one), 4).size() == 1);
}

TEST_CASE("brute force classes of the order-two group at degree four") {
  const auto homs = brute_force_homs(c2(), 4);
  // trivial, one 2-cycle (odd), double 2-cycle (even)
  REQUIRE(homs.size() == 3);
  int alternating = 0, odd = 0;
  for (const auto& h : homs) (h.alternating ? alternating : odd)++;
  CHECK(alternating == 2);
  CHECK(odd == 1);
}

TEST_CASE("enumeration matches the brute force oracle") {
  struct Case {
    SmallGroup g;
    int m;
  };
  std::vector<Case> cases;
  cases.push_back({c2(), 4});
  cases.push_back({s3(), 5});
  cases.push_back({SmallGroup::alternating(4), 6});
  for (const auto& c : cases) {
    const auto fast = enumerate_hom_classes(c.g, subgroup_classes(c.g), c.m);
    const auto brute = brute_force_homs(c.g, c.m);
    CHECK(fast.size() == brute.size());
    CHECK(canonical_set(fast, c.m) == canonical_set(brute, c.m));
  }
}

TEST_CASE("every enumerated class satisfies the source relations") {
  SmallGroup g = s3();
  for (const HomClass& h : enumerate_hom_classes(g, subgroup_classes(g), 5)) {
    const auto img = g.evaluate_all(h.gen_images);
    for (int e = 0; e < static_cast<int>(g.order()); ++e)
      for (std::size_t s = 0; s < g.generators().size(); ++s)
        CHECK(img[g.mult(e, g.generator_index(static_cast<int>(s)))] ==
              compose(img[e], h.gen_images[s]));
    // flags recomputed independently
    bool even = true;
    for (const Permutation& p : h.gen_images)
      if (parity(p) == Parity::odd) even = false;
    CHECK(h.alternating == even);
    CHECK(h.injective == is_injective(h, g));
  }
}

TEST_CASE("restriction images are positional") {
  SmallGroup g = s3();
  const auto homs = enumerate_hom_classes(g, subgroup_classes(g), 3);
  for (const HomClass& h : homs) {
    const auto r = restriction_images(h, {1});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == h.gen_images[1]);
  }
}

TEST_CASE("compatibility filter") {
  // Source pair sharing the marked generator: D_3' and the alternating
  // group on four letters, both restricted over the common 3-cycle.
  SmallGroup d3 = SmallGroup::d_n_prime(3);
  SmallGroup a4 = SmallGroup::alternating(4);
  const int m = 6;
  auto alphas = enumerate_hom_classes(d3, subgroup_classes(d3), m);
  auto betas = enumerate_hom_classes(a4, subgroup_classes(a4), m);
  std::erase_if(alphas, [](const HomClass& h) { return !h.alternating; });
  std::erase_if(betas, [](const HomClass& h) { return !h.alternating; });

  CompatibilityStats stats;
  const auto kept = compatibility_filter(alphas, {2}, betas, {0}, m, 100000000, &stats);

  // filters only shrink, and the trivial class always survives (the
  // trivial beta matches it)
  CHECK(kept.size() <= alphas.size());
  REQUIRE(!kept.empty());
  CHECK(kept[0].constituents.empty());
  CHECK(stats.kept == static_cast<long long>(kept.size()));
  CHECK(stats.kept + stats.removed == static_cast<long long>(alphas.size()));

  // every kept alpha has a matching beta restriction, every removed one
  // does not
  std::set<std::vector<Permutation>> kept_keys;
  for (const auto& h : kept) kept_keys.insert(h.gen_images);
  for (const auto& a : alphas) {
    PermGroup x(m, restriction_images(a, {2}));
    bool matched = false;
    for (const auto& b : betas) {
      PermGroup y(m, restriction_images(b, {0}));
      if (are_conjugate_subgroups(nullptr, x, y).has_value()) {
        matched = true;
        break;
      }
    }
    CHECK(matched == (kept_keys.count(a.gen_images) > 0));
  }
}
