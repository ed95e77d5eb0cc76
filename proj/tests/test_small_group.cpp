#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "saut/perm_group.hpp"
#include "saut/small_group.hpp"
#include "test_util.hpp"

using namespace saut;

namespace {

SmallGroup s3() { return SmallGroup::from_generators("S3", 3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}); }
SmallGroup a4() { return SmallGroup::from_generators("A4", 4, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})}); }

std::vector<long long> class_orders(const std::vector<SubgroupClass>& cs) {
  std::vector<long long> out;
  for (const auto& c : cs) out.push_back(c.order);
  return out;
}

}  // namespace

TEST_CASE("small group tables") {
  SmallGroup g = s3();
  CHECK(g.order() == 6);
  CHECK(g.element(0).is_identity());
  for (int a = 0; a < 6; ++a) {
    CHECK(g.mult(a, g.inv(a)) == 0);
    CHECK(g.element(g.inv(a)) == g.element(a).inverse());
    for (int b = 0; b < 6; ++b)
      CHECK(g.element(g.mult(a, b)) == compose(g.element(a), g.element(b)));
  }
  // evaluate() factors elements through the fixed generators
  for (int e = 0; e < 6; ++e) CHECK(g.evaluate(e, g.generators()) == g.element(e));
  const auto all = g.evaluate_all(g.generators());
  for (int e = 0; e < 6; ++e) CHECK(all[e] == g.element(e));
}

TEST_CASE("named groups") {
  CHECK(SmallGroup::d_n_prime(3).order() == 12);
  CHECK(SmallGroup::d_n_prime(4).order() == 96);
  CHECK(SmallGroup::alternating(4).order() == 12);
  CHECK(SmallGroup::alternating(6).order() == 360);
  SmallGroup d5 = SmallGroup::d_n_prime(5);
  CHECK(d5.order() == 960);
  CHECK(d5.degree() == 10);
  for (const Permutation& g : d5.generators()) CHECK(parity(g) == Parity::even);
}

TEST_CASE("subgroup classes of the symmetric group on three letters") {
  const auto cs = subgroup_classes(s3());
  CHECK(cs.size() == 4);
  CHECK(class_orders(cs) == std::vector<long long>({1, 2, 3, 6}));
  for (const auto& c : cs) CHECK(c.order * c.index == 6);
}

TEST_CASE("subgroup classes of the alternating group on four letters") {
  const auto cs = subgroup_classes(a4());
  CHECK(cs.size() == 5);
  CHECK(class_orders(cs) == std::vector<long long>({1, 2, 3, 4, 12}));
}

TEST_CASE("subgroup classes agree with the join-closure oracle") {
  for (SmallGroup g : {s3(), a4(), SmallGroup::d_n_prime(3), SmallGroup::d_n_prime(4)}) {
    const auto fast = subgroup_classes(g);
    const auto brute = brute_force_subgroups(g);
    REQUIRE(fast.size() == brute.classes.size());
    long long total = 0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].canonical == brute.classes[i].canonical);
      CHECK(fast[i].class_size == brute.classes[i].class_size);
      // orbit-stabilizer for the conjugation action
      CHECK(fast[i].class_size * fast[i].normalizer_order == static_cast<long long>(g.order()));
      total += fast[i].class_size;
    }
    CHECK(total == brute.total);
  }
}

TEST_CASE("subgroup classes of the alternating group on six letters") {
  SmallGroup a6 = SmallGroup::alternating(6);
  const auto cs = subgroup_classes(a6);
  CHECK(cs.size() == 22);
  // independent cross-check by join closure
  const auto brute = brute_force_subgroups(a6);
  REQUIRE(brute.classes.size() == cs.size());
  long long total = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CHECK(cs[i].canonical == brute.classes[i].canonical);
    total += cs[i].class_size;
  }
  CHECK(total == brute.total);
  // the two classes of order-60 subgroups and the index-6 actions exist
  int order60 = 0, index6 = 0;
  for (const auto& c : cs) {
    if (c.order == 60) ++order60;
    if (c.index == 6) ++index6;
  }
  CHECK(order60 == 2);
  CHECK(index6 == 2);
}

TEST_CASE("subgroup enumeration is deterministic") {
  SmallGroup g = SmallGroup::d_n_prime(4);
  const auto a = subgroup_classes(g);
  const auto b = subgroup_classes(g);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].rep == b[i].rep);
    CHECK(a[i].canonical == b[i].canonical);
  }
}

TEST_CASE("expected landmarks among the subgroups of D_5'") {
  SmallGroup d5 = SmallGroup::d_n_prime(5);
  const auto cs = subgroup_classes(d5);
  int whole = 0, index10 = 0, simple60 = 0;
  for (const auto& c : cs) {
    if (c.order == 960) ++whole;
    if (c.index == 10) ++index10;
    if (c.order == 60) ++simple60;
    CHECK(c.order * c.index == 960);
    CHECK(c.class_size * c.normalizer_order == 960);
  }
  CHECK(whole == 1);
  CHECK(index10 >= 1);   // natural point stabilizers
  CHECK(simple60 >= 1);  // simple complements

  // prime-order classes cross-checked against the element-order census
  for (int p : {2, 3, 5}) {
    long long elements_of_order_p = 0;
    for (int e = 0; e < static_cast<int>(d5.order()); ++e)
      if (d5.element_order_of(e) == p) ++elements_of_order_p;
    long long from_classes = 0;
    for (const auto& c : cs)
      if (c.order == p) from_classes += c.class_size;
    CHECK(from_classes == elements_of_order_p / (p - 1));
  }
}

TEST_CASE("coset actions") {
  SmallGroup g = s3();
  const auto cs = subgroup_classes(g);

  // whole group: one point, all generators trivial
  const auto whole = coset_action(g, cs.back().rep);
  for (const auto& p : whole) {
    CHECK(p.degree() == 1);
    CHECK(p.is_identity());
  }

  // trivial subgroup: the regular action
  const auto regular = coset_action(g, cs.front().rep);
  CHECK(regular.front().degree() == 6);
  CHECK(PermGroup(6, regular).order() == 6);

  // order-2 subgroup: the natural degree-3 action
  const auto nat = coset_action(g, cs[1].rep);
  CHECK(nat.front().degree() == 3);
  CHECK(PermGroup(3, nat).order() == 6);

  CHECK_THROWS_AS(coset_action(g, std::vector<int>{0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("coset action image order equals index of the core") {
  for (SmallGroup g : {SmallGroup::alternating(6), SmallGroup::d_n_prime(5)}) {
    const auto cs = subgroup_classes(g);
    for (const auto& c : cs) {
      const auto action = coset_action(g, c.rep);
      const auto core = coset_action_core(g, c.rep);
      PermGroup image(static_cast<int>(c.index), action);
      CHECK(image.order() == g.order() / core.size());
    }
  }
}
