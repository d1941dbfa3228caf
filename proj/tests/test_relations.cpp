#include <doctest.h>

#include <random>

#include "hset/relations.hpp"
#include "oracle.hpp"

using hset::HSet;
using hset::RawValue;
using hset::RelationKind;

namespace {

// a = 1, b = 2, c = 3
const HSet a3 = HSet::multiset({{1, 3}});

}  // namespace

TEST_CASE("inclusion_member") {
  CHECK(hset::inclusion_member(RawValue(1), a3, 2, RelationKind::le));
  CHECK_FALSE(hset::inclusion_member(RawValue(1), a3, 3, RelationKind::lt));
  CHECK(hset::inclusion_member(RawValue(1), a3, 3, RelationKind::eq));
  CHECK(hset::inclusion_member(RawValue(1), a3, 2, RelationKind::lt));
  CHECK_FALSE(hset::inclusion_member(RawValue(1), a3, 4, RelationKind::le));
  CHECK_FALSE(hset::inclusion_member(RawValue(2), a3));

  for (auto kind : {RelationKind::le, RelationKind::lt, RelationKind::eq}) {
    CHECK_FALSE(hset::inclusion_member(RawValue(std::nan("")), a3, 1, kind));
    CHECK_FALSE(hset::inclusion_member(RawValue("x"), HSet::of({1}), 1, kind));
    CHECK_FALSE(hset::inclusion_member(RawValue::null(), HSet::of({1}), 1, kind));
  }

  SUBCASE("sets ignore multiplicity and kind") {
    const HSet s = HSet::of({1});
    CHECK(hset::inclusion_member(RawValue(1), s, 5, RelationKind::eq));
    CHECK(hset::inclusion_member(RawValue(1), s, 1, RelationKind::lt));
    CHECK_FALSE(hset::inclusion_member(RawValue(2), s, 1, RelationKind::le));
  }
}

TEST_CASE("inclusion_batch") {
  const HSet s = HSet::of({1});
  const std::vector<RawValue> q = {RawValue(1), RawValue(2)};
  CHECK(hset::inclusion_batch(q, s) == std::vector<bool>{true, false});
  CHECK(hset::inclusion_batch({}, s).empty());
  const std::vector<RawValue> twos = {RawValue(2), RawValue(2.0)};
  CHECK(hset::inclusion_batch(twos, HSet::of({2})) == std::vector<bool>{true, true});

  // A fractional count below one does not contain a single copy.
  const HSet half = HSet::multiset({{1, 0.5}, {2, 1.5}});
  const std::vector<RawValue> mixed = {RawValue(1), RawValue(2), RawValue("x"), RawValue(3)};
  const auto batch = hset::inclusion_batch(mixed, half);
  CHECK(batch == std::vector<bool>{false, true, false, false});
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    CHECK(batch[i] == hset::inclusion_member(mixed[i], half));
  }
}

TEST_CASE("included: worked examples") {
  const HSet y1 = HSet::multiset({{1, 1}, {2, 2}});
  const HSet y2 = HSet::multiset({{1, 2}, {2, 2}, {3, 1}});
  CHECK(hset::included(y1, y2, false, false));
  CHECK(hset::included(y1, y2, true, false));
  CHECK_FALSE(hset::included(y1, y2, false, true));
  CHECK_FALSE(hset::included(y1, y2, true, true));

  const HSet z1 = HSet::multiset({{1, 2}});
  const HSet z2 = HSet::multiset({{1, 2}, {2, 1}});
  CHECK(hset::included(z1, z2, false, true));
  CHECK(hset::included(z1, z2, true, true));
  CHECK_FALSE(hset::included(z2, z1));
}

TEST_CASE("included: empty set laws") {
  const HSet empty;
  CHECK(hset::included(empty, HSet::of({1})));
  CHECK(hset::included(empty, HSet()));
  CHECK(hset::included(empty, HSet::of({1}), true));
  CHECK_FALSE(hset::included(empty, HSet(), true));
  CHECK(hset::included(empty, a3, true, true));
}

TEST_CASE("included: exactly is ignored between sets") {
  const HSet s1 = HSet::of({1});
  const HSet s2 = HSet::of({1, 2});
  CHECK(hset::included(s1, s2, false, true) == hset::included(s1, s2, false, false));
  CHECK(hset::included(s1, s2, true, true) == hset::included(s1, s2, true, false));
}

TEST_CASE("equal") {
  CHECK(hset::equal(HSet::of({1, 2}), HSet::of({2, 1})));
  CHECK(hset::equal(HSet::of({1}), HSet::multiset({{1, 1}})));
  CHECK_FALSE(hset::equal(HSet::of({1}), HSet::multiset({{1, 2}})));
  CHECK_FALSE(hset::equal(HSet::multiset({{1, 2}}), HSet::multiset({{1, 3}})));
  CHECK(hset::equal(HSet(), HSet::multiset({})));
}

TEST_CASE("relations do not mutate operands") {
  HSet s = HSet::of({1, 2});
  HSet m = HSet::multiset({{1, 3}});
  hset::included(s, m, true, true);
  hset::equal(s, m);
  CHECK_FALSE(s.is_generalized());
  CHECK(m.render() == "{1[3]}");
}

TEST_CASE("property: relations agree with the quantifier definitions") {
  std::mt19937_64 rng(31);
  std::bernoulli_distribution coin(0.3);
  for (int i = 0; i < 3000; ++i) {
    const auto b1 = oracle::random_bag(rng, coin(rng));
    // Bias towards related pairs so positive cases get exercised.
    auto b2 = coin(rng) ? b1 : oracle::random_bag(rng, coin(rng));
    if (!b1.is_set && b2.counts.size() < 6 && coin(rng)) b2.counts["7"] = 1;
    const HSet h1 = oracle::to_hset(b1);
    const HSet h2 = oracle::to_hset(b2);
    REQUIRE(hset::included(h1, h2, false, false) == oracle::subseteq(b1, b2));
    REQUIRE(hset::included(h1, h2, true, false) == oracle::subset(b1, b2));
    if (!(b1.is_set && b2.is_set)) {
      REQUIRE(hset::included(h1, h2, false, true) == oracle::exact_subseteq(b1, b2));
      REQUIRE(hset::included(h1, h2, true, true) == oracle::exact_subset(b1, b2));
    }
    REQUIRE(hset::equal(h1, h2) == oracle::bag_equal(b1, b2));
  }
}

TEST_CASE("property: partial order laws") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 2000; ++i) {
    const HSet x = oracle::to_hset(oracle::random_bag(rng, false, 4, 2));
    const HSet y = oracle::to_hset(oracle::random_bag(rng, false, 4, 2));
    const HSet z = oracle::to_hset(oracle::random_bag(rng, false, 4, 2));
    REQUIRE(hset::included(x, x));
    REQUIRE(hset::equal(x, x));
    if (hset::included(x, y) && hset::included(y, x)) REQUIRE(hset::equal(x, y));
    if (hset::included(x, y) && hset::included(y, z)) REQUIRE(hset::included(x, z));
    if (hset::included(x, y, true)) {
      REQUIRE(hset::included(x, y));
      REQUIRE_FALSE(hset::equal(x, y));
    }
    if (hset::included(x, y, true, true)) {
      REQUIRE(hset::included(x, y, false, true));
      REQUIRE(hset::included(x, y, true, false));
    }
  }
}
