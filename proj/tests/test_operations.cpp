#include <doctest.h>

#include <random>

#include "hset/operations.hpp"
#include "hset/relations.hpp"
#include "oracle.hpp"

using hset::HSet;
using hset::OpName;
using hset::Semantic;

TEST_CASE("combinators") {
  namespace c = hset::combinators;
  const bool t1[] = {true};
  const bool tf[] = {true, false};
  const bool ttf[] = {true, true, false};
  CHECK(c::all(t1));
  CHECK_FALSE(c::all(tf));
  CHECK(c::any(tf));
  CHECK(c::nimp(tf));
  CHECK_FALSE(c::nimp(ttf));
  CHECK(c::niff(tf));
  CHECK_FALSE(c::niff(ttf));

  const double x[] = {3};
  CHECK(c::min(x) == 3);
  CHECK(c::max(x) == 3);
  CHECK(c::sum(x) == 3);
  CHECK(c::pdif(x) == 3);
  CHECK(c::sdif(x) == 3);

  const double v[] = {5, 1, 2};
  CHECK(c::pdif(v) == 2);   // (5-1)-2
  CHECK(c::sdif(v) == 2);   // ||5-1|-2|
  const double w[] = {1, 5, 2};
  CHECK(c::pdif(w) == 0);
  CHECK(c::sdif(w) == 2);   // ||1-5|-2|
}

TEST_CASE("op specs") {
  CHECK(hset::op_spec(OpName::intersection).identity_is_universe);
  for (auto op : {OpName::union_, OpName::sum, OpName::difference, OpName::symmdiff}) {
    CHECK_FALSE(hset::op_spec(op).identity_is_universe);
  }
}

TEST_CASE("worked examples") {
  SUBCASE("union takes the max") {
    HSet r = hset::unite(HSet::multiset({{1, 1}}), HSet::multiset({{1, 3}, {2, 2}}));
    CHECK(r.render() == "{1[3],2[2]}");
  }
  SUBCASE("intersection by reference rewrites the first operand") {
    HSet x = HSet::of({1, 2, 3});
    HSet r = hset::intersection(x, HSet::of({2, 3, 4}));
    CHECK(r.render() == "{2,3}");
    CHECK(x.render() == "{2,3}");
    CHECK(r.same_store(x));
  }
  SUBCASE("sum by value leaves operands alone") {
    HSet x = HSet::multiset({{1, 1}});
    HSet r = hset::setsum(x, HSet::multiset({{1, 1}}), Semantic::value);
    CHECK(r.render() == "{1[2]}");
    CHECK(x.render() == "{1[1]}");
  }
  SUBCASE("difference clamps at zero") {
    CHECK(hset::difference(HSet::multiset({{1, 2}}), HSet::multiset({{1, 5}})).empty());
  }
  SUBCASE("symmetric difference is the absolute difference") {
    CHECK(hset::symmdiff(HSet::multiset({{1, 2}}), HSet::multiset({{1, 5}})).render() == "{1[3]}");
    CHECK(hset::symmdiff(HSet::of({1, 2}), HSet::of({2, 3})).render() == "{1,3}");
  }
  SUBCASE("(Y1 - Y2) & Y2 need not be empty") {
    const HSet y2 = HSet::multiset({{1, 1}});
    HSet d = hset::difference(HSet::multiset({{1, 3}}), y2);
    CHECK(d.render() == "{1[2]}");
    CHECK(hset::intersection(d, y2).render() == "{1[1]}");
  }
  SUBCASE("symmetric difference of multisets is order dependent") {
    const HSet y1 = HSet::multiset({{1, 1}});
    const HSet y2 = HSet::multiset({{1, 2}});
    const HSet y3 = HSet::multiset({{1, 3}});
    const HSet r12[] = {y2, y3};
    const HSet r31[] = {y1, y2};
    // ||1-2|-3| = 2 while ||3-1|-2| = 0.
    CHECK(hset::symmdiff(y1, r12, Semantic::value).render() == "{1[2]}");
    CHECK(hset::symmdiff(y3, r31, Semantic::value).empty());
    // Not associative either: |1-|2-3|| = 0.
    const HSet inner = hset::symmdiff(y2, y3, Semantic::value);
    CHECK(hset::symmdiff(y1, inner, Semantic::value).empty());
    // Swapping only the first two operands cannot matter: |a-b| = |b-a|.
    const HSet r21[] = {y1, y3};
    CHECK(hset::equal(hset::symmdiff(y2, r21, Semantic::value),
                      hset::symmdiff(y1, r12, Semantic::value)));
  }
  SUBCASE("set sum equals union") {
    CHECK(hset::setsum(HSet::of({1}), HSet::of({1, 2})).render() == "{1,2}");
  }
  SUBCASE("single operand is the identity") {
    HSet x = HSet::multiset({{1, 2}});
    CHECK(hset::difference(x, std::span<const HSet>{}).render() == "{1[2]}");
    CHECK(hset::intersection(x, std::span<const HSet>{}).render() == "{1[2]}");
  }
}

TEST_CASE("set first operand with multiset operands is converted even under refer") {
  HSet x = HSet::of({1, 2});
  HSet r = hset::unite(x, HSet::multiset({{2, 3}}));
  CHECK(r.same_store(x));
  CHECK(x.is_generalized());
  CHECK(x.render() == "{1[1],2[3]}");
}

TEST_CASE("an operand aliasing the first one is read before it changes") {
  HSet x = HSet::multiset({{1, 2}, {2, 1}});
  HSet r = hset::setsum(x, x.refer());
  CHECK(r.render() == "{1[4],2[2]}");
  HSet s = HSet::of({1, 2});
  CHECK(hset::symmdiff(s, s.refer()).empty());
}

namespace {

std::vector<oracle::Bag> random_operands(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> arity(2, 4);
  std::bernoulli_distribution is_set(0.5);
  std::vector<oracle::Bag> bags(static_cast<std::size_t>(arity(rng)));
  for (auto& b : bags) b = oracle::random_bag(rng, is_set(rng));
  return bags;
}

void check_no_zero_or_presence_in_multiset(const HSet& h) {
  for (const auto& [k, m] : h.table()) {
    REQUIRE(m.numeric() > 0);
    REQUIRE(m.is_presence() == !h.is_generalized());
  }
}

}  // namespace

TEST_CASE("property: operations agree with the element-wise definitions") {
  std::mt19937_64 rng(41);
  const OpName ops[] = {OpName::intersection, OpName::union_, OpName::sum, OpName::difference,
                        OpName::symmdiff};
  for (int i = 0; i < 2000; ++i) {
    const auto bags = random_operands(rng);
    for (auto op : ops) {
      for (auto semantic : {Semantic::refer, Semantic::value}) {
        std::vector<HSet> hs;
        for (const auto& b : bags) hs.push_back(oracle::to_hset(b));
        const HSet first = hs.front();
        const std::span<const HSet> rest(hs.data() + 1, hs.size() - 1);

        const HSet r = hset::apply(op, first, rest, semantic);
        CAPTURE(hset::to_string(op));
        REQUIRE(oracle::from_hset(r) == oracle::evaluate(op, bags));
        check_no_zero_or_presence_in_multiset(r);

        for (std::size_t k = 1; k < hs.size(); ++k) REQUIRE(oracle::from_hset(hs[k]) == bags[k]);
        if (semantic == Semantic::value) {
          REQUIRE(oracle::from_hset(first) == bags[0]);
          REQUIRE_FALSE(r.same_store(first));
        } else {
          REQUIRE(r.same_store(first));
        }
      }
    }
  }
}

TEST_CASE("property: identity laws") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const auto bag = oracle::random_bag(rng, i % 2 == 0);
    for (auto op : {OpName::union_, OpName::sum, OpName::difference, OpName::symmdiff}) {
      const HSet empty = bag.is_set ? HSet() : HSet::multiset({});
      HSet r = hset::apply(op, oracle::to_hset(bag), {&empty, 1});
      REQUIRE(oracle::from_hset(r) == bag);
    }
    // A materialised superset stands in for the universe.
    oracle::Bag super = bag;
    super.counts["99"] = 1;
    for (auto& [k, m] : super.counts) m += bag.is_set ? 0 : 1;
    const HSet s = oracle::to_hset(super);
    HSet r = hset::intersection(oracle::to_hset(bag), {&s, 1});
    REQUIRE(oracle::from_hset(r) == bag);
  }
}
