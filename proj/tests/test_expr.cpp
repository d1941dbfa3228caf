#include <doctest.h>

#include <random>

#include "hset/expr.hpp"
#include "hset/relations.hpp"
#include "oracle.hpp"

using hset::HSet;
namespace ex = hset::expr;

namespace {

HSet eval_set(std::string_view text) {
  auto e = ex::parse(text);
  return std::get<HSet>(ex::eval(*e));
}

std::size_t error_pos(std::string_view text) {
  try {
    ex::parse(text);
  } catch (const ex::ParseError& err) {
    return err.position();
  }
  FAIL("no parse error for " << text);
  return 0;
}

}  // namespace

TEST_CASE("evaluate: examples") {
  CHECK(ex::evaluate("{1,2} | {2,3}") == "{1,2,3}");
  CHECK(ex::evaluate("{1[2]} - {1[5]}") == "{}");
  CHECK(eval_set("{1[2]} - {1[5]}").is_generalized());
  CHECK(ex::evaluate("2 in {1,2}") == "true");
  CHECK(ex::evaluate("3 in {1,2}") == "false");
  CHECK(ex::evaluate("{} <= {1}") == "true");
  CHECK(ex::evaluate("{1,2} & {2,3}") == "{2}");
  CHECK(ex::evaluate("{1[2]} ^ {1[5]}") == "{1[3]}");
  CHECK(ex::evaluate("({1[1]} + {1}) == {1[2]}") == "true");
  // With two plain sets the sum is a union.
  CHECK(ex::evaluate("({1} + {1}) == {1}") == "true");
}

TEST_CASE("evaluate: precedence is flat and left-associative") {
  CHECK(ex::evaluate("{1,2,3} - {1} | {1}") == "{1,2,3}");
  CHECK(ex::evaluate("{1,2,3} - ({1} | {1})") == "{2,3}");
}

TEST_CASE("evaluate: relations") {
  CHECK(ex::evaluate("{1[1],2[2]} < {1[2],2[2],3[1]}") == "true");
  CHECK(ex::evaluate("{1[1],2[2]} =<= {1[2],2[2],3[1]}") == "false");
  CHECK(ex::evaluate("{1[2]} =< {1[2],2[1]}") == "true");
  CHECK(ex::evaluate("{1[2],2[1]} => {1[2]}") == "true");
  CHECK(ex::evaluate("{1,2} >= {2}") == "true");
  CHECK(ex::evaluate("{1} > {1}") == "false");
  CHECK(ex::evaluate("{2} in {{2},3}") == "true");
  CHECK(ex::evaluate("{1[3]} == {1[3]}") == "true");
}

TEST_CASE("evaluate: nested literals and canonical output") {
  CHECK(ex::evaluate("{-1,1,1,{},2,11,{2,{3}}}") == "{-1,1,11,2,{2,{3}},{}}");
  CHECK(ex::evaluate("{0.5, 1.0}") == "{0.5,1}");
  CHECK(ex::evaluate("{{1}, 2[3]}") == "{2[3],{1}[1]}");
  CHECK(ex::evaluate("{{1}[2]} + {{1}}") == "{{1}[3]}");
}

TEST_CASE("value-semantic tokens parse and agree with refer") {
  auto e = ex::parse("{1,2} |~ {3}");
  const auto& op = std::get<ex::BinOp>(e->node);
  CHECK(op.semantic == hset::Semantic::value);
  CHECK(std::get<ex::BinOp>(ex::parse("{1} | {3}")->node).semantic == hset::Semantic::refer);
  for (const char* o : {"&", "|", "+", "-", "^"}) {
    const std::string lhs = "{1[3],2[1]}", rhs = "{1[1],3[2]}";
    CHECK(ex::evaluate(lhs + o + rhs) == ex::evaluate(lhs + o + "~" + rhs));
  }
}

TEST_CASE("value semantics leave literal operands unchanged (library API)") {
  HSet a = HSet::of({1, 2});
  HSet b = HSet::of({3});
  HSet r = hset::unite(a, b, hset::Semantic::value);
  CHECK(a.render() == "{1,2}");
  CHECK(b.render() == "{3}");
  CHECK(r.render() == "{1,2,3}");
}

TEST_CASE("parse errors report positions") {
  CHECK(error_pos("{1,2") == 4);
  CHECK(error_pos("{1,2} | ") == 8);
  CHECK(error_pos("{1,2} ? {1}") == 6);
  CHECK(error_pos("{1[0]}") == 3);
  CHECK(error_pos("{1[-2]}") == 3);
  CHECK(error_pos("{{1[2]}}") == 1);
  CHECK_THROWS_AS(ex::parse(""), ex::ParseError);
  CHECK_THROWS_AS(ex::parse("1"), ex::ParseError);
  CHECK_THROWS_AS(ex::parse("{1} <= {2} <= {3}"), ex::ParseError);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(ex::evaluate("({1} <= {2}) | {1}"), ex::EvalError);
}

TEST_CASE("property: render round-trips through parse") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 2000; ++i) {
    const auto a = oracle::random_bag(rng, i % 2 == 0);
    const auto b = oracle::random_bag(rng, i % 3 == 0);
    const HSet ha = oracle::to_hset(a);
    const HSet hb = oracle::to_hset(b);
    for (const char* o : {"&", "|", "+", "-", "^"}) {
      const std::string text = ha.render() + " " + o + " " + hb.render();
      const auto value = ex::eval(*ex::parse(text));
      const std::string out = ex::render(value);
      const HSet back = eval_set(out);
      REQUIRE(hset::equal(std::get<HSet>(value), back));
      REQUIRE(ex::render(ex::Value{back}) == out);
    }
  }
}
