#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hset/element.hpp"
#include "hset/hset.hpp"
#include "hset/operations.hpp"

namespace hset::expr {

// Set-expression calculator.
//
//   expr    := number "in" opexpr | opexpr [REL opexpr]
//   REL     := "<=" | "<" | "==" | "=<=" | "=<" | "in"
//              (reflected: ">=" | ">" | "=>=" | "=>")
//   opexpr  := term (OP term)*            left-associative
//   OP      := ("&" | "|" | "+" | "-" | "^") ["~"]   "~" selects value semantics
//   term    := literal | "(" expr ")"
//   literal := "{" [item ("," item)*] "}"
//   item    := (number | literal) ["[" number "]"]
//
// A literal with any "[m]" item is a multiset.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& what);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Rel { subset, strict_subset, equal, exact_subset, strict_exact_subset, in };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Literal {
  std::vector<Element> members;
  std::vector<double> multiplicities;  // empty for a set
  bool multiset = false;
};

struct BinOp {
  OpName op;
  Semantic semantic;
  ExprPtr lhs, rhs;
};

struct Relation {
  Rel rel;
  ExprPtr lhs, rhs;
};

struct In {
  Element member;
  ExprPtr rhs;
};

struct Expr {
  std::variant<Literal, BinOp, Relation, In> node;
  std::size_t pos = 0;
};

ExprPtr parse(std::string_view text);

using Value = std::variant<HSet, bool>;

Value eval(const Expr& e);
std::string render(const Value& v);

/// parse + eval + render.
std::string evaluate(std::string_view text);

}  // namespace hset::expr
