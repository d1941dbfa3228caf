#include "hset/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "hset/relations.hpp"

namespace hset::expr {

ParseError::ParseError(std::size_t pos, const std::string& what)
    : std::runtime_error("parse error at " + std::to_string(pos) + ": " + what), pos_(pos) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    auto e = expr();
    skip_ws();
    if (!at_end()) fail("unexpected '" + std::string(1, peek()) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool consume(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool starts_number() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
  }
  bool keyword_in() const {
    return text_.substr(pos_, 2) == "in" && !std::isalnum(static_cast<unsigned char>(peek(2)));
  }

  static ExprPtr make(std::size_t pos, auto node) {
    auto e = std::make_unique<Expr>();
    e->node = std::move(node);
    e->pos = pos;
    return e;
  }

  ExprPtr expr() {
    skip_ws();
    const std::size_t start = pos_;
    if (starts_number()) {
      const double value = number();
      skip_ws();
      if (!keyword_in()) fail("expected 'in' after a bare number");
      pos_ += 2;
      return make(start, In{Element::number(value), opexpr()});
    }

    auto lhs = opexpr();
    skip_ws();
    const std::size_t rel_pos = pos_;
    auto rel = relation();
    if (!rel) return lhs;
    auto [kind, swapped] = *rel;
    auto rhs = opexpr();

    if (kind == Rel::in) {
      auto* lit = std::get_if<Literal>(&lhs->node);
      if (!lit || lit->multiset) {
        throw ParseError(rel_pos, "left operand of 'in' must be a number or a set literal");
      }
      return make(start, In{Element::set(std::move(lit->members)), std::move(rhs)});
    }
    if (swapped) std::swap(lhs, rhs);
    return make(start, Relation{kind, std::move(lhs), std::move(rhs)});
  }

  std::optional<std::pair<Rel, bool>> relation() {
    skip_ws();
    if (keyword_in()) {
      pos_ += 2;
      return std::pair{Rel::in, false};
    }
    static constexpr std::pair<std::string_view, std::pair<Rel, bool>> table[] = {
        {"=<=", {Rel::exact_subset, false}},  {"=>=", {Rel::exact_subset, true}},
        {"=<", {Rel::strict_exact_subset, false}}, {"=>", {Rel::strict_exact_subset, true}},
        {"==", {Rel::equal, false}},          {"<=", {Rel::subset, false}},
        {">=", {Rel::subset, true}},          {"<", {Rel::strict_subset, false}},
        {">", {Rel::strict_subset, true}},
    };
    for (const auto& [token, rel] : table) {
      if (consume(token)) return rel;
    }
    return std::nullopt;
  }

  ExprPtr opexpr() {
    auto lhs = term();
    while (true) {
      skip_ws();
      const std::size_t start = pos_;
      OpName op;
      switch (peek()) {
        case '&': op = OpName::intersection; break;
        case '|': op = OpName::union_; break;
        case '+': op = OpName::sum; break;
        case '-': op = OpName::difference; break;
        case '^': op = OpName::symmdiff; break;
        default: return lhs;
      }
      ++pos_;
      Semantic semantic = Semantic::refer;
      if (peek() == '~') {
        ++pos_;
        semantic = Semantic::value;
      }
      auto rhs = term();
      lhs = make(start, BinOp{op, semantic, std::move(lhs), std::move(rhs)});
    }
  }

  ExprPtr term() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == '(') {
      ++pos_;
      auto e = expr();
      expect(')');
      return e;
    }
    if (peek() == '{') return make(start, literal());
    if (at_end()) fail("unexpected end of input");
    fail("expected '{' or '('");
  }

  Literal literal() {
    expect('{');
    Literal lit;
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return lit;
    }
    std::vector<std::optional<double>> counts;
    while (true) {
      skip_ws();
      if (peek() == '{') {
        const std::size_t nested_pos = pos_;
        Literal inner = literal();
        if (inner.multiset) throw ParseError(nested_pos, "a multiset cannot be an element");
        lit.members.push_back(Element::set(std::move(inner.members)));
      } else {
        lit.members.push_back(Element::number(number()));
      }
      skip_ws();
      if (peek() == '[') {
        ++pos_;
        skip_ws();
        const std::size_t mpos = pos_;
        const double m = number();
        if (!(m > 0)) throw ParseError(mpos, "multiplicity must be positive");
        expect(']');
        counts.emplace_back(m);
        lit.multiset = true;
      } else {
        counts.emplace_back();
      }
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      break;
    }
    if (lit.multiset) {
      for (const auto& c : counts) lit.multiplicities.push_back(c.value_or(1.0));
    }
    return lit;
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '-' || peek(1) == '+') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      pos_ += 2;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    const std::string_view s = text_.substr(start, pos_ - start);
    double value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(value)) {
      pos_ = start;
      fail("expected a finite number");
    }
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

HSet eval_set(const Expr& e) {
  auto v = eval(e);
  if (auto* h = std::get_if<HSet>(&v)) return *h;
  throw EvalError("expected a set or multiset at " + std::to_string(e.pos) + ", got a boolean");
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).parse(); }

Value eval(const Expr& e) {
  return std::visit(
      [](const auto& node) -> Value {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return HSet::make(node.members, node.multiplicities, node.multiset);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          HSet lhs = eval_set(*node.lhs);
          HSet rhs = eval_set(*node.rhs);
          return apply(node.op, lhs, {&rhs, 1}, node.semantic);
        } else if constexpr (std::is_same_v<T, Relation>) {
          HSet lhs = eval_set(*node.lhs);
          HSet rhs = eval_set(*node.rhs);
          switch (node.rel) {
            case Rel::subset: return included(lhs, rhs, false, false);
            case Rel::strict_subset: return included(lhs, rhs, true, false);
            case Rel::exact_subset: return included(lhs, rhs, false, true);
            case Rel::strict_exact_subset: return included(lhs, rhs, true, true);
            case Rel::equal: return equal(lhs, rhs);
            case Rel::in: break;
          }
          throw EvalError("bad relation");
        } else {
          return inclusion_member(node.member, eval_set(*node.rhs));
        }
      },
      e.node);
}

std::string render(const Value& v) {
  if (auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<HSet>(v).render();
}

std::string evaluate(std::string_view text) { return render(eval(*parse(text))); }

}  // namespace hset::expr
