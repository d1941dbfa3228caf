#include "hset/element.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

namespace hset {

Element Element::number(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("element: non-finite number");
  }
  return Element(value == 0.0 ? 0.0 : value);
}

Element Element::set(std::vector<Element> members) {
  std::vector<std::pair<std::string, Element>> keyed;
  keyed.reserve(members.size());
  for (auto& m : members) {
    keyed.emplace_back(encode_text(m), std::move(m));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());

  std::vector<Element> canonical;
  canonical.reserve(keyed.size());
  for (auto& [k, e] : keyed) {
    canonical.push_back(std::move(e));
  }
  return Element(std::move(canonical));
}

bool operator==(const Element& a, const Element& b) {
  if (a.is_number() != b.is_number()) return false;
  if (a.is_number()) return a.value() == b.value();
  return a.members() == b.members();
}

Key::Key(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw std::invalid_argument("key: empty text");
}

MalformedKey::MalformedKey(std::string_view key, std::size_t pos, const std::string& what)
    : std::invalid_argument("malformed key \"" + std::string(key) + "\" at " +
                            std::to_string(pos) + ": " + what),
      pos_(pos) {}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[400];
  std::to_chars_result res;
  if (std::trunc(value) == value) {
    res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  } else {
    res = std::to_chars(buf, buf + sizeof(buf), value);
  }
  return std::string(buf, res.ptr);
}

namespace {

void encode_into(const Element& e, std::string& out) {
  if (e.is_number()) {
    out += format_number(e.value());
    return;
  }
  // Members are already sorted by key and unique.
  out += '{';
  bool first = true;
  for (const auto& m : e.members()) {
    if (!first) out += ',';
    first = false;
    encode_into(m, out);
  }
  out += '}';
}

class KeyParser {
 public:
  explicit KeyParser(std::string_view text) : text_(text) {}

  Element parse() {
    if (text_.empty()) fail("empty key");
    auto [e, key] = element();
    if (pos_ != text_.size()) fail("trailing characters");
    return std::move(e);
  }

 private:
  struct Parsed {
    Element element;
    std::string_view key;
  };

  [[noreturn]] void fail(const std::string& what) const { throw MalformedKey(text_, pos_, what); }

  Parsed element() {
    if (pos_ < text_.size() && text_[pos_] == '{') return set();
    return number();
  }

  Parsed set() {
    const std::size_t start = pos_;
    ++pos_;  // '{'
    std::vector<Element> members;
    std::string_view previous;
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return {Element::empty_set(), text_.substr(start, pos_ - start)};
    }
    while (true) {
      auto [e, key] = element();
      if (!members.empty() && !(previous < key)) fail("set members not strictly ascending");
      previous = key;
      members.push_back(std::move(e));
      if (pos_ >= text_.size()) fail("unterminated set");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == '}') {
        ++pos_;
        break;
      }
      fail("expected ',' or '}'");
    }
    return {Element::set(std::move(members)), text_.substr(start, pos_ - start)};
  }

  Parsed number() {
    const std::size_t start = pos_;
    auto numeric_char = [](char c) {
      return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' || c == 'e';
    };
    while (pos_ < text_.size() && numeric_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected number or '{'");
    const std::string_view literal = text_.substr(start, pos_ - start);
    double value = 0;
    auto [end, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), value);
    if (ec != std::errc{} || end != literal.data() + literal.size() || !std::isfinite(value)) {
      pos_ = start;
      fail("invalid number");
    }
    if (format_number(value) != literal) {
      pos_ = start;
      fail("number not in canonical form");
    }
    return {Element::number(value), literal};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_text(const Element& e) {
  std::string out;
  encode_into(e, out);
  return out;
}

Key encode(const Element& e) { return Key(encode_text(e)); }

Element decode(std::string_view key) { return KeyParser(key).parse(); }

bool is_canonical_key(std::string_view text) {
  try {
    KeyParser(text).parse();
    return true;
  } catch (const MalformedKey&) {
    return false;
  }
}

// ---------------------------------------------------------------------------

namespace {

ValidatedMember rejected(std::string reason) {
  return {MemberStatus::rejected, std::nullopt, std::move(reason)};
}

ValidatedMember valid(Element e) { return {MemberStatus::valid, std::move(e), {}}; }

ValidatedMember from_double(double d) {
  if (!std::isfinite(d)) return rejected("non-finite number");
  return valid(Element::number(d));
}

}  // namespace

ValidatedMember validate_member(const RawValue& raw) {
  return std::visit(
      [](const auto& v) -> ValidatedMember {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RawValue::Null>) {
          return {MemberStatus::empty, std::nullopt, "null"};
        } else if constexpr (std::is_same_v<T, double>) {
          return from_double(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return valid(Element::number(static_cast<double>(v)));
        } else if constexpr (std::is_same_v<T, std::string>) {
          return rejected("non-numeric value");
        } else if constexpr (std::is_same_v<T, RawValue::Numeric>) {
          if (v.empty()) return {MemberStatus::empty, std::nullopt, "zero-length vector"};
          if (v.size() == 1) return from_double(v.front());
          std::vector<Element> members;
          members.reserve(v.size());
          for (double d : v) {
            if (!std::isfinite(d)) return rejected("non-finite number");
            members.push_back(Element::number(d));
          }
          return valid(Element::set(std::move(members)));
        } else {
          std::vector<Element> members;
          members.reserve(v.size());
          for (const auto& item : v) {
            auto inner = validate_member(item);
            if (inner.status == MemberStatus::rejected) return inner;
            // An empty inner value is the empty set, which is a legitimate member.
            members.push_back(inner.ok() ? std::move(*inner.element) : Element::empty_set());
          }
          return valid(Element::set(std::move(members)));
        }
      },
      raw.value);
}

}  // namespace hset
