#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hset {

/**
 * A member of a set or multiset: either a finite number, or a finite set of
 * members. Multisets are never members.
 *
 * Elements are immutable values kept in canonical form: the members of a
 * set are sorted by key and contain no duplicates, so structural equality
 * of two Elements coincides with set equality.
 */
class Element {
 public:
  /// Throws std::invalid_argument for NaN and infinities.
  static Element number(double value);
  /// Duplicates (by key) collapse.
  static Element set(std::vector<Element> members);
  static Element empty_set() { return set({}); }

  bool is_number() const { return std::holds_alternative<double>(repr_); }
  bool is_set() const { return !is_number(); }

  double value() const { return std::get<double>(repr_); }
  const std::vector<Element>& members() const { return std::get<std::vector<Element>>(repr_); }

  friend bool operator==(const Element& a, const Element& b);

 private:
  explicit Element(double v) : repr_(v) {}
  explicit Element(std::vector<Element> m) : repr_(std::move(m)) {}

  std::variant<double, std::vector<Element>> repr_;
};

/// Canonical string label of an Element.
class Key {
 public:
  explicit Key(std::string text);
  const std::string& text() const { return text_; }
  operator std::string_view() const { return text_; }
  auto operator<=>(const Key&) const = default;

 private:
  std::string text_;
};

class MalformedKey : public std::invalid_argument {
 public:
  MalformedKey(std::string_view key, std::size_t pos, const std::string& what);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Shortest round-trip decimal. Integral values never carry a point or an
/// exponent, and -0 renders as "0".
std::string format_number(double value);

Key encode(const Element& e);
std::string encode_text(const Element& e);

Element decode(std::string_view key);

/// True if `text` is exactly the key some Element encodes to.
bool is_canonical_key(std::string_view text);

// ---------------------------------------------------------------------------
// Host values offered as members before validation.

struct RawValue;
using RawList = std::vector<RawValue>;

struct RawValue {
  struct Null {};
  /// A numeric vector: length 1 is a scalar, longer ones are sets.
  using Numeric = std::vector<double>;

  std::variant<Null, double, std::int64_t, std::string, Numeric, RawList> value;

  RawValue() : value(Null{}) {}
  RawValue(double d) : value(d) {}
  RawValue(int i) : value(std::int64_t{i}) {}
  RawValue(std::int64_t i) : value(i) {}
  RawValue(std::string s) : value(std::move(s)) {}
  RawValue(const char* s) : value(std::string(s)) {}
  RawValue(Numeric v) : value(std::move(v)) {}
  RawValue(RawList l) : value(std::move(l)) {}

  static RawValue null() { return {}; }
  static RawValue list(RawList l) { return RawValue(std::move(l)); }
};

enum class MemberStatus { valid, empty, rejected };

struct ValidatedMember {
  MemberStatus status;
  std::optional<Element> element;
  std::string reason;

  bool ok() const { return status == MemberStatus::valid; }
};

/**
 * Converts a host value into an Element.
 *
 * Finite scalars become numbers; numeric vectors of length >= 2 and lists of
 * any length become sets. Null and zero-length numeric vectors stand for the
 * empty set and are flagged `empty` (they are never inserted). Non-finite
 * numbers and non-numeric leaves are `rejected`.
 */
ValidatedMember validate_member(const RawValue& raw);

}  // namespace hset
