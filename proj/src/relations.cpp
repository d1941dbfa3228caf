#include "hset/relations.hpp"

namespace hset {

bool inclusion_member(const RawValue& member, const HSet& h, double multiplicity,
                      RelationKind kind) {
  auto v = validate_member(member);
  if (!v.ok()) return false;
  return inclusion_member(*v.element, h, multiplicity, kind);
}

bool inclusion_member(const Element& member, const HSet& h, double multiplicity,
                      RelationKind kind) {
  const double n = h.multiplicity_of(member);
  if (!h.is_generalized()) return n >= 1.0;
  const double diff = multiplicity - n;
  switch (kind) {
    case RelationKind::le: return diff <= 0.0;
    case RelationKind::lt: return diff < 0.0;
    case RelationKind::eq: return diff == 0.0;
  }
  return false;
}

std::vector<bool> inclusion_batch(std::span<const RawValue> members, const HSet& h) {
  // Encode everything first so the probes below run back to back and their
  // cache misses overlap.
  std::vector<std::string> keys(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto v = validate_member(members[i]);
    if (v.ok()) keys[i] = encode_text(*v.element);
  }
  const Table& table = h.table();
  std::vector<bool> out(members.size(), false);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].empty()) continue;
    auto it = table.find(keys[i]);
    // Same test as inclusion_member with m = 1 and kind = le.
    out[i] = it != table.end() && it->second.numeric() >= 1.0;
  }
  return out;
}

bool included(const HSet& h1, const HSet& h2, bool strictly, bool exactly) {
  if (!h1.is_generalized() && !h2.is_generalized()) exactly = false;

  double accumulated = 0.0;
  for (const auto& [key, m] : h1.table()) {
    const double diff = h2.multiplicity_of(key) - m.numeric();
    if (diff < 0.0) return false;
    accumulated += diff;
  }

  const std::size_t s1 = h1.size_support();
  const std::size_t s2 = h2.size_support();
  if (exactly) {
    if (accumulated != 0.0) return false;
    return strictly ? s1 < s2 : s1 <= s2;
  }
  if (strictly) return accumulated > 0.0 || s1 < s2;
  return true;
}

bool equal(const HSet& h1, const HSet& h2) {
  if (h1.size_support() != h2.size_support()) return false;
  for (const auto& [key, m] : h1.table()) {
    if (h2.multiplicity_of(key) != m.numeric()) return false;
  }
  return true;
}

}  // namespace hset
