#include "hset/hset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hset {

Multiplicity Multiplicity::count(double m) {
  if (!std::isfinite(m) || m <= 0.0) {
    throw std::invalid_argument("multiplicity must be finite and > 0, got " + format_number(m));
  }
  return Multiplicity(m);
}

HSet::HSet() : store_(std::make_shared<Store>()) {}

HSet HSet::make(std::span<const Element> members, std::span<const double> multiplicities,
                bool generalized) {
  if (!multiplicities.empty()) {
    if (multiplicities.size() != members.size()) {
      throw std::invalid_argument("hset: " + std::to_string(members.size()) + " members but " +
                                  std::to_string(multiplicities.size()) + " multiplicities");
    }
    generalized = true;
  }
  HSet h;
  h.store_->generalized = generalized;
  h.store_->table.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    h.insert(members[i], multiplicities.empty() ? 1.0 : multiplicities[i]);
  }
  return h;
}

HSet HSet::from_raw(std::span<const RawValue> members, std::span<const double> multiplicities,
                    bool generalized) {
  if (!multiplicities.empty() && multiplicities.size() != members.size()) {
    throw std::invalid_argument("hset: " + std::to_string(members.size()) + " members but " +
                                std::to_string(multiplicities.size()) + " multiplicities");
  }
  std::vector<Element> elements;
  std::vector<double> counts;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto v = validate_member(members[i]);
    if (v.status == MemberStatus::rejected) {
      throw std::invalid_argument("hset: invalid member #" + std::to_string(i) + ": " + v.reason);
    }
    if (v.status == MemberStatus::empty) continue;
    elements.push_back(std::move(*v.element));
    if (!multiplicities.empty()) counts.push_back(multiplicities[i]);
  }
  if (!multiplicities.empty()) {
    // Keep the multiset flag even if every member turned out to be empty.
    auto h = make(elements, counts, true);
    h.store_->generalized = true;
    return h;
  }
  return make(elements, {}, generalized);
}

HSet HSet::of(std::initializer_list<double> members) {
  HSet h;
  for (double m : members) h.insert(Element::number(m));
  return h;
}

HSet HSet::multiset(std::initializer_list<std::pair<double, double>> members) {
  HSet h;
  h.store_->generalized = true;
  for (auto [e, m] : members) h.insert(Element::number(e), m);
  return h;
}

std::size_t HSet::size_support() const { return store_->table.size(); }

double HSet::cardinality() const {
  if (!store_->generalized) return static_cast<double>(store_->table.size());
  double total = 0;
  for (const auto& [k, m] : store_->table) total += m.numeric();
  return total;
}

std::vector<Key> HSet::members() const {
  std::vector<Key> keys;
  keys.reserve(store_->table.size());
  for (const auto& [k, m] : store_->table) keys.emplace_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<double> HSet::multiplicities() const {
  auto keys = members();
  std::vector<double> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(store_->table.find(k.text())->second.numeric());
  return out;
}

double HSet::multiplicity_of(const Element& e) const { return multiplicity_of(encode_text(e)); }

double HSet::multiplicity_of(std::string_view key) const {
  auto it = store_->table.find(key);
  return it == store_->table.end() ? 0.0 : it->second.numeric();
}

bool HSet::contains(std::string_view key) const { return store_->table.contains(key); }

bool HSet::is_generalized() const { return store_->generalized; }

HSet HSet::as_generalized() const {
  if (!store_->generalized) {
    for (auto& [k, m] : store_->table) m = Multiplicity::count(1.0);
    store_->generalized = true;
  }
  return *this;
}

HSet HSet::as_not_generalized() const {
  if (store_->generalized) {
    for (auto& [k, m] : store_->table) m = Multiplicity::presence();
    store_->generalized = false;
  }
  return *this;
}

HSet HSet::refer(std::optional<bool> generalized) const {
  if (generalized) {
    return *generalized ? as_generalized() : as_not_generalized();
  }
  return *this;
}

HSet HSet::clone(std::optional<bool> generalized) const {
  HSet copy(std::make_shared<Store>(*store_));
  if (generalized) copy.refer(generalized);
  return copy;
}

void HSet::insert(const Element& e, double multiplicity) {
  insert_key(encode_text(e), multiplicity);
}

void HSet::insert_key(std::string key, double multiplicity) {
  auto m = Multiplicity::count(multiplicity);
  if (!store_->generalized) {
    store_->table.try_emplace(std::move(key), Multiplicity::presence());
    return;
  }
  auto [it, inserted] = store_->table.try_emplace(std::move(key), m);
  if (!inserted) it->second = Multiplicity::count(it->second.numeric() + multiplicity);
}

void HSet::assign_key(std::string_view key, double multiplicity) {
  if (multiplicity == 0.0) {
    erase_key(key);
    return;
  }
  auto m = store_->generalized ? Multiplicity::count(multiplicity)
                               : (Multiplicity::count(multiplicity), Multiplicity::presence());
  auto it = store_->table.find(key);
  if (it == store_->table.end()) {
    store_->table.emplace(std::string(key), m);
  } else {
    it->second = m;
  }
}

void HSet::erase(const Element& e) { erase_key(encode_text(e)); }

void HSet::erase_key(std::string_view key) {
  auto it = store_->table.find(key);
  if (it != store_->table.end()) store_->table.erase(it);
}

void HSet::clear() { store_->table.clear(); }

const Table& HSet::table() const { return store_->table; }

Table& HSet::mutable_table() { return store_->table; }

std::string HSet::render() const {
  const auto keys = members();
  std::string out = "{";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) out += ',';
    out += keys[i].text();
    if (store_->generalized) {
      out += '[';
      out += format_number(store_->table.find(keys[i].text())->second.numeric());
      out += ']';
    }
  }
  out += '}';
  return out;
}

}  // namespace hset
