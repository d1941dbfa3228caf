#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hset/element.hpp"

namespace hset {

/**
 * Value stored against a key: either the presence marker of a set entry, or
 * a strictly positive finite multiplicity of a multiset entry.
 */
class Multiplicity {
 public:
  static constexpr Multiplicity presence() { return Multiplicity(0.0); }
  /// Throws std::invalid_argument unless `m` is finite and > 0.
  static Multiplicity count(double m);

  constexpr bool is_presence() const { return value_ == 0.0; }
  /// Numeric reading: presence counts as 1.
  constexpr double numeric() const { return is_presence() ? 1.0 : value_; }

  friend constexpr bool operator==(Multiplicity, Multiplicity) = default;

 private:
  constexpr explicit Multiplicity(double v) : value_(v) {}
  double value_;  // 0 encodes presence; counts are never 0
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

using Table = std::unordered_map<std::string, Multiplicity, StringHash, std::equal_to<>>;

/**
 * Handle to a shared hash table of Key -> Multiplicity plus the flag that
 * tells sets from multisets ("generalized" sets).
 *
 * Copying an HSet copies the handle: both copies alias the same store and
 * observe each other's mutations. Use clone() for an independent copy.
 *
 * Invariants: a set stores only presence markers; a multiset stores only
 * positive counts; no key is ever stored with multiplicity 0.
 *
 * Handles are single-writer: no internal locking is done.
 */
class HSet {
 public:
  /// Empty set.
  HSet();

  /**
   * Builds a set or multiset. Passing any multiplicities forces a multiset.
   * Duplicate members collapse in a set and have their multiplicities summed
   * in a multiset.
   */
  static HSet make(std::span<const Element> members, std::span<const double> multiplicities = {},
                   bool generalized = false);
  /// Like make(), validating host values first. Empty values are skipped
  /// (together with their multiplicity); rejected values throw.
  static HSet from_raw(std::span<const RawValue> members,
                       std::span<const double> multiplicities = {}, bool generalized = false);
  /// Convenience for numeric members.
  static HSet of(std::initializer_list<double> members);
  static HSet multiset(std::initializer_list<std::pair<double, double>> members);

  std::size_t size_support() const;
  double cardinality() const;
  bool empty() const { return size_support() == 0; }

  /// Keys in ascending bytewise order.
  std::vector<Key> members() const;
  /// Aligned with members(); all ones for a set.
  std::vector<double> multiplicities() const;

  /// 0 when absent, 1 for a set member.
  double multiplicity_of(const Element& e) const;
  double multiplicity_of(std::string_view key) const;
  bool contains(std::string_view key) const;

  bool is_generalized() const;
  /// In place: presence -> 1. Returns a handle to the same store.
  HSet as_generalized() const;
  /// In place: any count -> presence. Returns a handle to the same store.
  HSet as_not_generalized() const;

  /// New handle on the same store, optionally converting the store in place.
  HSet refer(std::optional<bool> generalized = std::nullopt) const;
  /// Independent copy, optionally converted; *this is never modified.
  HSet clone(std::optional<bool> generalized = std::nullopt) const;

  bool same_store(const HSet& other) const { return store_ == other.store_; }

  // Mutation through the handle (visible through every alias).
  void insert(const Element& e, double multiplicity = 1.0);
  void insert_key(std::string key, double multiplicity = 1.0);
  /// Stores exactly `multiplicity` for a multiset (0 removes). For a set,
  /// any positive value stores presence.
  void assign_key(std::string_view key, double multiplicity);
  void erase(const Element& e);
  void erase_key(std::string_view key);
  void clear();

  /// Direct access to the table, iterated in hash order.
  const Table& table() const;
  Table& mutable_table();

  /// Set: its key, e.g. "{1,2}". Multiset: "{1[2],2[0.5]}".
  std::string render() const;

 private:
  struct Store {
    Table table;
    bool generalized = false;
  };

  explicit HSet(std::shared_ptr<Store> store) : store_(std::move(store)) {}

  std::shared_ptr<Store> store_;
};

}  // namespace hset
