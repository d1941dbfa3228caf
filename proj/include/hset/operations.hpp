#pragma once

#include <span>
#include <string_view>

#include "hset/hset.hpp"

namespace hset {

enum class Semantic {
  refer,  ///< result is written into the first operand's store
  value,  ///< result is written into a clone of the first operand
};

enum class OpName { intersection, union_, sum, difference, symmdiff };

std::string_view to_string(OpName op);

/// Multiplicity combinators. The first entry belongs to the first operand;
/// absent keys read 0 (numeric) or false (logical).
using LogicalCombinator = bool (*)(std::span<const bool>);
using NumericCombinator = double (*)(std::span<const double>);

namespace combinators {
bool all(std::span<const bool> v);
bool any(std::span<const bool> v);
/// v0 and not (v1 or v2 ...): left fold of "not implies".
bool nimp(std::span<const bool> v);
/// Left fold of "not if and only if" (xor).
bool niff(std::span<const bool> v);

double min(std::span<const double> v);
double max(std::span<const double> v);
double sum(std::span<const double> v);
/// max(v0 - v1 - v2 - ..., 0), equal to the left fold of the binary form.
double pdif(std::span<const double> v);
/// Left fold of |a - b|.
double sdif(std::span<const double> v);
}  // namespace combinators

struct OpSpec {
  OpName name;
  LogicalCombinator logical;
  NumericCombinator numeric;
  /// The identity operand is the universe (only for intersection): the
  /// engine must also visit the first operand's own keys.
  bool identity_is_universe;
};

const OpSpec& op_spec(OpName op);

/**
 * Combines `first` with `rest` element-wise.
 *
 * The logical engine runs when every operand is a set and yields a set;
 * otherwise sets are read as multisets of ones and the result is a
 * multiset. Under Semantic::refer the result lives in `first`'s store (the
 * returned handle aliases it); under Semantic::value `first` is untouched.
 * `rest` operands are never modified.
 *
 * Unless identity_is_universe is set, only keys of `rest` are visited, so a
 * refer call costs O(|rest|) when `first` is already of the result type.
 */
HSet hset_operation(const HSet& first, std::span<const HSet> rest, const OpSpec& spec,
                    Semantic semantic = Semantic::refer);

HSet intersection(const HSet& first, std::span<const HSet> rest, Semantic s = Semantic::refer);
HSet unite(const HSet& first, std::span<const HSet> rest, Semantic s = Semantic::refer);
HSet setsum(const HSet& first, std::span<const HSet> rest, Semantic s = Semantic::refer);
HSet difference(const HSet& first, std::span<const HSet> rest, Semantic s = Semantic::refer);
HSet symmdiff(const HSet& first, std::span<const HSet> rest, Semantic s = Semantic::refer);

// Binary shorthands.
HSet intersection(const HSet& a, const HSet& b, Semantic s = Semantic::refer);
HSet unite(const HSet& a, const HSet& b, Semantic s = Semantic::refer);
HSet setsum(const HSet& a, const HSet& b, Semantic s = Semantic::refer);
HSet difference(const HSet& a, const HSet& b, Semantic s = Semantic::refer);
HSet symmdiff(const HSet& a, const HSet& b, Semantic s = Semantic::refer);

HSet apply(OpName op, const HSet& first, std::span<const HSet> rest,
           Semantic s = Semantic::refer);

}  // namespace hset
