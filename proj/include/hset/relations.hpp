#pragma once

#include <span>
#include <vector>

#include "hset/element.hpp"
#include "hset/hset.hpp"

namespace hset {

/// How the requested multiplicity m compares with the stored one n:
/// le holds when n >= m, lt when n > m, eq when n == m.
enum class RelationKind { le, lt, eq };

/**
 * a[m] in_kind h. Invalid members are never included. When h is a set,
 * `multiplicity` and `kind` are ignored and the plain membership is returned.
 */
bool inclusion_member(const RawValue& member, const HSet& h, double multiplicity = 1.0,
                      RelationKind kind = RelationKind::le);
bool inclusion_member(const Element& member, const HSet& h, double multiplicity = 1.0,
                      RelationKind kind = RelationKind::le);

std::vector<bool> inclusion_batch(std::span<const RawValue> members, const HSet& h);

/**
 * Subset family between two hsets:
 *
 *   strictly=false exactly=false   h1 <= h2
 *   strictly=true  exactly=false   h1 <  h2
 *   strictly=false exactly=true    h1 =<= h2  (equal multiplicities on h1's support)
 *   strictly=true  exactly=true    h1 =<  h2
 *
 * Only h1's members are visited. Sets read as multisets of ones; `exactly`
 * is ignored when both are sets.
 */
bool included(const HSet& h1, const HSet& h2, bool strictly = false, bool exactly = false);

bool equal(const HSet& h1, const HSet& h2);

}  // namespace hset
