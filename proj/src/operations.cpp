#include "hset/operations.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace hset {

std::string_view to_string(OpName op) {
  switch (op) {
    case OpName::intersection: return "intersection";
    case OpName::union_: return "union";
    case OpName::sum: return "sum";
    case OpName::difference: return "difference";
    case OpName::symmdiff: return "symmdiff";
  }
  return "?";
}

namespace combinators {

bool all(std::span<const bool> v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); }

bool any(std::span<const bool> v) { return std::any_of(v.begin(), v.end(), [](bool b) { return b; }); }

bool nimp(std::span<const bool> v) { return v.front() && !any(v.subspan(1)); }

bool niff(std::span<const bool> v) {
  bool acc = v.front();
  for (bool b : v.subspan(1)) acc = acc != b;
  return acc;
}

double min(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }

double max(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double pdif(std::span<const double> v) {
  const double rest = std::accumulate(v.begin() + 1, v.end(), 0.0);
  return std::max(v.front() - rest, 0.0);
}

double sdif(std::span<const double> v) {
  double acc = v.front();
  for (double x : v.subspan(1)) acc = std::abs(acc - x);
  return acc;
}

}  // namespace combinators

const OpSpec& op_spec(OpName op) {
  static const OpSpec specs[] = {
      {OpName::intersection, combinators::all, combinators::min, true},
      {OpName::union_, combinators::any, combinators::max, false},
      {OpName::sum, combinators::any, combinators::sum, false},
      {OpName::difference, combinators::nimp, combinators::pdif, false},
      {OpName::symmdiff, combinators::niff, combinators::sdif, false},
  };
  return specs[static_cast<int>(op)];
}

namespace {

// Multiplicity reading and writing for the two engines.
struct NumericEngine {
  using value_type = double;
  NumericCombinator combine;

  static double read(const Multiplicity& m) { return m.numeric(); }
  static double absent() { return 0.0; }

  static double checked(double r) {
    if (!std::isfinite(r) || r < 0.0) {
      throw std::logic_error("hset_operation: combinator produced " + format_number(r));
    }
    return r;
  }
  static bool keep(double r) { return checked(r) > 0.0; }
  static Multiplicity store(double r) { return Multiplicity::count(r); }
};

struct LogicalEngine {
  using value_type = bool;
  LogicalCombinator combine;

  static bool read(const Multiplicity&) { return true; }
  static bool absent() { return false; }
  static bool keep(bool r) { return r; }
  static Multiplicity store(bool) { return Multiplicity::presence(); }
};

template <class Engine>
class Combiner {
  using V = typename Engine::value_type;

 public:
  Combiner(Engine engine, std::span<const HSet* const> rest)
      : engine_(engine), rest_(rest), values_(new V[rest.size() + 1]) {}

  V evaluate(std::string_view key, V first) {
    values_[0] = first;
    for (std::size_t i = 0; i < rest_.size(); ++i) {
      const auto& t = rest_[i]->table();
      auto it = t.find(key);
      values_[i + 1] = it == t.end() ? Engine::absent() : Engine::read(it->second);
    }
    return engine_.combine(std::span<const V>(values_.get(), rest_.size() + 1));
  }

  // Visits only keys of the rest operands. All lookups are done before any
  // write so that they are independent and their cache misses overlap.
  void run_sparse(Table& target) {
    std::vector<std::string_view> keys;
    std::unordered_set<std::string_view> seen;
    const bool dedupe = rest_.size() > 1;
    for (const HSet* operand : rest_) {
      for (const auto& [key, m] : operand->table()) {
        if (dedupe && !seen.insert(key).second) continue;
        keys.push_back(key);
      }
    }

    const std::size_t width = rest_.size() + 1;
    std::unique_ptr<V[]> values(new V[keys.size() * width]);
    std::vector<bool> present(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k) {
      auto it = target.find(keys[k]);
      present[k] = it != target.end();
      values[k * width] = present[k] ? Engine::read(it->second) : Engine::absent();
      for (std::size_t i = 0; i < rest_.size(); ++i) {
        const auto& t = rest_[i]->table();
        auto jt = t.find(keys[k]);
        values[k * width + i + 1] = jt == t.end() ? Engine::absent() : Engine::read(jt->second);
      }
    }

    for (std::size_t k = 0; k < keys.size(); ++k) {
      const V r = engine_.combine(std::span<const V>(values.get() + k * width, width));
      if (Engine::keep(r)) {
        if (present[k]) {
          target.find(keys[k])->second = Engine::store(r);
        } else {
          target.emplace(std::string(keys[k]), Engine::store(r));
        }
      } else if (present[k]) {
        target.erase(target.find(keys[k]));
      }
    }
  }

  // Visits the target's keys as well; used when the identity is the universe.
  void run_full(Table& target) {
    std::vector<std::pair<std::string, Multiplicity>> pending;
    std::unordered_set<std::string_view> seen;
    for (const HSet* operand : rest_) {
      for (const auto& [key, m] : operand->table()) {
        if (target.contains(key) || !seen.insert(key).second) continue;
        V r = evaluate(key, Engine::absent());
        if (Engine::keep(r)) pending.emplace_back(key, Engine::store(r));
      }
    }
    for (auto it = target.begin(); it != target.end();) {
      V r = evaluate(it->first, Engine::read(it->second));
      if (Engine::keep(r)) {
        it->second = Engine::store(r);
        ++it;
      } else {
        it = target.erase(it);
      }
    }
    for (auto& [key, m] : pending) target.emplace(std::move(key), m);
  }

 private:
  Engine engine_;
  std::span<const HSet* const> rest_;
  std::unique_ptr<V[]> values_;
};

template <class Engine>
void run(Engine engine, Table& target, std::span<const HSet* const> rest, bool universe) {
  Combiner<Engine> c(engine, rest);
  if (universe) {
    c.run_full(target);
  } else {
    c.run_sparse(target);
  }
}

}  // namespace

HSet hset_operation(const HSet& first, std::span<const HSet> rest, const OpSpec& spec,
                    Semantic semantic) {
  const bool numeric = first.is_generalized() ||
                       std::any_of(rest.begin(), rest.end(),
                                   [](const HSet& h) { return h.is_generalized(); });
  const std::optional<bool> convert = numeric ? std::optional<bool>(true) : std::nullopt;
  HSet target = semantic == Semantic::refer ? first.refer(convert) : first.clone(convert);

  // Operands sharing the target's store are read from a snapshot.
  std::vector<HSet> snapshots;
  snapshots.reserve(rest.size());
  std::vector<const HSet*> operands;
  operands.reserve(rest.size());
  for (const auto& h : rest) {
    if (h.same_store(target)) {
      snapshots.push_back(h.clone());
      operands.push_back(&snapshots.back());
    } else {
      operands.push_back(&h);
    }
  }

  Table& table = target.mutable_table();
  if (numeric) {
    run(NumericEngine{spec.numeric}, table, operands, spec.identity_is_universe);
  } else {
    run(LogicalEngine{spec.logical}, table, operands, spec.identity_is_universe);
  }
  return target;
}

HSet apply(OpName op, const HSet& first, std::span<const HSet> rest, Semantic s) {
  return hset_operation(first, rest, op_spec(op), s);
}

HSet intersection(const HSet& first, std::span<const HSet> rest, Semantic s) {
  return apply(OpName::intersection, first, rest, s);
}
HSet unite(const HSet& first, std::span<const HSet> rest, Semantic s) {
  return apply(OpName::union_, first, rest, s);
}
HSet setsum(const HSet& first, std::span<const HSet> rest, Semantic s) {
  return apply(OpName::sum, first, rest, s);
}
HSet difference(const HSet& first, std::span<const HSet> rest, Semantic s) {
  return apply(OpName::difference, first, rest, s);
}
HSet symmdiff(const HSet& first, std::span<const HSet> rest, Semantic s) {
  return apply(OpName::symmdiff, first, rest, s);
}

HSet intersection(const HSet& a, const HSet& b, Semantic s) { return intersection(a, {&b, 1}, s); }
HSet unite(const HSet& a, const HSet& b, Semantic s) { return unite(a, {&b, 1}, s); }
HSet setsum(const HSet& a, const HSet& b, Semantic s) { return setsum(a, {&b, 1}, s); }
HSet difference(const HSet& a, const HSet& b, Semantic s) { return difference(a, {&b, 1}, s); }
HSet symmdiff(const HSet& a, const HSet& b, Semantic s) { return symmdiff(a, {&b, 1}, s); }

}  // namespace hset
