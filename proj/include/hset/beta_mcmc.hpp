#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hset/hset.hpp"

namespace hset::mcmc {

using Rng = std::mt19937_64;
using EdgeId = std::int64_t;

/// Undirected simple graphs on n vertices with independent ties,
/// P(tie ij) = logistic(beta_i + beta_j).
class BetaModel {
 public:
  BetaModel(int n, std::vector<double> beta);

  /// beta ~ Normal(mean, 1) independently per vertex.
  static BetaModel sample(int n, Rng& rng, double mean = -1.0);

  int n() const { return n_; }
  const std::vector<double>& beta() const { return beta_; }
  EdgeId tie_count() const { return static_cast<EdgeId>(n_) * (n_ - 1) / 2; }

  /// Vertices are 1-based.
  double tie_probability(int i, int j) const;
  /// log P(X = x | beta) for a degree vector (0-based vector of n degrees).
  double log_probability(std::span<const int> degrees) const;
  /// Sum over i<j of log(1 + exp(beta_i + beta_j)).
  double log_partition() const;

 private:
  int n_;
  std::vector<double> beta_;
};

/// Row-major index of the upper triangle, 1-based: (1,2) -> 1, (n-1,n) -> n(n-1)/2.
EdgeId edge_id(int i, int j, int n);
std::pair<int, int> edge_pair(EdgeId id, int n);

enum class StartMode { stationary, sparse, dense };

std::string_view to_string(StartMode mode);

/**
 * Augmented chain state: the edge set, the degree-frequency multiset
 * (degree -> number of vertices with that degree) and a per-vertex degree
 * cache (0-based).
 */
struct ChainState {
  HSet edges;
  HSet degree_freq;
  std::vector<int> degrees;
  std::uint64_t t = 0;

  /// Degree frequencies rebuilt from `edges` alone.
  HSet recompute_degree_freq(int n) const;
  /// Cheap structural checks; returns a description of the first violation.
  std::string check(int n) const;
};

ChainState sample_start(const BetaModel& model, StartMode start, Rng& rng);

/**
 * Metropolis acceptance probability of toggling every tie in `flips`
 * (distinct ids): min(exp(sum over touched vertices of (new - old degree) *
 * beta_i), 1).
 */
double acceptance_prob(const BetaModel& model, const ChainState& state,
                       std::span<const EdgeId> flips);

/// Applies an accepted flip set: X <- X symmdiff F, and Z updated by removing
/// the old degree counts of the touched vertices and adding the new ones.
void apply_flips(const BetaModel& model, ChainState& state, std::span<const EdgeId> flips);

/// One Metropolis step with a single uniformly drawn tie. Returns whether
/// the proposal was accepted; t advances either way.
bool step(const BetaModel& model, ChainState& state, Rng& rng);

struct ChainConfig {
  int n = 50;
  std::uint64_t iterations = 10001;
  StartMode start = StartMode::stationary;
  std::uint64_t seed = 1;
  std::uint64_t window = 150;
  std::uint64_t snapshot_every = 1000;
};

struct EcdfPoint {
  double degree;
  double cum_fraction;
};

struct EcdfSnapshot {
  std::uint64_t t;
  std::vector<EcdfPoint> points;
};

struct Trace {
  std::vector<bool> accepted;        // index t-1 for iteration t
  std::vector<double> movavg;        // centred moving average of `accepted`
  std::vector<std::int64_t> ties;    // |X_t| after iteration t
  std::vector<EcdfSnapshot> ecdf;    // at t = 1, 1 + snapshot_every, ...
};

/// Called after every iteration.
using Observer = std::function<void(const ChainState&)>;

/// Deterministic given config.seed; the start state is drawn from the same
/// stream as the proposals.
Trace run_chain(const ChainConfig& config, const BetaModel& model, const Observer& observer = {});

/// Centred moving average; windows are clipped at both ends of the series.
std::vector<double> moving_average(const std::vector<bool>& flags, std::uint64_t window);

std::vector<EcdfPoint> degree_ecdf(const HSet& degree_freq);

/// Three chains (stationary, sparse, dense) sharing one model. Chain k
/// uses seed chain_seed(config.seed, k); config.start is ignored.
struct Experiment {
  BetaModel model;
  std::vector<Trace> traces;  // indexed by StartMode
};

std::uint64_t chain_seed(std::uint64_t seed, StartMode start);

/// Draws beta ~ Normal(-1, 1) from `config.seed` unless `beta` is given.
/// The chains run on separate threads.
Experiment run_experiment(const ChainConfig& config, std::optional<std::vector<double>> beta = {});

void write_trace_csv(std::ostream& os, const Trace& trace);
void write_ecdf_csv(std::ostream& os, const Trace& trace);
void write_beta(std::ostream& os, const BetaModel& model);
std::vector<double> read_beta(std::istream& is);

}  // namespace hset::mcmc
