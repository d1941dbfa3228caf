#include "hset/beta_mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hset/operations.hpp"
#include "hset/relations.hpp"

namespace hset::mcmc {

BetaModel::BetaModel(int n, std::vector<double> beta) : n_(n), beta_(std::move(beta)) {
  if (n < 2) throw std::invalid_argument("beta model: need at least 2 vertices");
  if (beta_.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("beta model: expected " + std::to_string(n) + " parameters, got " +
                                std::to_string(beta_.size()));
  }
  for (double b : beta_) {
    if (!std::isfinite(b)) throw std::invalid_argument("beta model: non-finite parameter");
  }
}

BetaModel BetaModel::sample(int n, Rng& rng, double mean) {
  std::normal_distribution<double> normal(mean, 1.0);
  std::vector<double> beta(static_cast<std::size_t>(std::max(n, 0)));
  for (auto& b : beta) b = normal(rng);
  return BetaModel(n, std::move(beta));
}

double BetaModel::tie_probability(int i, int j) const {
  const double s = beta_[i - 1] + beta_[j - 1];
  return 1.0 / (1.0 + std::exp(-s));
}

double BetaModel::log_partition() const {
  double psi = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) psi += std::log1p(std::exp(beta_[i] + beta_[j]));
  }
  return psi;
}

double BetaModel::log_probability(std::span<const int> degrees) const {
  double s = 0;
  for (int i = 0; i < n_; ++i) s += degrees[i] * beta_[i];
  return s - log_partition();
}

EdgeId edge_id(int i, int j, int n) {
  if (!(1 <= i && i < j && j <= n)) {
    throw std::out_of_range("edge_id: need 1 <= i < j <= n, got (" + std::to_string(i) + "," +
                            std::to_string(j) + ") with n=" + std::to_string(n));
  }
  return static_cast<EdgeId>(i - 1) * (2 * n - i) / 2 + (j - i);
}

std::pair<int, int> edge_pair(EdgeId id, int n) {
  const EdgeId total = static_cast<EdgeId>(n) * (n - 1) / 2;
  if (n < 2 || id < 1 || id > total) {
    throw std::out_of_range("edge_pair: id " + std::to_string(id) + " out of range for n=" +
                            std::to_string(n));
  }
  int i = 1;
  EdgeId offset = id;
  while (offset > n - i) {
    offset -= n - i;
    ++i;
  }
  return {i, i + static_cast<int>(offset)};
}

std::string_view to_string(StartMode mode) {
  switch (mode) {
    case StartMode::stationary: return "stationary";
    case StartMode::sparse: return "sparse";
    case StartMode::dense: return "dense";
  }
  return "?";
}

namespace {

std::string id_key(EdgeId id) { return format_number(static_cast<double>(id)); }

HSet frequencies_of(const std::vector<int>& degrees) {
  std::map<int, double> counts;
  for (int d : degrees) counts[d] += 1.0;
  HSet z = HSet::multiset({});
  for (auto [d, c] : counts) z.insert_key(format_number(d), c);
  return z;
}

// Touched vertex -> (old degree, new degree).
using DegreeChanges = std::map<int, std::pair<int, int>>;

DegreeChanges degree_changes(const BetaModel& model, const ChainState& state,
                             std::span<const EdgeId> flips) {
  DegreeChanges changes;
  for (EdgeId id : flips) {
    auto [i, j] = edge_pair(id, model.n());
    const int delta = state.edges.contains(id_key(id)) ? -1 : 1;
    for (int v : {i, j}) {
      auto [it, inserted] =
          changes.try_emplace(v, state.degrees[v - 1], state.degrees[v - 1]);
      it->second.second += delta;
    }
  }
  return changes;
}

}  // namespace

HSet ChainState::recompute_degree_freq(int n) const {
  std::vector<int> d(static_cast<std::size_t>(n), 0);
  for (const auto& [key, m] : edges.table()) {
    auto [i, j] = edge_pair(static_cast<EdgeId>(decode(key).value()), n);
    ++d[i - 1];
    ++d[j - 1];
  }
  return frequencies_of(d);
}

std::string ChainState::check(int n) const {
  if (degrees.size() != static_cast<std::size_t>(n)) return "degree cache has wrong length";
  long long total = 0;
  for (int d : degrees) total += d;
  if (total != 2 * static_cast<long long>(edges.size_support())) {
    return "sum of degrees != 2 |edges|";
  }
  if (edges.is_generalized()) return "edge set is a multiset";
  if (!degree_freq.is_generalized()) return "degree frequencies are not a multiset";
  if (degree_freq.cardinality() != n) return "degree frequencies do not sum to n";
  if (!equal(degree_freq, frequencies_of(degrees))) return "degree frequencies out of sync";
  return {};
}

ChainState sample_start(const BetaModel& model, StartMode start, Rng& rng) {
  const int n = model.n();
  ChainState s;
  s.degrees.assign(static_cast<std::size_t>(n), 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      bool present = false;
      switch (start) {
        case StartMode::stationary: present = unif(rng) < model.tie_probability(i, j); break;
        case StartMode::sparse: present = false; break;
        case StartMode::dense: present = true; break;
      }
      if (present) {
        s.edges.insert_key(id_key(edge_id(i, j, n)));
        ++s.degrees[i - 1];
        ++s.degrees[j - 1];
      }
    }
  }
  s.degree_freq = frequencies_of(s.degrees);
  return s;
}

double acceptance_prob(const BetaModel& model, const ChainState& state,
                       std::span<const EdgeId> flips) {
  double exponent = 0;
  for (const auto& [v, d] : degree_changes(model, state, flips)) {
    exponent += (d.second - d.first) * model.beta()[v - 1];
  }
  return std::min(std::exp(exponent), 1.0);
}

void apply_flips(const BetaModel& model, ChainState& state, std::span<const EdgeId> flips) {
  const auto changes = degree_changes(model, state, flips);

  HSet flip_set;
  for (EdgeId id : flips) flip_set.insert_key(id_key(id));

  std::map<int, double> old_counts, new_counts;
  for (const auto& [v, d] : changes) {
    old_counts[d.first] += 1.0;
    new_counts[d.second] += 1.0;
  }
  HSet removed = HSet::multiset({});
  for (auto [d, m] : old_counts) removed.insert_key(format_number(d), m);
  HSet added = HSet::multiset({});
  for (auto [d, m] : new_counts) added.insert_key(format_number(d), m);

  symmdiff(state.edges, flip_set, Semantic::refer);
  difference(state.degree_freq, removed, Semantic::refer);
  setsum(state.degree_freq, added, Semantic::refer);

  for (const auto& [v, d] : changes) state.degrees[v - 1] = d.second;
}

bool step(const BetaModel& model, ChainState& state, Rng& rng) {
  std::uniform_int_distribution<EdgeId> pick(1, model.tie_count());
  const EdgeId flip[] = {pick(rng)};
  const double a = acceptance_prob(model, state, flip);
  bool accept = a >= 1.0;
  if (!accept) accept = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < a;
  if (accept) apply_flips(model, state, flip);
  ++state.t;
  return accept;
}

std::vector<double> moving_average(const std::vector<bool>& flags, std::uint64_t window) {
  if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  const std::size_t n = flags.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + (flags[k] ? 1.0 : 0.0);

  const std::uint64_t before = (window - 1) / 2;
  const std::uint64_t after = window / 2;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k >= before ? k - before : 0;
    const std::size_t hi = std::min<std::size_t>(n - 1, k + after);
    out[k] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<EcdfPoint> degree_ecdf(const HSet& degree_freq) {
  std::vector<std::pair<double, double>> counts;
  for (const auto& [key, m] : degree_freq.table()) counts.emplace_back(decode(key).value(), m.numeric());
  std::sort(counts.begin(), counts.end());
  const double total = degree_freq.cardinality();
  std::vector<EcdfPoint> out;
  double running = 0;
  for (auto [d, c] : counts) {
    running += c;
    out.push_back({d, running / total});
  }
  return out;
}

Trace run_chain(const ChainConfig& config, const BetaModel& model, const Observer& observer) {
  if (config.iterations < 1) throw std::invalid_argument("run_chain: iterations must be >= 1");
  if (config.window < 1) throw std::invalid_argument("run_chain: window must be >= 1");
  if (config.snapshot_every < 1) throw std::invalid_argument("run_chain: snapshot_every must be >= 1");
  if (config.n != model.n()) throw std::invalid_argument("run_chain: config.n != model.n()");

  Rng rng(config.seed);
  ChainState state = sample_start(model, config.start, rng);

  Trace trace;
  trace.accepted.reserve(config.iterations);
  trace.ties.reserve(config.iterations);
  for (std::uint64_t t = 1; t <= config.iterations; ++t) {
    trace.accepted.push_back(step(model, state, rng));
    trace.ties.push_back(static_cast<std::int64_t>(state.edges.size_support()));
    if ((t - 1) % config.snapshot_every == 0) {
      trace.ecdf.push_back({t, degree_ecdf(state.degree_freq)});
    }
    if (observer) observer(state);
  }
  trace.movavg = moving_average(trace.accepted, config.window);
  return trace;
}

std::uint64_t chain_seed(std::uint64_t seed, StartMode start) {
  // splitmix64 finalizer over (seed, chain index)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(start) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Experiment run_experiment(const ChainConfig& config, std::optional<std::vector<double>> beta) {
  auto model = [&] {
    if (beta) return BetaModel(config.n, std::move(*beta));
    Rng rng(config.seed);
    return BetaModel::sample(config.n, rng);
  }();

  constexpr StartMode modes[] = {StartMode::stationary, StartMode::sparse, StartMode::dense};
  std::vector<Trace> traces(std::size(modes));
  std::vector<std::exception_ptr> errors(std::size(modes));
  {
    std::vector<std::jthread> workers;
    for (std::size_t k = 0; k < std::size(modes); ++k) {
      workers.emplace_back([&, k] {
        try {
          ChainConfig c = config;
          c.start = modes[k];
          c.seed = chain_seed(config.seed, modes[k]);
          traces[k] = run_chain(c, model);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return {std::move(model), std::move(traces)};
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << "iter,accepted,movavg,ties\n";
  for (std::size_t k = 0; k < trace.accepted.size(); ++k) {
    os << (k + 1) << ',' << (trace.accepted[k] ? 1 : 0) << ',' << format_number(trace.movavg[k])
       << ',' << trace.ties[k] << '\n';
  }
}

void write_ecdf_csv(std::ostream& os, const Trace& trace) {
  os << "snapshot_t,degree,cum_fraction\n";
  for (const auto& snap : trace.ecdf) {
    for (const auto& p : snap.points) {
      os << snap.t << ',' << format_number(p.degree) << ',' << format_number(p.cum_fraction)
         << '\n';
    }
  }
}

void write_beta(std::ostream& os, const BetaModel& model) {
  for (double b : model.beta()) os << format_number(b) << '\n';
}

std::vector<double> read_beta(std::istream& is) {
  std::vector<double> beta;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double b;
    std::string extra;
    if (!(ls >> b) || (ls >> extra)) {
      throw std::invalid_argument("beta file line " + std::to_string(lineno) +
                                  ": expected one real number");
    }
    beta.push_back(b);
  }
  return beta;
}

}  // namespace hset::mcmc
