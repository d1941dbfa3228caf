#include "hset/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "hset/relations.hpp"

namespace hset::bench {

std::string_view to_string(Kind k) { return k == Kind::inclusion ? "inclusion" : "operation"; }

double median(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("median of no samples");
  const std::size_t mid = samples.size() / 2;
  std::nth_element(samples.begin(), samples.begin() + mid, samples.end());
  if (samples.size() % 2) return samples[mid];
  const double upper = samples[mid];
  const double lower = *std::max_element(samples.begin(), samples.begin() + mid);
  return (lower + upper) / 2;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class T>
void do_not_optimize(const T& value) {
  asm volatile("" : : "g"(value) : "memory");
}

double elapsed_ns(Clock::time_point start, Clock::time_point stop) {
  return std::chrono::duration<double, std::nano>(stop - start).count();
}

// Shuffled dense integer range [first, first + count).
HSet make_operand(std::size_t first, std::size_t count, bool multiset, std::mt19937_64& rng) {
  std::vector<double> values(count);
  std::iota(values.begin(), values.end(), static_cast<double>(first));
  std::shuffle(values.begin(), values.end(), rng);
  HSet h = multiset ? HSet::multiset({}) : HSet();
  std::uniform_int_distribution<int> mult(1, 4);
  for (double v : values) h.insert(Element::number(v), multiset ? mult(rng) : 1.0);
  return h;
}

Row run_inclusion(const Case& c, std::mt19937_64& rng) {
  const HSet x = make_operand(0, c.size1, c.multiset, rng);
  std::uniform_int_distribution<std::size_t> pick(0, 2 * std::max<std::size_t>(c.size1, 1) - 1);

  std::vector<double> samples;
  std::size_t sink = 0;
  for (int r = 0; r < c.repeats; ++r) {
    std::vector<RawValue> queries;
    queries.reserve(c.batch);
    for (std::size_t q = 0; q < c.batch; ++q) queries.emplace_back(static_cast<double>(pick(rng)));

    const auto start = Clock::now();
    const auto hits = inclusion_batch(queries, x);
    const auto stop = Clock::now();
    sink += static_cast<std::size_t>(std::count(hits.begin(), hits.end(), true));
    samples.push_back(elapsed_ns(start, stop));
  }
  do_not_optimize(sink);
  return {c, median(std::move(samples))};
}

Row run_operation(const Case& c, std::mt19937_64& rng) {
  const HSet base1 = make_operand(0, c.size1, c.multiset, rng);
  const HSet h2 = make_operand(c.size1, c.size2, c.multiset, rng);

  std::vector<double> samples;
  for (int r = 0; r < c.repeats; ++r) {
    HSet h1 = base1.clone();
    const auto start = Clock::now();
    HSet result = apply(c.op, h1, {&h2, 1}, c.semantic);
    const auto stop = Clock::now();
    samples.push_back(elapsed_ns(start, stop));
  }
  return {c, median(std::move(samples))};
}

}  // namespace

Row run(const Case& c) {
  if (c.repeats < 3) throw std::invalid_argument("bench: repeats must be >= 3");
  std::mt19937_64 rng(c.seed);
  return c.kind == Kind::inclusion ? run_inclusion(c, rng) : run_operation(c, rng);
}

std::vector<Row> run_grid(const Case& base, std::span<const std::size_t> size1_grid) {
  std::vector<Row> rows;
  rows.reserve(size1_grid.size());
  for (std::size_t s : size1_grid) {
    Case c = base;
    c.size1 = s;
    rows.push_back(run(c));
  }
  return rows;
}

void write_csv(std::ostream& os, std::span<const Row> rows, bool header) {
  if (header) os << "kind,op,semantic,size1,size2,batch,median_ns\n";
  for (const auto& row : rows) {
    const auto& c = row.c;
    os << to_string(c.kind) << ',' << (c.kind == Kind::inclusion ? "-" : to_string(c.op)) << ','
       << (c.semantic == Semantic::refer ? "refer" : "value") << ',' << c.size1 << ','
       << c.size2 << ',' << c.batch << ',' << static_cast<long long>(row.median_ns) << '\n';
  }
}

}  // namespace hset::bench
