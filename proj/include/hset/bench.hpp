#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hset/operations.hpp"

namespace hset::bench {

enum class Kind { inclusion, operation };

std::string_view to_string(Kind k);

/// One point of a scaling study.
///
/// inclusion: `batch` membership queries against a set of `size1` integers
/// (about half of them hit). operation: `op` between a first operand of
/// `size1` elements and a disjoint second operand of `size2` elements; the
/// first operand is rebuilt before every repeat, outside the timed region.
struct Case {
  Kind kind = Kind::operation;
  OpName op = OpName::union_;
  Semantic semantic = Semantic::refer;
  std::size_t size1 = 1024;
  std::size_t size2 = 16;
  std::size_t batch = 100;
  int repeats = 15;
  bool multiset = false;  ///< operands carry multiplicities in 1..4
  std::uint64_t seed = 1;
};

struct Row {
  Case c;
  double median_ns;
};

/// Median wall time over c.repeats runs. Throws if repeats < 3.
Row run(const Case& c);

/// Runs `base` once per entry of `size1_grid`, in order.
std::vector<Row> run_grid(const Case& base, std::span<const std::size_t> size1_grid);

double median(std::vector<double> samples);

/// Header: kind,op,semantic,size1,size2,batch,median_ns
void write_csv(std::ostream& os, std::span<const Row> rows, bool header = true);

}  // namespace hset::bench
