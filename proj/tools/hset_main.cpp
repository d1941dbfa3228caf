// hset: set-expression calculator, scaling benchmarks and the Beta-model
// MCMC runner.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hset/bench.hpp"
#include "hset/beta_mcmc.hpp"
#include "hset/expr.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kIoError = 1;

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const auto value = std::stoull(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad grid entry '" + item + "'");
    grid.push_back(value);
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

void write_file(const std::filesystem::path& path, auto&& writer) {
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open " + path.string());
  writer(os);
  if (!os) throw std::ios_base::failure("write failed: " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hash-table sets and multisets"};
  app.require_subcommand(1);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a set expression");
  std::string expression;
  eval_cmd->add_option("expr", expression, "e.g. \"{1,2} | {2,3}\"")->required();

  auto* bench_cmd = app.add_subcommand("bench", "median timing over a size grid (CSV)");
  std::string kind = "operation", op = "union", semantic = "refer";
  std::string grid_text = "1024,8192,65536";
  hset::bench::Case bc;
  bench_cmd->add_option("--kind", kind)->check(CLI::IsMember({"inclusion", "operation"}));
  bench_cmd->add_option("--op", op)->check(
      CLI::IsMember({"intersection", "union", "sum", "difference", "symmdiff"}));
  bench_cmd->add_option("--semantic", semantic)->check(CLI::IsMember({"refer", "value"}));
  bench_cmd->add_option("--grid", grid_text, "comma-separated first-operand sizes");
  bench_cmd->add_option("--size2", bc.size2);
  bench_cmd->add_option("--batch", bc.batch, "membership queries per inclusion run");
  bench_cmd->add_option("--repeats", bc.repeats)->check(CLI::Range(3, 1000000));
  bench_cmd->add_option("--seed", bc.seed);
  bench_cmd->add_flag("--multiset", bc.multiset, "operands carry multiplicities");

  auto* mcmc_cmd = app.add_subcommand("mcmc", "three Beta-model chains (stationary/sparse/dense)");
  hset::mcmc::ChainConfig mc;
  std::string beta_file, out_dir = ".";
  mcmc_cmd->add_option("--n", mc.n)->check(CLI::Range(2, 1 << 20));
  mcmc_cmd->add_option("--iters", mc.iterations)->check(CLI::PositiveNumber);
  mcmc_cmd->add_option("--seed", mc.seed);
  mcmc_cmd->add_option("--beta-file", beta_file, "one real per line, n lines");
  mcmc_cmd->add_option("--window", mc.window)->check(CLI::PositiveNumber);
  mcmc_cmd->add_option("--snapshot-every", mc.snapshot_every)->check(CLI::PositiveNumber);
  mcmc_cmd->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*eval_cmd) {
      std::cout << hset::expr::evaluate(expression) << '\n';
    } else if (*bench_cmd) {
      bc.kind = kind == "inclusion" ? hset::bench::Kind::inclusion : hset::bench::Kind::operation;
      static const std::map<std::string, hset::OpName> ops = {
          {"intersection", hset::OpName::intersection}, {"union", hset::OpName::union_},
          {"sum", hset::OpName::sum}, {"difference", hset::OpName::difference},
          {"symmdiff", hset::OpName::symmdiff}};
      bc.op = ops.at(op);
      bc.semantic = semantic == "value" ? hset::Semantic::value : hset::Semantic::refer;
      const auto grid = parse_grid(grid_text);
      const auto rows = hset::bench::run_grid(bc, grid);
      hset::bench::write_csv(std::cout, rows);
    } else if (*mcmc_cmd) {
      std::optional<std::vector<double>> beta;
      if (!beta_file.empty()) {
        std::ifstream is(beta_file);
        if (!is) {
          std::cerr << "error: cannot open " << beta_file << '\n';
          return kIoError;
        }
        beta = hset::mcmc::read_beta(is);
      }
      const auto exp = hset::mcmc::run_experiment(mc, std::move(beta));
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      write_file(dir / "beta.txt", [&](std::ostream& os) { hset::mcmc::write_beta(os, exp.model); });
      for (auto mode : {hset::mcmc::StartMode::stationary, hset::mcmc::StartMode::sparse,
                        hset::mcmc::StartMode::dense}) {
        const auto& trace = exp.traces[static_cast<std::size_t>(mode)];
        const std::string name(hset::mcmc::to_string(mode));
        write_file(dir / (name + "_trace.csv"),
                   [&](std::ostream& os) { hset::mcmc::write_trace_csv(os, trace); });
        write_file(dir / (name + "_ecdf.csv"),
                   [&](std::ostream& os) { hset::mcmc::write_ecdf_csv(os, trace); });
      }
    }
  } catch (const hset::expr::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const hset::expr::EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return 0;
}
