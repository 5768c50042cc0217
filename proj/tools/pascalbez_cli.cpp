// pascalbez: exceptional-set search, Pascal multiply accuracy, curve
// benchmarks against de Casteljau, and SVG plots.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pascalbez/balancing.hpp"
#include "pascalbez/bench.hpp"
#include "pascalbez/bezier_eval.hpp"

namespace fs = std::filesystem;
using namespace pascalbez;

namespace {

constexpr int kExitGate = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("PASCALBEZ_OUT_DIR"); env && *env) return env;
  return ".";
}

std::ofstream open_for_write(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

void finish(std::ofstream& os, const fs::path& path) {
  os.close();
  if (!os) throw IoError("write failed: " + path.string());
  std::cout << "wrote " << path.string() << '\n';
}

int cmd_exceptional(int n_max, const fs::path& out_dir) {
  if (n_max < 4) {
    std::cerr << "exceptional: --n-max must be >= 4\n";
    return 1;
  }
  const auto rows = enumerate_exceptional(n_max);
  std::printf("%8s %8s\n", "n", "k");
  for (const auto& r : rows) std::printf("%8d %8lld\n", r.n, static_cast<long long>(r.k));
  if (rows.empty()) std::printf("(no exceptional n in 4..%d)\n", n_max);
  if (const auto k3 = is_exceptional(3)) {
    std::printf("note: n = 3 also satisfies the inequalities with k = %lld; it is not listed "
                "(t = 1 is used for it)\n",
                static_cast<long long>(*k3));
  }
  const fs::path path = out_dir / "exceptional.csv";
  auto os = open_for_write(path);
  bench::write_exceptional_csv(os, rows);
  finish(os, path);
  return 0;
}

int cmd_multiply_accuracy(const std::vector<int>& n_list, const fs::path& out_dir) {
  const auto rows = bench::run_multiply_accuracy(n_list);
  std::printf("%5s %12s %12s %12s %12s %10s\n", "n", "t=1", "t=(n-1)/e", "t=optimal", "exact",
              "t_opt");
  for (const auto& r : rows) {
    std::printf("%5d %12.4e %12.4e %12.4e %12.4e %10.6f\n", r.n, r.err_t1, r.err_heuristic,
                r.err_optimal, r.err_exact, r.t_optimal);
  }
  const fs::path path = out_dir / "multiply_accuracy.csv";
  auto os = open_for_write(path);
  bench::write_multiply_accuracy_csv(os, rows);
  finish(os, path);
  return 0;
}

int cmd_curve_bench(const bench::BenchConfig& cfg, bool write_svg,
                    std::optional<double> max_deviation) {
  for (int n : cfg.n_list) {
    if (!cfg.strategy_override) {
      if (auto w = default_strategy_warning(n)) std::cerr << "warning: " << *w << '\n';
    }
  }
  const auto rows = bench::run_curve_bench(cfg);
  std::printf("%5s %-26s %12s %10s %10s %11s %11s\n", "n", "strategy", "deviation", "ops_P",
              "ops_C", "time_P", "time_C");
  bool gate_ok = true;
  for (const auto& r : rows) {
    std::printf("%5d %-26s %12.4e %10llu %10llu %11.3e %11.3e\n", r.n, r.strategy.c_str(),
                r.inf_norm_deviation, static_cast<unsigned long long>(r.pascal_ops.total()),
                static_cast<unsigned long long>(r.casteljau_ops.total()), r.time_pascal,
                r.time_casteljau);
    if (max_deviation && !(r.inf_norm_deviation <= *max_deviation)) gate_ok = false;
  }
  const fs::path path = cfg.output_dir / "curve_bench.csv";
  auto os = open_for_write(path);
  bench::write_curve_csv(os, rows);
  finish(os, path);

  if (write_svg) {
    for (int n : cfg.n_list) {
      const fs::path svg = cfg.output_dir / ("curve_n" + std::to_string(n) + ".svg");
      auto f = open_for_write(svg);
      f << bench::plot_svg(cfg.seed, n, cfg.strategy_override);
      finish(f, svg);
    }
  }
  if (!gate_ok) {
    std::cerr << "curve-bench: deviation above --max-deviation " << *max_deviation << '\n';
    return kExitGate;
  }
  return 0;
}

int cmd_plot(std::uint64_t seed, int n, std::optional<StrategyKind> strategy,
             const fs::path& out) {
  auto os = open_for_write(out);
  os << bench::plot_svg(seed, n, strategy);
  finish(os, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bezier curves by Pascal matrix methods: balancing, fast multiply, benchmarks"};
  app.require_subcommand(1);

  const std::map<std::string, StrategyKind> strategy_names{
      {"casteljau", StrategyKind::Casteljau},
      {"single", StrategyKind::PascalSingle},
      {"reverse-split", StrategyKind::PascalReverseSplit},
      {"piecewise-affine", StrategyKind::PascalPiecewiseAffine},
  };
  const std::map<std::string, MultiplyMode> mode_names{
      {"exact", MultiplyMode::ExactBidiagonal}, {"fast", MultiplyMode::FastBalanced}};
  const std::map<std::string, NormalizationMode> norm_names{
      {"minmax", NormalizationMode::MinMax}, {"matrixnorm", NormalizationMode::MatrixNorm}};

  int n_max = 10000;
  std::string out_flag;
  auto* exc = app.add_subcommand("exceptional", "List n with no interior balancing optimum");
  exc->add_option("--n-max", n_max, "Largest n to search")->capture_default_str();
  exc->add_option("--out", out_flag, "Output directory (default $PASCALBEZ_OUT_DIR or .)");

  std::vector<int> n_list;
  auto* acc = app.add_subcommand("multiply-accuracy", "Errors of P z vs e_1 for z = (1,-1,...)");
  acc->add_option("--n-list", n_list, "Sizes, comma separated")->delimiter(',')->required();
  acc->add_option("--out", out_flag, "Output directory");

  bench::BenchConfig cfg;
  std::string strategy_name, mode_name = "exact", norm_name = "minmax";
  std::string grid_step = "1/128";
  bool write_svg = false;
  std::optional<double> max_dev;
  auto* cb = app.add_subcommand("curve-bench", "Pascal strategies vs de Casteljau");
  cb->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  cb->add_option("--n-list", cfg.n_list, "Sizes, comma separated")->delimiter(',')->required();
  cb->add_option("--strategy", strategy_name, "Override the per-n default strategy")
      ->check(CLI::IsMember(strategy_names));
  cb->add_option("--multiply-mode", mode_name, "Coefficient build: exact|fast")
      ->capture_default_str()
      ->check(CLI::IsMember(mode_names));
  cb->add_option("--normalization", norm_name, "minmax|matrixnorm")
      ->capture_default_str()
      ->check(CLI::IsMember(norm_names));
  cb->add_option("--grid-step", grid_step, "Parameter step 1/2^k")->capture_default_str();
  cb->add_option("--repetitions", cfg.repetitions, "Timing repetitions (min is kept)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cb->add_option("--out", out_flag, "Output directory");
  cb->add_flag("--svg", write_svg, "Also write one SVG per n");
  cb->add_option("--max-deviation", max_dev, "Exit nonzero if any deviation exceeds this");

  std::uint64_t plot_seed = 1;
  int plot_n = 8;
  std::string plot_out;
  std::string plot_strategy_name;
  auto* plot = app.add_subcommand("plot", "Render one seeded curve to SVG");
  plot->add_option("--seed", plot_seed, "PRNG seed")->capture_default_str();
  plot->add_option("--n", plot_n, "Number of control points")->required()->check(CLI::Range(2, 4096));
  plot->add_option("--out", plot_out, "Output SVG file")->required();
  plot->add_option("--strategy", plot_strategy_name, "Override the default strategy")
      ->check(CLI::IsMember(strategy_names));

  CLI11_PARSE(app, argc, argv);

  const auto pick_strategy = [&](const std::string& name) -> std::optional<StrategyKind> {
    if (name.empty()) return std::nullopt;
    return strategy_names.at(name);
  };

  try {
    if (*exc) return cmd_exceptional(n_max, resolve_out_dir(out_flag));
    if (*acc) return cmd_multiply_accuracy(n_list, resolve_out_dir(out_flag));
    if (*cb) {
      cfg.strategy_override = pick_strategy(strategy_name);
      cfg.multiply_mode = mode_names.at(mode_name);
      cfg.normalization = norm_names.at(norm_name);
      cfg.grid_log2 = bench::parse_grid_step(grid_step);
      cfg.output_dir = resolve_out_dir(out_flag);
      return cmd_curve_bench(cfg, write_svg, max_dev);
    }
    if (*plot) return cmd_plot(plot_seed, plot_n, pick_strategy(plot_strategy_name), plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
