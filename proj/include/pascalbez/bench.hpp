#pragma once

// Benchmark harness behind the `pascalbez` CLI: exceptional-set tables,
// Pascal multiply accuracy, and Pascal-vs-Casteljau curve comparisons with
// CSV and SVG output.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pascalbez/balancing.hpp"
#include "pascalbez/bezier_eval.hpp"

namespace pascalbez::bench {

/// Control points with coordinates uniform in [0, 1). The generator is
/// std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(n)); doubles take
/// the top 53 bits of each draw, so the stream is identical on every platform.
std::vector<Point2> random_control_points(int n, std::uint64_t seed);

/// Parses "1/2^k" written out, e.g. "1/128"; returns k.
int parse_grid_step(const std::string& text);

struct BenchConfig {
  std::uint64_t seed = 1;
  std::vector<int> n_list;
  int grid_log2 = 7;  // step 1/128
  std::optional<StrategyKind> strategy_override;
  MultiplyMode multiply_mode = MultiplyMode::ExactBidiagonal;
  NormalizationMode normalization = NormalizationMode::MinMax;
  std::filesystem::path output_dir = ".";
  int repetitions = 10;
};

struct ErrorReport {
  int n = 0;
  std::string strategy;
  std::string multiply_mode;
  double inf_norm_deviation = 0.0;  // normalized frame
  OpCount pascal_ops;               // whole run: coefficient builds + all points
  OpCount casteljau_ops;            // whole run
  double time_pascal = 0.0;         // seconds, min over repetitions
  double time_casteljau = 0.0;
  std::size_t grid_size = 0;
};

/// The strategy a run uses for n: the override kind (with default schedules
/// for piecewise-affine) or default_strategy(n).
EvalStrategy strategy_for(int n, const std::optional<StrategyKind>& override_kind);

/// One (n, strategy) cell on a fresh seeded polygon.
ErrorReport run_curve_cell(int n, const EvalStrategy& strategy, const BenchConfig& config);

/// All cells of the config, sorted by (n, strategy name). Without an override,
/// n = 32 is reported under both pascal-single and pascal-reverse-split.
std::vector<ErrorReport> run_curve_bench(const BenchConfig& config);

void write_curve_csv(std::ostream& os, const std::vector<ErrorReport>& rows,
                     bool include_timing = true);

void write_exceptional_csv(std::ostream& os, const std::vector<ExceptionalEntry>& rows);

struct MultiplyAccuracyRow {
  int n = 0;
  double t_heuristic = 0.0;
  double t_optimal = 0.0;
  BalanceKind optimal_kind = BalanceKind::Fixed;
  double err_t1 = 0.0;     // balanced FFT multiply at t = 1
  double err_heuristic = 0.0;   // at t = (n-1)/e
  double err_optimal = 0.0;
  double err_exact = 0.0;  // bidiagonal sweeps
  double max_imag_residue = 0.0;  // optimal-t run
};

/// ||P z - e_1||_2 for z = (1, -1, 1, ...), by each multiply method.
MultiplyAccuracyRow multiply_accuracy(int n);
std::vector<MultiplyAccuracyRow> run_multiply_accuracy(const std::vector<int>& n_list);
void write_multiply_accuracy_csv(std::ostream& os, const std::vector<MultiplyAccuracyRow>& rows);

/// Standalone SVG: control polygon, the sampled curve colored by evaluation
/// segment, and an optional reference curve underneath. Byte-stable.
std::string render_curve_svg(const ControlPolygon& polygon, const EvalStrategy& strategy,
                             const CurveSamples& samples,
                             const CurveSamples* reference = nullptr);

/// Seeded polygon of size n, evaluated on the 1/128 grid with `strategy`
/// (default_strategy(n) if empty), rendered over a Casteljau reference.
std::string plot_svg(std::uint64_t seed, int n,
                     const std::optional<StrategyKind>& strategy = std::nullopt);

/// 17 significant digits, the CSV float format.
std::string format_double(double v);

}  // namespace pascalbez::bench
