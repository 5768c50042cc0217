#include "pascalbez/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pascalbez/pascal_core.hpp"
#include "pascalbez/toeplitz_fft.hpp"

namespace pascalbez::bench {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class F>
double min_elapsed(int repetitions, F&& body) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(repetitions, 1); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

double norm2_error_vs_e1(const std::vector<double>& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = w[i] - (i == 0 ? 1.0 : 0.0);
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

std::vector<Point2> random_control_points(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_control_points: n must be >= 2");
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(n))));
  std::vector<Point2> pts(n);
  for (auto& p : pts) {
    p.x = unit_double(rng);
    p.y = unit_double(rng);
  }
  return pts;
}

int parse_grid_step(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos || text.substr(0, slash) != "1") {
    throw std::invalid_argument("grid step must look like 1/128, got '" + text + "'");
  }
  unsigned long long denom = 0;
  try {
    std::size_t used = 0;
    denom = std::stoull(text.substr(slash + 1), &used);
    if (used != text.size() - slash - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid step must look like 1/128, got '" + text + "'");
  }
  if (denom == 0 || (denom & (denom - 1)) != 0) {
    throw std::invalid_argument("grid step denominator must be a power of two, got '" + text + "'");
  }
  int k = 0;
  while ((1ull << k) < denom) ++k;
  return k;
}

EvalStrategy strategy_for(int n, const std::optional<StrategyKind>& override_kind) {
  if (!override_kind) return default_strategy(n);
  switch (*override_kind) {
    case StrategyKind::Casteljau: return EvalStrategy::casteljau();
    case StrategyKind::PascalSingle: return EvalStrategy::pascal_single();
    case StrategyKind::PascalReverseSplit: return EvalStrategy::reverse_split();
    case StrategyKind::PascalPiecewiseAffine: {
      EvalStrategy s = default_strategy(std::max(n, 42));
      return s;
    }
  }
  return default_strategy(n);
}

ErrorReport run_curve_cell(int n, const EvalStrategy& strategy, const BenchConfig& config) {
  const auto raw = random_control_points(n, config.seed);
  const ControlPolygon polygon = ControlPolygon::normalize(raw, config.normalization);
  const auto grid = dyadic_grid(config.grid_log2);

  std::optional<BalancedFactorization> fac;
  if (config.multiply_mode == MultiplyMode::FastBalanced) fac.emplace(n);

  EvalOptions opts;
  opts.multiply_mode = config.multiply_mode;
  opts.factorization = fac ? &*fac : nullptr;

  ErrorReport rep;
  rep.n = n;
  rep.strategy = std::string(to_string(strategy.kind));
  rep.multiply_mode = std::string(to_string(config.multiply_mode));
  rep.grid_size = grid.size();

  // Instrumented runs: results and operation tallies.
  EvalOptions counted = opts;
  counted.ops = &rep.pascal_ops;
  const CurveSamples pascal = evaluate_curve(polygon, strategy, grid, counted);
  EvalOptions counted_c;
  counted_c.ops = &rep.casteljau_ops;
  const CurveSamples casteljau = evaluate_curve(polygon, EvalStrategy::casteljau(), grid, counted_c);

  double dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dev = std::max({dev, std::abs(pascal.points[i].x - casteljau.points[i].x),
                    std::abs(pascal.points[i].y - casteljau.points[i].y)});
  }
  rep.inf_norm_deviation = dev / polygon.frame().scale;

  // Timed runs: uninstrumented, min over repetitions. The shared
  // factorization is setup, not part of the per-curve cost.
  volatile double sink = 0.0;
  rep.time_pascal = min_elapsed(config.repetitions, [&] {
    sink = sink + evaluate_curve(polygon, strategy, grid, opts).points.back().x;
  });
  rep.time_casteljau = min_elapsed(config.repetitions, [&] {
    sink = sink + evaluate_curve(polygon, EvalStrategy::casteljau(), grid).points.back().x;
  });
  return rep;
}

std::vector<ErrorReport> run_curve_bench(const BenchConfig& config) {
  std::vector<ErrorReport> rows;
  for (int n : config.n_list) {
    rows.push_back(run_curve_cell(n, strategy_for(n, config.strategy_override), config));
    if (!config.strategy_override && n == 32) {
      rows.push_back(run_curve_cell(n, EvalStrategy::pascal_single(), config));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ErrorReport& a, const ErrorReport& b) {
    return a.n != b.n ? a.n < b.n : a.strategy < b.strategy;
  });
  return rows;
}

std::string format_double(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

void write_curve_csv(std::ostream& os, const std::vector<ErrorReport>& rows,
                     bool include_timing) {
  os << "n,strategy,multiply_mode,inf_norm_deviation,pascal_adds,pascal_muls,pascal_divs,"
        "casteljau_adds,casteljau_muls,casteljau_divs";
  if (include_timing) os << ",time_pascal,time_casteljau";
  os << ",grid_size\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.strategy << ',' << r.multiply_mode << ','
       << format_double(r.inf_norm_deviation) << ',' << r.pascal_ops.adds << ','
       << r.pascal_ops.muls << ',' << r.pascal_ops.divs << ',' << r.casteljau_ops.adds << ','
       << r.casteljau_ops.muls << ',' << r.casteljau_ops.divs;
    if (include_timing) {
      os << ',' << format_double(r.time_pascal) << ',' << format_double(r.time_casteljau);
    }
    os << ',' << r.grid_size << '\n';
  }
}

void write_exceptional_csv(std::ostream& os, const std::vector<ExceptionalEntry>& rows) {
  os << "n,k\n";
  for (const auto& r : rows) os << r.n << ',' << r.k << '\n';
}

MultiplyAccuracyRow multiply_accuracy(int n) {
  if (n < 2) throw std::invalid_argument("multiply_accuracy: n must be >= 2");
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) z[i] = (i % 2 == 0) ? 1.0 : -1.0;

  MultiplyAccuracyRow row;
  row.n = n;
  const BalanceParameter opt = default_balance(n);
  const BalanceParameter heur = heuristic_t(n);
  row.t_heuristic = heur.t;
  row.t_optimal = opt.t;
  row.optimal_kind = opt.kind;

  row.err_t1 = norm2_error_vs_e1(fast_pascal_multiply(BalancedFactorization(fixed_t(n, 1.0)), z));
  row.err_heuristic = norm2_error_vs_e1(fast_pascal_multiply(BalancedFactorization(heur), z));
  MultiplyDiagnostics diag;
  row.err_optimal = norm2_error_vs_e1(fast_pascal_multiply(BalancedFactorization(opt), z, &diag));
  row.max_imag_residue = diag.max_imag_residue;
  row.err_exact = norm2_error_vs_e1(pascal_product(z));
  return row;
}

std::vector<MultiplyAccuracyRow> run_multiply_accuracy(const std::vector<int>& n_list) {
  std::vector<MultiplyAccuracyRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) rows.push_back(multiply_accuracy(n));
  return rows;
}

void write_multiply_accuracy_csv(std::ostream& os,
                                 const std::vector<MultiplyAccuracyRow>& rows) {
  os << "n,t_heuristic,t_optimal,optimal_kind,err_t1,err_heuristic,err_optimal,err_exact,"
        "max_imag_residue\n";
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.t_heuristic) << ',' << format_double(r.t_optimal) << ','
       << to_string(r.optimal_kind) << ',' << format_double(r.err_t1) << ','
       << format_double(r.err_heuristic) << ',' << format_double(r.err_optimal) << ','
       << format_double(r.err_exact) << ',' << format_double(r.max_imag_residue) << '\n';
  }
}

// --- SVG ----------------------------------------------------------------------------

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 640.0;
constexpr double kMargin = 24.0;
constexpr std::array<const char*, 3> kSegmentColors = {"#1f77b4", "#d62728", "#2ca02c"};

struct Viewport {
  double x0, y0, scale;

  std::string map(Point2 p) const {
    std::array<char, 64> buf{};
    const double sx = kMargin + (p.x - x0) * scale;
    const double sy = kHeight - kMargin - (p.y - y0) * scale;
    std::snprintf(buf.data(), buf.size(), "%.3f,%.3f", sx, sy);
    return buf.data();
  }
};

Viewport fit(const std::vector<Point2>& pts) {
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
  return {xmin, ymin, (std::min(kWidth, kHeight) - 2 * kMargin) / span};
}

void polyline(std::ostream& os, const Viewport& vp, const std::vector<Point2>& pts,
              const std::string& attrs) {
  os << "<polyline " << attrs << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << vp.map(pts[i]);
  os << "\"/>\n";
}

}  // namespace

std::string render_curve_svg(const ControlPolygon& polygon, const EvalStrategy& strategy,
                             const CurveSamples& samples, const CurveSamples* reference) {
  const std::vector<Point2> ctrl = polygon.original_points();
  std::vector<Point2> all = ctrl;
  all.insert(all.end(), samples.points.begin(), samples.points.end());
  const Viewport vp = fit(all);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<title>Bezier curve, n = " << polygon.size() << ", " << to_string(strategy.kind)
     << "</title>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  os << "<g id=\"control-polygon\">\n";
  polyline(os, vp, ctrl,
           "fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
  for (const auto& p : ctrl) {
    const std::string xy = vp.map(p);
    const auto comma = xy.find(',');
    os << "<circle cx=\"" << xy.substr(0, comma) << "\" cy=\"" << xy.substr(comma + 1)
       << "\" r=\"2.5\" fill=\"#555555\"/>\n";
  }
  os << "</g>\n";

  if (reference && !reference->points.empty()) {
    os << "<g id=\"reference\">\n";
    polyline(os, vp, reference->points,
             "fill=\"none\" stroke=\"#000000\" stroke-width=\"3\" stroke-opacity=\"0.25\"");
    os << "</g>\n";
  }

  // Consecutive samples served by the same segment form one path group; each
  // group after the first starts at the previous group's last point.
  os << "<g id=\"curve\">\n";
  std::size_t i = 0;
  while (i < samples.points.size()) {
    const int seg = strategy.segment_of(samples.params[i]);
    std::vector<Point2> run;
    if (i > 0) run.push_back(samples.points[i - 1]);
    while (i < samples.points.size() && strategy.segment_of(samples.params[i]) == seg) {
      run.push_back(samples.points[i++]);
    }
    os << "<g class=\"segment\" data-segment=\"" << seg << "\">\n";
    polyline(os, vp, run,
             std::string("fill=\"none\" stroke=\"") +
                 kSegmentColors[static_cast<std::size_t>(seg) % kSegmentColors.size()] +
                 "\" stroke-width=\"1.5\"");
    os << "</g>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string plot_svg(std::uint64_t seed, int n, const std::optional<StrategyKind>& strategy) {
  const ControlPolygon polygon = ControlPolygon::normalize(random_control_points(n, seed));
  const EvalStrategy strat = strategy_for(n, strategy);
  const auto grid = dyadic_grid(7);
  const CurveSamples samples = evaluate_curve(polygon, strat, grid);
  const CurveSamples reference = evaluate_curve(polygon, EvalStrategy::casteljau(), grid);
  return render_curve_svg(polygon, strat, samples, &reference);
}

}  // namespace pascalbez::bench
