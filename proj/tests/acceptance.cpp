// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance               run all criteria
//   acceptance --criterion N run one

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pascalbez/balancing.hpp"
#include "pascalbez/bench.hpp"
#include "pascalbez/bezier_eval.hpp"
#include "pascalbez/pascal_core.hpp"
#include "pascalbez/toeplitz_fft.hpp"

using namespace pascalbez;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  fail: " << what << '\n';
    }
  }
};

double err_vs_e1(std::span<const double> r) {
  double s = (r[0] - 1) * (r[0] - 1);
  for (std::size_t i = 1; i < r.size(); ++i) s += r[i] * r[i];
  return std::sqrt(s);
}

std::vector<double> alternating(int n) {
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) z[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return z;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// ---------------------------------------------------------------------------

void exceptional_set(Outcome& o) {
  const std::vector<ExceptionalEntry> table{{15, 6},      {39, 15},     {74, 28},
                                            {527, 195},   {3171, 1168}, {5908, 2175},
                                            {7036, 2590}, {7534, 3194}, {7537, 3401}};
  const auto rows = enumerate_exceptional(10000);
  o.detail << "  found " << rows.size() << " rows:";
  for (const auto& r : rows) o.detail << " (" << r.n << "," << r.k << ")";
  o.detail << '\n';
  o.require(rows == table, "output differs from the 9 published (n, k) pairs");
}

void exact_multiply(Outcome& o) {
  for (int n : {4, 8, 15, 16, 32, 39, 64}) {
    const double e = err_vs_e1(pascal_product(alternating(n)));
    o.require(e == 0.0, "n = " + std::to_string(n) + " error " + sci(e));
  }
}

void fast_multiply(Outcome& o) {
  const std::vector<std::pair<int, double>> limits{
      {8, 1e-12}, {16, 1e-10}, {15, 1e-9}, {32, 1e-5}, {39, 1e-3}};
  for (auto [n, lim] : limits) {
    const double e = err_vs_e1(fast_pascal_multiply(BalancedFactorization(n), alternating(n)));
    o.detail << "  n = " << n << " optimal t error " << sci(e) << " (limit " << sci(lim) << ")\n";
    o.require(e <= lim, "n = " + std::to_string(n));
  }
  const double e1 =
      err_vs_e1(fast_pascal_multiply(BalancedFactorization(fixed_t(32, 1.0)), alternating(32)));
  o.detail << "  n = 32 t = 1 error " << sci(e1) << " (must be >= 1e10)\n";
  o.require(e1 >= 1e10, "unbalanced n = 32 did not blow up");
}

void optimality(Outcome& o) {
  for (int n = 4; n <= 64; ++n) {
    const auto p = optimal_t(n);
    const double s = spread(n, p.t);
    o.require(s <= spread(n, heuristic_t(n).t), "n = " + std::to_string(n) + " worse than (n-1)/e");
    o.require(s <= spread(n, 1.0), "n = " + std::to_string(n) + " worse than t = 1");
    if (p.kind == BalanceKind::InteriorOptimum) {
      const double f1 = spread_f1(p.t), f2 = spread_f2(n, p.t);
      o.require(std::abs(f1 - f2) / f1 <= 1e-10, "n = " + std::to_string(n) + " f1 != f2");
    }
  }
}

struct CurveLimit {
  int n;
  StrategyKind kind;
  double limit;
};

const std::vector<CurveLimit>& curve_limits() {
  static const std::vector<CurveLimit> limits{
      {4, StrategyKind::PascalSingle, 1e-12},
      {8, StrategyKind::PascalSingle, 1e-11},
      {16, StrategyKind::PascalSingle, 1e-8},
      {32, StrategyKind::PascalReverseSplit, 1e-5},
      {39, StrategyKind::PascalReverseSplit, 1e-2},
      {41, StrategyKind::PascalReverseSplit, 1e-1},
      {42, StrategyKind::PascalPiecewiseAffine, 1e-4},
      {48, StrategyKind::PascalPiecewiseAffine, 1e-4},
      {59, StrategyKind::PascalPiecewiseAffine, 1e-2},
      {64, StrategyKind::PascalPiecewiseAffine, 1e-1},
  };
  return limits;
}

EvalStrategy strategy_of(const CurveLimit& c) {
  return c.kind == StrategyKind::PascalPiecewiseAffine ? default_strategy(c.n)
                                                       : bench::strategy_for(c.n, c.kind);
}

void curve_agreement(Outcome& o) {
  constexpr int kSeeds = 20;
  for (const auto& c : curve_limits()) {
    const EvalStrategy st = strategy_of(c);
    bench::BenchConfig cfg;
    cfg.repetitions = 1;
    std::vector<double> devs;
    for (int seed = 1; seed <= kSeeds; ++seed) {
      cfg.seed = static_cast<std::uint64_t>(seed);
      devs.push_back(bench::run_curve_cell(c.n, st, cfg).inf_norm_deviation);
    }
    std::vector<double> sorted = devs;
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * (sorted[kSeeds / 2 - 1] + sorted[kSeeds / 2]);
    const double worst = sorted.back();
    o.detail << "  n = " << c.n << " " << to_string(c.kind) << " median " << sci(median)
             << " max " << sci(worst) << " (limit " << sci(c.limit) << ")\n";
    o.require(median <= c.limit, "n = " + std::to_string(c.n) + " median above limit");
    o.require(worst <= 10 * c.limit, "n = " + std::to_string(c.n) + " a seed exceeds 10x limit");
  }
}

void cost_accounting(Outcome& o) {
  for (int n = 2; n <= 64; ++n) {
    std::vector<double> v(n, 0.5);
    OpCount ops;
    bernstein_product_inplace(v, 0.3, ops);
    const std::uint64_t nn = n;
    o.require(ops.adds == nn * (nn - 1) / 2 && ops.muls == nn * (nn - 1) && ops.divs == 0,
              "Casteljau count at n = " + std::to_string(n));
  }
  bench::BenchConfig cfg;
  cfg.seed = 1;
  cfg.repetitions = 3;
  for (int n = 8; n <= 64; ++n) {
    const auto r = bench::run_curve_cell(n, default_strategy(n), cfg);
    o.require(r.pascal_ops.total() < r.casteljau_ops.total(),
              "n = " + std::to_string(n) + " Pascal ops not below Casteljau");
    if (n % 8 == 0) {
      o.detail << "  n = " << n << " ops " << r.pascal_ops.total() << " vs "
               << r.casteljau_ops.total() << ", time " << sci(r.time_pascal) << " vs "
               << sci(r.time_casteljau) << " s\n";
    }
  }
}

// Worst value of one sub-property against its limit, reported on one line.
struct Tally {
  std::string name;
  double worst = 0.0;
  std::string where;
  void see(double v, const std::string& at) {
    if (!(v <= worst)) worst = v, where = at;
  }
  void report(Outcome& o, double limit) const {
    o.detail << "  " << name << ": worst " << sci(worst);
    if (!where.empty()) o.detail << " at " << where;
    o.detail << " (limit " << sci(limit) << ")\n";
    o.require(worst <= limit, name);
  }
};

void properties(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> small(-20, 20);
  bool inverse_ok = true;
  for (int n = 1; n <= 16; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> v(n);
      for (auto& x : v) x = small(rng);
      inverse_ok = inverse_ok && pascal_inverse_action(pascal_product(v)) == v;
    }
  }
  o.detail << "  inverse composition n <= 16: " << (inverse_ok ? "exact" : "mismatch") << '\n';
  o.require(inverse_ok, "inverse composition");

  // Endpoints: de Casteljau at every n, each Pascal strategy at the sizes it serves.
  Tally ends{"endpoint interpolation"};
  const auto endpoint_error = [](int n, const EvalStrategy& st) {
    const auto p = ControlPolygon::normalize(bench::random_control_points(n, 31));
    const auto c = evaluate_curve(p, st, std::vector<double>{0.0, 1.0});
    const Point2 a = p.to_original(p.point(0)), b = p.to_original(p.point(p.size() - 1));
    return std::max({std::abs(c.points[0].x - a.x), std::abs(c.points[0].y - a.y),
                     std::abs(c.points[1].x - b.x), std::abs(c.points[1].y - b.y)}) /
           p.frame().scale;
  };
  for (int n = 2; n <= 64; ++n) ends.see(endpoint_error(n, EvalStrategy::casteljau()), "casteljau n = " + std::to_string(n));
  for (const auto& c : curve_limits()) {
    ends.see(endpoint_error(c.n, strategy_of(c)),
             std::string(to_string(c.kind)) + " n = " + std::to_string(c.n));
  }
  ends.report(o, 1e-12);

  const auto grid = dyadic_grid(7);
  for (const auto& c : curve_limits()) {
    const auto p = ControlPolygon::normalize(bench::random_control_points(c.n, 1));
    const EvalStrategy st = strategy_of(c);
    const auto fwd = evaluate_curve(p, st, grid);
    auto back = evaluate_curve(reverse(p), st, grid);
    std::reverse(back.points.begin(), back.points.end());
    double dev = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      dev = std::max({dev, std::abs(fwd.points[i].x - back.points[i].x),
                      std::abs(fwd.points[i].y - back.points[i].y)});
    }
    dev /= p.frame().scale;
    o.detail << "  reversal symmetry n = " << c.n << ": " << sci(dev) << " (limit " << sci(c.limit)
             << ")\n";
    o.require(dev <= c.limit, "reversal symmetry n = " + std::to_string(c.n));
  }

  const std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs{
      {1, 1}, {3, 7}, {1023, 3}, {32767, 32767}, {32767, 1023}};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Tally cascade{"affine cascade (ulps)"};
  for (auto [a, b] : pairs) {
    std::vector<double> v(500);
    for (auto& x : v) x = unit(rng);
    const auto twice = affine_forward(affine_forward(v, a), b);
    const auto once = affine_forward(v, compose_affine(a, b));
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double ulp = std::nextafter(std::abs(once[i]), INFINITY) - std::abs(once[i]);
      cascade.see(std::abs(twice[i] - once[i]) / ulp,
                  "m = " + std::to_string(a) + ", " + std::to_string(b));
    }
  }
  cascade.report(o, 1.0);

  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  Tally fft{"FFT round trip"};
  for (std::size_t m = 1; m <= (1u << 14); m *= 2) {
    std::vector<Complex> v(m);
    for (auto& x : v) x = {sym(rng), sym(rng)};
    const auto back = dft(dft(v, false), true);
    double e = 0;
    for (std::size_t i = 0; i < m; ++i) e = std::max(e, std::abs(back[i] - v[i]));
    fft.see(e, "m = " + std::to_string(m));
  }
  fft.report(o, 1e-13);

  // Relative inf-norm error against the dense product, in units of 1e-10 * spread.
  Tally toeplitz{"Toeplitz vs dense, error / (1e-10 spread)"};
  for (int n = 2; n <= 64; ++n) {
    const double t = default_balance(n).t;
    const ToeplitzSpectrum spec(n, t);
    const double kappa = n >= 3 ? spread(n, t) : 1.0;
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> v(n);
      for (auto& x : v) x = sym(rng);
      const auto got = toeplitz_lower_multiply(spec, v);
      double e = 0, ref = 0;
      for (int i = 0; i < n; ++i) {
        long double acc = 0;
        for (int j = 0; j <= i; ++j) acc += static_cast<long double>(spec.column()[i - j]) * v[j];
        e = std::max(e, std::abs(got[i] - static_cast<double>(acc)));
        ref = std::max(ref, std::abs(static_cast<double>(acc)));
      }
      toeplitz.see(e / ref / (1e-10 * kappa), "n = " + std::to_string(n));
    }
  }
  toeplitz.report(o, 1.0);
}

struct Criterion {
  const char* title;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion> kCriteria{
    {"exceptional set up to 10000", exceptional_set},
    {"exact Pascal multiply on alternating vectors", exact_multiply},
    {"balanced fast multiply accuracy", fast_multiply},
    {"optimal balancing parameter", optimality},
    {"curve agreement with de Casteljau", curve_agreement},
    {"operation counts", cost_accounting},
    {"property suites", properties},
};

bool run_one(int id) {
  Outcome o;
  try {
    kCriteria[id - 1].run(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  // Keep detail short: only the first few failure lines.
  std::string detail = o.detail.str();
  std::size_t lines = 0, cut = 0;
  for (; cut < detail.size() && lines < 24; ++cut) lines += detail[cut] == '\n';
  std::fputs(detail.substr(0, cut).c_str(), stdout);
  if (cut < detail.size()) std::puts("  ...");
  std::printf("criterion %d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", kCriteria[id - 1].title);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", kCriteria.size());
    return 2;
  }
  bool all = true;
  for (int id = 1; id <= static_cast<int>(kCriteria.size()); ++id) {
    if (only == 0 || only == id) all = run_one(id) && all;
  }
  return all ? 0 : 1;
}
