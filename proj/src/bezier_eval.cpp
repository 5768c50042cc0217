#include "pascalbez/bezier_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pascalbez/pascal_core.hpp"

namespace pascalbez {
namespace {

constexpr double kOneThird = 1.0 / 3.0;
constexpr double kTwoThirds = 2.0 / 3.0;
constexpr std::uint64_t kMaxExactInteger = std::uint64_t{1} << 53;

std::vector<double> reversed(std::span<const double> v) { return {v.rbegin(), v.rend()}; }

double spectral_norm(std::span<const Point2> pts) {
  // Largest eigenvalue of the 2 x 2 Gram matrix A^T A.
  double a = 0, b = 0, c = 0;
  for (const auto& p : pts) {
    a += p.x * p.x;
    b += p.x * p.y;
    c += p.y * p.y;
  }
  const double half_trace = 0.5 * (a + c);
  const double half_diff = 0.5 * (a - c);
  return std::sqrt(half_trace + std::hypot(half_diff, b));
}

}  // namespace

// --- ControlPolygon ------------------------------------------------------------

ControlPolygon ControlPolygon::normalize(std::span<const Point2> raw, NormalizationMode mode) {
  if (raw.size() < 2) {
    throw std::invalid_argument("ControlPolygon: need at least 2 control points, got " +
                                std::to_string(raw.size()));
  }
  for (const auto& p : raw) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("ControlPolygon: non-finite coordinate");
    }
  }

  Frame frame;
  if (mode == NormalizationMode::MinMax) {
    Point2 lo = raw[0], hi = raw[0];
    for (const auto& p : raw) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    frame.shift = lo;
    frame.scale = std::max(hi.x - lo.x, hi.y - lo.y);
  } else {
    for (const auto& p : raw) {
      if (p.x < 0 || p.y < 0) {
        throw std::invalid_argument(
            "ControlPolygon: matrix-norm normalization needs nonnegative coordinates");
      }
    }
    frame.scale = spectral_norm(raw);
  }
  if (!(frame.scale > 0)) frame.scale = 1.0;

  std::vector<double> xs(raw.size()), ys(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    // Clamp: (hi - lo) / scale may round a hair past 1.
    xs[i] = std::clamp((raw[i].x - frame.shift.x) / frame.scale, 0.0, 1.0);
    ys[i] = std::clamp((raw[i].y - frame.shift.y) / frame.scale, 0.0, 1.0);
  }
  return ControlPolygon(std::move(xs), std::move(ys), frame);
}

Point2 ControlPolygon::to_original(Point2 p) const {
  return {frame_.shift.x + frame_.scale * p.x, frame_.shift.y + frame_.scale * p.y};
}

std::vector<Point2> ControlPolygon::original_points() const {
  std::vector<Point2> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = to_original(point(i));
  return out;
}

ControlPolygon reverse(const ControlPolygon& p) {
  return ControlPolygon(reversed(p.xs_), reversed(p.ys_), p.frame_);
}

// --- strategies ------------------------------------------------------------------

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Casteljau: return "casteljau";
    case StrategyKind::PascalSingle: return "pascal-single";
    case StrategyKind::PascalReverseSplit: return "pascal-reverse-split";
    case StrategyKind::PascalPiecewiseAffine: return "pascal-piecewise-affine";
  }
  return "unknown";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) {
  for (auto k : {StrategyKind::Casteljau, StrategyKind::PascalSingle,
                 StrategyKind::PascalReverseSplit, StrategyKind::PascalPiecewiseAffine}) {
    if (name == to_string(k)) return k;
  }
  if (name == "single") return StrategyKind::PascalSingle;
  if (name == "reverse-split") return StrategyKind::PascalReverseSplit;
  if (name == "piecewise-affine") return StrategyKind::PascalPiecewiseAffine;
  return std::nullopt;
}

EvalStrategy EvalStrategy::casteljau() { return {StrategyKind::Casteljau, {}, {}}; }
EvalStrategy EvalStrategy::pascal_single() { return {StrategyKind::PascalSingle, {}, {}}; }
EvalStrategy EvalStrategy::reverse_split() {
  return {StrategyKind::PascalReverseSplit, {0.5}, {}};
}
EvalStrategy EvalStrategy::piecewise_affine(std::vector<std::uint64_t> schedule) {
  return {StrategyKind::PascalPiecewiseAffine, {kOneThird, kTwoThirds}, std::move(schedule)};
}

void EvalStrategy::validate() const {
  const auto fail = [this](const std::string& why) {
    throw std::invalid_argument("EvalStrategy(" + std::string(to_string(kind)) + "): " + why);
  };
  switch (kind) {
    case StrategyKind::Casteljau:
    case StrategyKind::PascalSingle:
      if (!split_points.empty()) fail("takes no split points");
      break;
    case StrategyKind::PascalReverseSplit:
      if (split_points != std::vector<double>{0.5}) fail("split points must be [1/2]");
      break;
    case StrategyKind::PascalPiecewiseAffine:
      if (split_points != std::vector<double>{kOneThird, kTwoThirds}) {
        fail("split points must be [1/3, 2/3]");
      }
      if (affine_schedule.empty()) fail("needs a nonempty affine schedule");
      for (auto m : affine_schedule) {
        if (m < 1) fail("affine schedule entries must be >= 1");
      }
      composed_m();  // overflow check
      return;
  }
  if (!affine_schedule.empty()) fail("affine schedule only applies to piecewise-affine");
}

std::uint64_t EvalStrategy::composed_m() const {
  std::uint64_t total = 0;
  for (auto m : affine_schedule) total = compose_affine(total, m);
  return total;
}

int EvalStrategy::segment_of(double s) const {
  switch (kind) {
    case StrategyKind::PascalReverseSplit: return s <= 0.5 ? 0 : 1;
    case StrategyKind::PascalPiecewiseAffine:
      if (s <= kOneThird) return 0;
      return s < kTwoThirds ? 1 : 2;
    default: return 0;
  }
}

int EvalStrategy::segment_count() const { return static_cast<int>(split_points.size()) + 1; }

EvalStrategy default_strategy(int n) {
  if (n < 2) throw std::invalid_argument("default_strategy: n must be >= 2");
  if (n <= 31) return EvalStrategy::pascal_single();
  if (n <= 41) return EvalStrategy::reverse_split();
  std::vector<std::uint64_t> schedule{32767, 32767};
  if (n >= 55) schedule.push_back(1023);
  if (n >= 60) schedule.push_back(3);
  return EvalStrategy::piecewise_affine(std::move(schedule));
}

std::optional<std::string> default_strategy_warning(int n) {
  if (n > 64) {
    return "n = " + std::to_string(n) +
           " is beyond the validated range (n <= 64); using the n = 64 schedule";
  }
  return std::nullopt;
}

// --- Horner kernel ---------------------------------------------------------------

std::vector<double> binomial_ratios(std::size_t n) {
  std::vector<double> r(n > 0 ? n - 1 : 0);
  for (std::size_t j = 0; j < r.size(); ++j) {
    r[j] = static_cast<double>(n - 1 - j) / static_cast<double>(j + 1);
  }
  return r;
}

namespace {

template <class Ops>
double horner_kernel(std::span<const double> c, double u, std::span<const double> ratios,
                     const Ops& ops) {
  const std::size_t n = c.size();
  if (n == 0) throw std::invalid_argument("horner_binomial_eval: empty coefficients");
  if (ratios.size() != n - 1) {
    throw std::invalid_argument("horner_binomial_eval: ratio table does not match n");
  }
  double r = c[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) {
    r = c[j] + u * ratios[j] * r;
    ops.mul(2);
    ops.add();
  }
  return r;
}

}  // namespace

double horner_binomial_eval(std::span<const double> c, double u) {
  const auto ratios = binomial_ratios(c.size());
  return horner_kernel(c, u, ratios, detail::NullOps{});
}

double horner_binomial_eval(std::span<const double> c, double u,
                            std::span<const double> ratios) {
  return horner_kernel(c, u, ratios, detail::NullOps{});
}

double horner_binomial_eval(std::span<const double> c, double u,
                            std::span<const double> ratios, OpCount& ops) {
  return horner_kernel(c, u, ratios, detail::CountingOps{&ops});
}

// --- coefficients and points -----------------------------------------------------

std::string_view to_string(MultiplyMode mode) {
  return mode == MultiplyMode::ExactBidiagonal ? "exact" : "fast";
}

TransformedCoefficients TransformedCoefficients::build(std::span<const double> xs,
                                                       std::span<const double> ys,
                                                       MultiplyMode mode, OpCount* ops) {
  if (mode == MultiplyMode::FastBalanced) {
    const BalancedFactorization fac(static_cast<int>(xs.size()));
    return build(xs, ys, fac, ops);
  }
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("TransformedCoefficients: xs and ys differ in length");
  }
  TransformedCoefficients tc;
  tc.mode = mode;
  tc.z = alternate_signs(xs);
  tc.w = alternate_signs(ys);
  if (ops) {
    pascal_product_inplace(tc.z, *ops);
    pascal_product_inplace(tc.w, *ops);
  } else {
    pascal_product_inplace(tc.z);
    pascal_product_inplace(tc.w);
  }
  tc.ratios = binomial_ratios(xs.size());
  return tc;
}

TransformedCoefficients TransformedCoefficients::build(std::span<const double> xs,
                                                       std::span<const double> ys,
                                                       const BalancedFactorization& fac,
                                                       OpCount* ops) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("TransformedCoefficients: xs and ys differ in length");
  }
  TransformedCoefficients tc;
  tc.mode = MultiplyMode::FastBalanced;
  MultiplyDiagnostics diag;
  MultiplyDiagnostics* dp = ops ? &diag : nullptr;
  tc.z = fast_pascal_multiply(fac, alternate_signs(xs), dp);
  tc.w = fast_pascal_multiply(fac, alternate_signs(ys), dp);
  if (ops) *ops += diag.ops;
  tc.ratios = binomial_ratios(xs.size());
  return tc;
}

Point2 pascal_point(const TransformedCoefficients& tc, double s, OpCount* ops) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("pascal_point: s outside [0, 1]");
  if (ops) {
    return {horner_binomial_eval(tc.z, -s, tc.ratios, *ops),
            horner_binomial_eval(tc.w, -s, tc.ratios, *ops)};
  }
  return {horner_binomial_eval(tc.z, -s, tc.ratios), horner_binomial_eval(tc.w, -s, tc.ratios)};
}

Point2 casteljau_point(const ControlPolygon& p, double s, OpCount* ops) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("casteljau_point: s outside [0, 1]");
  std::vector<double> x = p.xs();
  std::vector<double> y = p.ys();
  if (ops) {
    bernstein_product_inplace(x, s, *ops);
    bernstein_product_inplace(y, s, *ops);
  } else {
    bernstein_product_inplace(x, s);
    bernstein_product_inplace(y, s);
  }
  return p.to_original({x.back(), y.back()});
}

// --- affine conditioning -----------------------------------------------------------

std::vector<double> affine_forward(std::span<const double> v, std::uint64_t m, OpCount* ops) {
  if (m < 1) throw std::invalid_argument("affine_forward: m must be >= 1");
  if (m >= kMaxExactInteger) throw std::invalid_argument("affine_forward: m too large");
  const double md = static_cast<double>(m);
  const double denom = md + 1.0;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] + md) / denom;
  if (ops) {
    ops->adds += v.size();
    ops->divs += v.size();
  }
  return out;
}

double affine_inverse(double value, std::uint64_t m_total) {
  if (m_total < 1) throw std::invalid_argument("affine_inverse: m must be >= 1");
  if (m_total >= kMaxExactInteger) throw std::invalid_argument("affine_inverse: m too large");
  const double md = static_cast<double>(m_total);
  return (md + 1.0) * value - md;
}

std::uint64_t compose_affine(std::uint64_t m1, std::uint64_t m2) {
  const std::uint64_t a = m1 + 1, b = m2 + 1;
  if (a != 0 && b > kMaxExactInteger / a) {
    throw std::invalid_argument("compose_affine: composed m exceeds 2^53");
  }
  return a * b - 1;
}

// --- curves -------------------------------------------------------------------------

std::vector<double> dyadic_grid(int log2_steps) {
  if (log2_steps < 0 || log2_steps > 30) {
    throw std::invalid_argument("dyadic_grid: log2_steps must be in [0, 30]");
  }
  const std::size_t steps = std::size_t{1} << log2_steps;
  std::vector<double> g(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    g[i] = std::ldexp(static_cast<double>(i), -log2_steps);
  }
  return g;
}

namespace {

void validate_grid(std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      throw std::invalid_argument("evaluate_curve: grid value outside [0, 1]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("evaluate_curve: grid must be strictly increasing");
    }
  }
}

// Builds each coefficient set the first time a segment asks for it.
class CoefficientCache {
 public:
  CoefficientCache(const ControlPolygon& p, const EvalStrategy& strategy,
                   const EvalOptions& opts)
      : p_(p), strategy_(strategy), opts_(opts) {
    if (opts.multiply_mode == MultiplyMode::FastBalanced && !opts.factorization) {
      owned_fac_.emplace(static_cast<int>(p.size()));
    }
  }

  const TransformedCoefficients& direct() {
    if (!direct_) direct_ = build(p_.xs(), p_.ys());
    return *direct_;
  }

  const TransformedCoefficients& reversed_polygon() {
    if (!reversed_) reversed_ = build(reversed(p_.xs()), reversed(p_.ys()));
    return *reversed_;
  }

  const TransformedCoefficients& conditioned() {
    if (!conditioned_) {
      std::vector<double> x = p_.xs(), y = p_.ys();
      for (auto m : strategy_.affine_schedule) {
        x = affine_forward(x, m, opts_.ops);
        y = affine_forward(y, m, opts_.ops);
      }
      conditioned_ = build(x, y);
    }
    return *conditioned_;
  }

 private:
  TransformedCoefficients build(std::span<const double> x, std::span<const double> y) {
    if (opts_.multiply_mode == MultiplyMode::ExactBidiagonal) {
      return TransformedCoefficients::build(x, y, MultiplyMode::ExactBidiagonal, opts_.ops);
    }
    const BalancedFactorization& fac = opts_.factorization ? *opts_.factorization : *owned_fac_;
    if (fac.n() != static_cast<int>(x.size())) {
      throw std::invalid_argument("evaluate_curve: factorization built for a different n");
    }
    return TransformedCoefficients::build(x, y, fac, opts_.ops);
  }

  const ControlPolygon& p_;
  const EvalStrategy& strategy_;
  const EvalOptions& opts_;
  std::optional<BalancedFactorization> owned_fac_;
  std::optional<TransformedCoefficients> direct_, reversed_, conditioned_;
};

}  // namespace

CurveSamples evaluate_curve(const ControlPolygon& p, const EvalStrategy& strategy,
                            std::span<const double> grid, const EvalOptions& options) {
  strategy.validate();
  validate_grid(grid);

  CurveSamples out;
  out.params.assign(grid.begin(), grid.end());
  out.points.reserve(grid.size());

  if (strategy.kind == StrategyKind::Casteljau) {
    for (double s : grid) out.points.push_back(casteljau_point(p, s, options.ops));
    return out;
  }

  CoefficientCache cache(p, strategy, options);
  const std::uint64_t m_total = strategy.composed_m();
  for (double s : grid) {
    Point2 q;
    switch (strategy.kind) {
      case StrategyKind::PascalSingle:
        q = pascal_point(cache.direct(), s, options.ops);
        break;
      case StrategyKind::PascalReverseSplit:
        q = strategy.segment_of(s) == 0 ? pascal_point(cache.direct(), s, options.ops)
                                        : pascal_point(cache.reversed_polygon(), 1.0 - s,
                                                       options.ops);
        break;
      case StrategyKind::PascalPiecewiseAffine:
        switch (strategy.segment_of(s)) {
          case 0: q = pascal_point(cache.direct(), s, options.ops); break;
          case 1: {
            const Point2 c = pascal_point(cache.conditioned(), s, options.ops);
            q = {affine_inverse(c.x, m_total), affine_inverse(c.y, m_total)};
            if (options.ops) {
              options.ops->muls += 2;
              options.ops->adds += 2;
            }
            break;
          }
          default: q = pascal_point(cache.reversed_polygon(), 1.0 - s, options.ops); break;
        }
        break;
      case StrategyKind::Casteljau: break;
    }
    out.points.push_back(p.to_original(q));
  }
  return out;
}

}  // namespace pascalbez
