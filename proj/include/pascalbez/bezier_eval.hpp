#pragma once

// Bezier curve evaluation through the Pascal spectral form
//
//   x(s) = e_n^T P G(-s) P G(-1) x
//
// with the coefficient vector z = P G(-1) x built once per polygon and the
// outer e_n^T P G(-s) z evaluated per point by a binomial Horner scheme.
// De Casteljau's algorithm is the reference evaluator.

#include <cstdint>
#include <optional>
#include <utility>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pascalbez/op_count.hpp"
#include "pascalbez/toeplitz_fft.hpp"

namespace pascalbez {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// original = shift + scale * normalized
struct Frame {
  Point2 shift{};
  double scale = 1.0;
  friend bool operator==(const Frame&, const Frame&) = default;
};

enum class NormalizationMode {
  MinMax,           // per-axis minimum shift, common scale = largest axis range
  MatrixNorm,  // no shift, scale = spectral norm of the n x 2 coordinate matrix
};

/// Control points in a normalized frame with every coordinate in [0, 1].
class ControlPolygon {
 public:
  static ControlPolygon normalize(std::span<const Point2> raw,
                                  NormalizationMode mode = NormalizationMode::MinMax);

  std::size_t size() const { return xs_.size(); }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  const Frame& frame() const { return frame_; }

  Point2 point(std::size_t i) const { return {xs_[i], ys_[i]}; }
  Point2 to_original(Point2 p) const;
  std::vector<Point2> original_points() const;

  friend ControlPolygon reverse(const ControlPolygon& p);
  friend bool operator==(const ControlPolygon&, const ControlPolygon&) = default;

 private:
  ControlPolygon(std::vector<double> xs, std::vector<double> ys, Frame frame)
      : xs_(std::move(xs)), ys_(std::move(ys)), frame_(frame) {}

  std::vector<double> xs_;
  std::vector<double> ys_;
  Frame frame_;
};

/// Same frame, points in reverse order: B(s) = B_r(1 - s).
ControlPolygon reverse(const ControlPolygon& p);

enum class StrategyKind { Casteljau, PascalSingle, PascalReverseSplit, PascalPiecewiseAffine };

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy_kind(std::string_view name);

struct EvalStrategy {
  StrategyKind kind = StrategyKind::PascalSingle;
  std::vector<double> split_points;
  std::vector<std::uint64_t> affine_schedule;  // applied first to last

  static EvalStrategy casteljau();
  static EvalStrategy pascal_single();
  static EvalStrategy reverse_split();
  static EvalStrategy piecewise_affine(std::vector<std::uint64_t> schedule);

  /// Throws std::invalid_argument when the fields disagree with the kind.
  void validate() const;
  /// m_total of the cascade; 0 for an empty schedule.
  std::uint64_t composed_m() const;
  /// Which evaluation segment serves parameter s (0-based, left to right).
  int segment_of(double s) const;
  int segment_count() const;

  friend bool operator==(const EvalStrategy&, const EvalStrategy&) = default;
};

/// Pascal single up to n = 31, reverse split to 41, piecewise affine beyond.
EvalStrategy default_strategy(int n);
/// Set when n lies outside the range the schedules were validated on.
std::optional<std::string> default_strategy_warning(int n);

// --- per-point kernels ------------------------------------------------------

/// (n-1-j)/(j+1) for j = 0..n-2: successive binomial ratios C(n-1,j+1)/C(n-1,j).
std::vector<double> binomial_ratios(std::size_t n);

/// sum_j C(n-1,j) u^j c[j] = e_n^T P G(u) c, nested as
/// r = c[n-1]; r = c[j] + u*ratio[j]*r for j = n-2..0.
double horner_binomial_eval(std::span<const double> c, double u);
double horner_binomial_eval(std::span<const double> c, double u,
                            std::span<const double> ratios);
double horner_binomial_eval(std::span<const double> c, double u,
                            std::span<const double> ratios, OpCount& ops);

enum class MultiplyMode { ExactBidiagonal, FastBalanced };

std::string_view to_string(MultiplyMode mode);

/// z = P G(-1) xs and w = P G(-1) ys, plus the cached Horner ratios.
struct TransformedCoefficients {
  std::vector<double> z;
  std::vector<double> w;
  MultiplyMode mode = MultiplyMode::ExactBidiagonal;
  std::vector<double> ratios;

  std::size_t size() const { return z.size(); }

  static TransformedCoefficients build(std::span<const double> xs, std::span<const double> ys,
                                       MultiplyMode mode, OpCount* ops = nullptr);
  /// FastBalanced build reusing a precomputed factorization of matching n.
  static TransformedCoefficients build(std::span<const double> xs, std::span<const double> ys,
                                       const BalancedFactorization& fac,
                                       OpCount* ops = nullptr);
};

/// Curve point in the normalized frame: (horner(z, -s), horner(w, -s)).
Point2 pascal_point(const TransformedCoefficients& tc, double s, OpCount* ops = nullptr);

/// Reference point by de Casteljau sweeps, returned in the original frame.
Point2 casteljau_point(const ControlPolygon& p, double s, OpCount* ops = nullptr);

// --- affine conditioning T_m(v) = (v + m) / (m + 1) ---------------------------

std::vector<double> affine_forward(std::span<const double> v, std::uint64_t m,
                                   OpCount* ops = nullptr);
/// (m_total + 1) * value - m_total
double affine_inverse(double value, std::uint64_t m_total);
/// T_m2 o T_m1 = T_{(m1+1)(m2+1)-1}; throws if the result exceeds 2^53.
std::uint64_t compose_affine(std::uint64_t m1, std::uint64_t m2);

// --- whole curves -------------------------------------------------------------

struct CurveSamples {
  std::vector<double> params;
  std::vector<Point2> points;  // original frame
};

struct EvalOptions {
  MultiplyMode multiply_mode = MultiplyMode::ExactBidiagonal;
  /// Optional shared factorization for FastBalanced; built on demand if null.
  const BalancedFactorization* factorization = nullptr;
  OpCount* ops = nullptr;
};

/// Grid of s = i / 2^log2_steps, i = 0..2^log2_steps. Every point is exact.
std::vector<double> dyadic_grid(int log2_steps);

CurveSamples evaluate_curve(const ControlPolygon& p, const EvalStrategy& strategy,
                            std::span<const double> grid, const EvalOptions& options = {});

}  // namespace pascalbez
