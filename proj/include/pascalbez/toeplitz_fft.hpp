#pragma once

// Fast products with the balanced Pascal factorization P = D(t) T(t) D(t)^{-1}.
// T(t) is lower triangular Toeplitz; it is embedded in a circulant of
// power-of-two size m >= 2n-1 and applied with a radix-2 complex FFT.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pascalbez/balancing.hpp"
#include "pascalbez/op_count.hpp"

namespace pascalbez {

using Complex = std::complex<double>;

/// Precomputed twiddles and bit-reversal table for one power-of-two size.
class FftPlan {
 public:
  explicit FftPlan(std::size_t m);

  std::size_t size() const { return m_; }

  /// In-place transform. The inverse includes the 1/m normalization.
  void transform(std::span<Complex> v, bool inverse) const;
  void transform(std::span<Complex> v, bool inverse, OpCount& ops) const;

 private:
  template <class Ops>
  void run(std::span<Complex> v, bool inverse, const Ops& ops) const;

  std::size_t m_;
  std::vector<Complex> twiddles_;  // exp(-2 pi i j / m), j < m/2
  std::vector<std::size_t> bitrev_;
};

/// One-shot DFT; throws std::invalid_argument unless the length is a power of two.
std::vector<Complex> dft(std::span<const Complex> v, bool inverse);

bool is_power_of_two(std::size_t m);
/// Smallest power of two >= 2n-1.
std::size_t embedding_size(std::size_t n);

/// DFT of the zero-padded first column c_i = t^i/i! of T(t).
class ToeplitzSpectrum {
 public:
  ToeplitzSpectrum(int n, double t);

  int n() const { return n_; }
  double t() const { return t_; }
  std::size_t m() const { return plan_.size(); }
  const std::vector<double>& column() const { return column_; }
  const std::vector<Complex>& column_dft() const { return column_dft_; }
  const FftPlan& plan() const { return plan_; }

 private:
  int n_;
  double t_;
  FftPlan plan_;
  std::vector<double> column_;
  std::vector<Complex> column_dft_;
};

struct MultiplyDiagnostics {
  double max_imag_residue = 0.0;  // largest |Im| among the kept entries
  OpCount ops;
};

/// T(t) v through the circulant embedding. Throws on a length mismatch.
std::vector<double> toeplitz_lower_multiply(const ToeplitzSpectrum& spec,
                                            std::span<const double> v,
                                            MultiplyDiagnostics* diag = nullptr);

/// Everything the fast multiply needs for one (n, t); immutable once built.
class BalancedFactorization {
 public:
  explicit BalancedFactorization(const BalanceParameter& param);
  /// Uses default_balance(n).
  explicit BalancedFactorization(int n);

  int n() const { return param_.n; }
  const BalanceParameter& param() const { return param_; }
  const std::vector<double>& d() const { return diag_.d; }
  const std::vector<double>& d_inv() const { return diag_.d_inv; }
  const ToeplitzSpectrum& spectrum() const { return spectrum_; }

 private:
  BalanceParameter param_;
  ScalingDiagonals diag_;
  ToeplitzSpectrum spectrum_;
};

/// D (T (D^{-1} v)) ~ P v in O(n log n).
std::vector<double> fast_pascal_multiply(const BalancedFactorization& fac,
                                         std::span<const double> v,
                                         MultiplyDiagnostics* diag = nullptr);

}  // namespace pascalbez
