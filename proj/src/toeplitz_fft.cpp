#include "pascalbez/toeplitz_fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace pascalbez {

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::size_t embedding_size(std::size_t n) {
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  return m;
}

FftPlan::FftPlan(std::size_t m) : m_(m) {
  if (!is_power_of_two(m)) {
    throw std::invalid_argument("FftPlan: length " + std::to_string(m) +
                                " is not a power of two");
  }
  // Each twiddle from its own sincos; a rotation recurrence would drift.
  twiddles_.resize(m / 2);
  for (std::size_t j = 0; j < m / 2; ++j) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    twiddles_[j] = {std::cos(angle), std::sin(angle)};
  }
  bitrev_.resize(m);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < m) ++bits;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = r;
  }
}

template <class Ops>
void FftPlan::run(std::span<Complex> v, bool inverse, const Ops& ops) const {
  if (v.size() != m_) {
    throw std::invalid_argument("FftPlan: expected length " + std::to_string(m_) + ", got " +
                                std::to_string(v.size()));
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (i < bitrev_[i]) std::swap(v[i], v[bitrev_[i]]);
  }
  for (std::size_t len = 2; len <= m_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = m_ / len;
    for (std::size_t start = 0; start < m_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        Complex w = twiddles_[j * stride];
        if (inverse) w = std::conj(w);
        const Complex a = v[start + j];
        const Complex b = v[start + j + half] * w;
        v[start + j] = a + b;
        v[start + j + half] = a - b;
        // complex multiply (4 mul, 2 add) plus two complex add/sub
        ops.mul(4);
        ops.add(6);
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(m_);
    for (auto& x : v) x *= scale;
    ops.mul(2 * m_);
  }
}

void FftPlan::transform(std::span<Complex> v, bool inverse) const {
  run(v, inverse, detail::NullOps{});
}

void FftPlan::transform(std::span<Complex> v, bool inverse, OpCount& ops) const {
  run(v, inverse, detail::CountingOps{&ops});
}

std::vector<Complex> dft(std::span<const Complex> v, bool inverse) {
  FftPlan plan(v.size());
  std::vector<Complex> out(v.begin(), v.end());
  plan.transform(out, inverse);
  return out;
}

ToeplitzSpectrum::ToeplitzSpectrum(int n, double t)
    : n_(n), t_(t), plan_(embedding_size(static_cast<std::size_t>(std::max(n, 1)))) {
  if (n < 1) throw std::invalid_argument("ToeplitzSpectrum: n must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("ToeplitzSpectrum: t must be positive and finite");
  }
  column_.resize(n);
  column_[0] = 1.0;
  for (int i = 1; i < n; ++i) column_[i] = column_[i - 1] * (t / i);

  column_dft_.assign(plan_.size(), Complex{});
  std::copy(column_.begin(), column_.end(), column_dft_.begin());
  plan_.transform(column_dft_, false);
}

namespace {

template <class Ops>
std::vector<double> toeplitz_apply(const ToeplitzSpectrum& spec, std::span<const double> v,
                                   double* imag_residue, const Ops& ops, OpCount* fft_ops) {
  if (v.size() != static_cast<std::size_t>(spec.n())) {
    throw std::invalid_argument("toeplitz_lower_multiply: expected length " +
                                std::to_string(spec.n()) + ", got " + std::to_string(v.size()));
  }
  const std::size_t m = spec.m();
  std::vector<Complex> buf(m, Complex{});
  std::copy(v.begin(), v.end(), buf.begin());

  if (fft_ops) spec.plan().transform(buf, false, *fft_ops);
  else spec.plan().transform(buf, false);

  const auto& col = spec.column_dft();
  for (std::size_t i = 0; i < m; ++i) buf[i] *= col[i];
  ops.mul(4 * m);
  ops.add(2 * m);

  if (fft_ops) spec.plan().transform(buf, true, *fft_ops);
  else spec.plan().transform(buf, true);

  std::vector<double> out(v.size());
  double residue = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = buf[i].real();
    residue = std::max(residue, std::abs(buf[i].imag()));
  }
  if (imag_residue) *imag_residue = residue;
  return out;
}

}  // namespace

std::vector<double> toeplitz_lower_multiply(const ToeplitzSpectrum& spec,
                                            std::span<const double> v,
                                            MultiplyDiagnostics* diag) {
  if (!diag) return toeplitz_apply(spec, v, nullptr, detail::NullOps{}, nullptr);
  return toeplitz_apply(spec, v, &diag->max_imag_residue, detail::CountingOps{&diag->ops},
                        &diag->ops);
}

BalancedFactorization::BalancedFactorization(const BalanceParameter& param)
    : param_(param),
      diag_(scaling_diagonals(param.n, param.t)),
      spectrum_(param.n, param.t) {}

BalancedFactorization::BalancedFactorization(int n)
    : BalancedFactorization(default_balance(n)) {}

std::vector<double> fast_pascal_multiply(const BalancedFactorization& fac,
                                         std::span<const double> v,
                                         MultiplyDiagnostics* diag) {
  if (v.size() != static_cast<std::size_t>(fac.n())) {
    throw std::invalid_argument("fast_pascal_multiply: expected length " +
                                std::to_string(fac.n()) + ", got " + std::to_string(v.size()));
  }
  std::vector<double> scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = fac.d_inv()[i] * v[i];
  std::vector<double> out = toeplitz_lower_multiply(fac.spectrum(), scaled, diag);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= fac.d()[i];
  if (diag) diag->ops.muls += 2 * v.size();
  return out;
}

}  // namespace pascalbez
