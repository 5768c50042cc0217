#include "pascalbez/balancing.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pascalbez {
namespace {

void require_n_at_least(int n, int lo, const char* what) {
  if (n < lo) {
    throw std::invalid_argument(std::string(what) + ": n must be >= " + std::to_string(lo) +
                                ", got " + std::to_string(n));
  }
}

mpz_class ipow(std::int64_t base, int exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

mpz_class factorial(int m) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

// Log-gamma estimate of floor(((n-1)!)^(1/(n-1))); only a starting point.
std::int64_t k_estimate(int n) {
  const double r = std::exp(std::lgamma(static_cast<double>(n)) / (n - 1));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(r)));
}

// Largest k with k^(n-1) < fact, where fact = (n-1)! >= 2, so k = 1 always
// qualifies. Exponential search from the seed, then bisection; every decision
// is an exact comparison.
std::int64_t certified_k(int n, const mpz_class& fact, std::int64_t seed) {
  const int e = n - 1;
  auto below = [&](std::int64_t m) { return ipow(m, e) < fact; };

  std::int64_t lo, hi;  // below(lo) && !below(hi)
  seed = std::max<std::int64_t>(seed, 1);
  if (below(seed)) {
    lo = seed;
    std::int64_t step = 1;
    hi = seed + step;
    while (below(hi)) {
      lo = hi;
      step *= 2;
      hi = lo + step;
    }
  } else {
    hi = seed;
    std::int64_t step = 1;
    lo = std::max<std::int64_t>(1, seed - step);
    while (!below(lo)) {
      hi = lo;
      step *= 2;
      lo = std::max<std::int64_t>(1, hi - step);
    }
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (below(mid) ? lo : hi) = mid;
  }
  return lo;
}

// k^(n-1) + k^(n-2) = k^(n-2) (k+1) >= (n-1)!
bool exceptional_with(int n, std::int64_t k, const mpz_class& fact) {
  mpz_class lhs = ipow(k, n - 2);
  lhs *= static_cast<unsigned long>(k + 1);
  return lhs >= fact;
}

}  // namespace

std::string_view to_string(BalanceKind kind) {
  switch (kind) {
    case BalanceKind::InteriorOptimum: return "interior";
    case BalanceKind::ExceptionalInteger: return "exceptional";
    case BalanceKind::Heuristic: return "heuristic";
    case BalanceKind::Fixed: return "fixed";
  }
  return "unknown";
}

std::int64_t compute_k(int n) {
  require_n_at_least(n, 3, "compute_k");
  return certified_k(n, factorial(n - 1), k_estimate(n));
}

std::int64_t compute_k_from_seed(int n, std::int64_t seed) {
  require_n_at_least(n, 3, "compute_k_from_seed");
  return certified_k(n, factorial(n - 1), seed);
}

std::optional<std::int64_t> is_exceptional(int n) {
  require_n_at_least(n, 3, "is_exceptional");
  const mpz_class fact = factorial(n - 1);
  const std::int64_t k = certified_k(n, fact, k_estimate(n));
  if (exceptional_with(n, k, fact)) return k;
  return std::nullopt;
}

std::vector<ExceptionalEntry> enumerate_exceptional(int n_max) {
  require_n_at_least(n_max, 3, "enumerate_exceptional");
  std::vector<ExceptionalEntry> out;
  mpz_class fact = 2;  // (n-1)! at n = 3
  for (int n = 4; n <= n_max; ++n) {
    fact *= static_cast<unsigned long>(n - 1);
    const std::int64_t k = certified_k(n, fact, k_estimate(n));
    if (exceptional_with(n, k, fact)) out.push_back({n, k});
  }
  return out;
}

BalanceParameter optimal_t(int n) {
  require_n_at_least(n, 3, "optimal_t");
  const mpz_class fact = factorial(n - 1);
  const std::int64_t k = certified_k(n, fact, k_estimate(n));
  if (exceptional_with(n, k, fact)) {
    return {n, static_cast<double>(k), BalanceKind::ExceptionalInteger};
  }
  // t = ((n-1)!/(k+1))^(1/(n-2)), evaluated in log space.
  const double lo = static_cast<double>(k);
  const double hi = static_cast<double>(k + 1);
  double t = std::exp((std::lgamma(static_cast<double>(n)) - std::log(hi)) / (n - 2));
  if (t <= lo) t = std::nextafter(lo, hi);
  if (t >= hi) t = std::nextafter(hi, lo);
  return {n, t, BalanceKind::InteriorOptimum};
}

BalanceParameter heuristic_t(int n) {
  require_n_at_least(n, 2, "heuristic_t");
  return {n, (n - 1) / std::numbers::e, BalanceKind::Heuristic};
}

BalanceParameter fixed_t(int n, double t) {
  require_n_at_least(n, 1, "fixed_t");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("fixed_t: t must be positive and finite");
  }
  return {n, t, BalanceKind::Fixed};
}

BalanceParameter default_balance(int n) {
  if (n >= 3) return optimal_t(n);
  return fixed_t(n, 1.0);
}

double spread_f1(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("spread_f1: t must be positive");
  const double fl = std::floor(t);
  return std::exp(fl * std::log(t) - std::lgamma(fl + 1.0));
}

double spread_f2(int n, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("spread_f2: t must be positive");
  const double ce = std::ceil(t);
  return std::exp((ce - (n - 1)) * std::log(t) + std::lgamma(static_cast<double>(n)) -
                  std::lgamma(ce + 1.0));
}

double spread(int n, double t) {
  require_n_at_least(n, 2, "spread");
  if (!(t > 0.0 && t < n - 1)) {
    throw std::invalid_argument("spread: t must lie in (0, n-1)");
  }
  return std::max(spread_f1(t), spread_f2(n, t));
}

ScalingDiagonals scaling_diagonals(int n, double t) {
  require_n_at_least(n, 1, "scaling_diagonals");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("scaling_diagonals: t must be positive and finite");
  }
  ScalingDiagonals out{std::vector<double>(n), std::vector<double>(n)};
  out.d[0] = 1.0;
  out.d_inv[0] = 1.0;
  for (int i = 1; i < n; ++i) {
    out.d[i] = out.d[i - 1] * (i / t);
    out.d_inv[i] = out.d_inv[i - 1] * (t / i);
  }
  return out;
}

}  // namespace pascalbez
