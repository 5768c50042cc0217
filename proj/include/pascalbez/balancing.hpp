#pragma once

// Optimal diagonal balancing of the Pascal matrix, P = D(t) T(t) D(t)^{-1},
// with D(t) = diag(i!/t^i) and T(t) the lower triangular Toeplitz matrix whose
// first column is t^i/i!. The balancing objective is the spread
// max f / min f of f(m) = t^m/m! over m = 0..n-1.
//
// Integer decisions (k, membership of the exceptional set) are made in exact
// big-integer arithmetic; only the returned t is a floating-point value.

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace pascalbez {

enum class BalanceKind {
  InteriorOptimum,     // f1 and f2 cross inside (k, k+1)
  ExceptionalInteger,  // no interior crossing; t = k
  Heuristic,     // t = (n-1)/e
  Fixed,               // caller-chosen t (also used for n <= 2)
};

std::string_view to_string(BalanceKind kind);

struct BalanceParameter {
  int n = 0;
  double t = 1.0;
  BalanceKind kind = BalanceKind::Fixed;
};

struct ExceptionalEntry {
  int n = 0;
  std::int64_t k = 0;
  friend auto operator<=>(const ExceptionalEntry&, const ExceptionalEntry&) = default;
};

/// max{m : m^(n-1) < (n-1)!}, certified by exact comparison. Requires n >= 3.
std::int64_t compute_k(int n);

/// Same result as compute_k(n), but starting the exact search from `seed`
/// instead of the log-gamma estimate. Any seed >= 1 gives the same answer.
std::int64_t compute_k_from_seed(int n, std::int64_t seed);

/// The k of n when k^(n-1) + k^(n-2) >= (n-1)! also holds, else empty.
std::optional<std::int64_t> is_exceptional(int n);

/// All exceptional (n, k) with 4 <= n <= n_max, ascending in n.
std::vector<ExceptionalEntry> enumerate_exceptional(int n_max);

/// Optimum balancing parameter for n >= 3.
BalanceParameter optimal_t(int n);

/// t = (n-1)/e, the classical approximation. Requires n >= 2.
BalanceParameter heuristic_t(int n);

/// Wraps a caller-supplied t > 0 for any n >= 1.
BalanceParameter fixed_t(int n, double t);

/// What the fast multiply uses by default: optimal_t for n >= 3, t = 1 below.
BalanceParameter default_balance(int n);

/// f1(t) = t^floor(t) / floor(t)!
double spread_f1(double t);
/// f2(t) = t^ceil(t) (n-1)! / (t^(n-1) ceil(t)!)
double spread_f2(int n, double t);

/// max(f1, f2) = max f / min f for f(m) = t^m/m!, 0 < t < n-1.
double spread(int n, double t);

struct ScalingDiagonals {
  std::vector<double> d;      // i!/t^i
  std::vector<double> d_inv;  // t^i/i!
};

/// Diagonals of D(t) and D(t)^{-1} from the recurrences d_i = d_{i-1} (i/t)
/// and d_inv_i = d_inv_{i-1} (t/i).
ScalingDiagonals scaling_diagonals(int n, double t);

}  // namespace pascalbez
