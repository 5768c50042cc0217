#pragma once

// Structured products with the lower triangular Pascal matrix P, with P*G(t)
// (G(t) = diag(1, t, ..., t^(n-1))) and with the Bernstein matrix B(t), each
// applied as a cascade of unit lower bidiagonal sweeps. Indices are 0-based:
// e_1 is index 0 and e_n is index n-1.
//
// The *_inplace forms are the kernels; the copying forms are thin wrappers.
// All entry points reject empty input with std::invalid_argument.

#include <span>
#include <vector>

#include "pascalbez/op_count.hpp"

namespace pascalbez {

/// v <- P v. Exactly n(n-1)/2 additions, no multiplications.
void pascal_product_inplace(std::span<double> v);
void pascal_product_inplace(std::span<double> v, OpCount& ops);
std::vector<double> pascal_product(std::span<const double> v);

/// v <- P G(t) v via sweeps v[s] = v[s-1] + t*v[s].
void pascal_g_product_inplace(std::span<double> v, double t);
void pascal_g_product_inplace(std::span<double> v, double t, OpCount& ops);
std::vector<double> pascal_g_product(std::span<const double> v, double t);

/// v <- P^{-1} v, computed as G(-1) P G(-1) v.
void pascal_inverse_action_inplace(std::span<double> v);
std::vector<double> pascal_inverse_action(std::span<const double> v);

/// v <- B(t) v via sweeps v[s] = (1-t)*v[s-1] + t*v[s]. This is de
/// Casteljau's recurrence: the last entry is the Bezier coordinate at t.
void bernstein_product_inplace(std::span<double> v, double t);
void bernstein_product_inplace(std::span<double> v, double t, OpCount& ops);
std::vector<double> bernstein_product(std::span<const double> v, double t);

/// v <- G(-1) v: flips the sign of every odd-indexed entry. Involutive.
void alternate_signs_inplace(std::span<double> v);
std::vector<double> alternate_signs(std::span<const double> v);

}  // namespace pascalbez
