#include "pascalbez/pascal_core.hpp"

#include <stdexcept>

namespace pascalbez {
namespace {

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) {
    throw std::invalid_argument(std::string(what) + ": empty vector");
  }
}

// Sweep k applies E_k: every entry from index k to n-1 picks up its
// predecessor. The inner loop runs downwards so v[s-1] is still the old value.
template <class Ops>
void pascal_sweeps(std::span<double> v, const Ops& ops) {
  const std::size_t n = v.size();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t s = n - 1; s >= k; --s) {
      v[s] += v[s - 1];
      ops.add();
    }
  }
}

template <class Ops>
void pascal_g_sweeps(std::span<double> v, double t, const Ops& ops) {
  const std::size_t n = v.size();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t s = n - 1; s >= k; --s) {
      v[s] = v[s - 1] + t * v[s];
      ops.mul();
      ops.add();
    }
  }
}

template <class Ops>
void bernstein_sweeps(std::span<double> v, double t, const Ops& ops) {
  const std::size_t n = v.size();
  const double t1 = 1.0 - t;  // setup, not part of the per-entry tally
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t s = n - 1; s >= k; --s) {
      v[s] = t1 * v[s - 1] + t * v[s];
      ops.mul(2);
      ops.add();
    }
  }
}

}  // namespace

void pascal_product_inplace(std::span<double> v) {
  require_nonempty(v.size(), "pascal_product");
  pascal_sweeps(v, detail::NullOps{});
}

void pascal_product_inplace(std::span<double> v, OpCount& ops) {
  require_nonempty(v.size(), "pascal_product");
  pascal_sweeps(v, detail::CountingOps{&ops});
}

std::vector<double> pascal_product(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  pascal_product_inplace(out);
  return out;
}

void pascal_g_product_inplace(std::span<double> v, double t) {
  require_nonempty(v.size(), "pascal_g_product");
  pascal_g_sweeps(v, t, detail::NullOps{});
}

void pascal_g_product_inplace(std::span<double> v, double t, OpCount& ops) {
  require_nonempty(v.size(), "pascal_g_product");
  pascal_g_sweeps(v, t, detail::CountingOps{&ops});
}

std::vector<double> pascal_g_product(std::span<const double> v, double t) {
  std::vector<double> out(v.begin(), v.end());
  pascal_g_product_inplace(out, t);
  return out;
}

void pascal_inverse_action_inplace(std::span<double> v) {
  require_nonempty(v.size(), "pascal_inverse_action");
  alternate_signs_inplace(v);
  pascal_sweeps(v, detail::NullOps{});
  alternate_signs_inplace(v);
}

std::vector<double> pascal_inverse_action(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  pascal_inverse_action_inplace(out);
  return out;
}

void bernstein_product_inplace(std::span<double> v, double t) {
  require_nonempty(v.size(), "bernstein_product");
  bernstein_sweeps(v, t, detail::NullOps{});
}

void bernstein_product_inplace(std::span<double> v, double t, OpCount& ops) {
  require_nonempty(v.size(), "bernstein_product");
  bernstein_sweeps(v, t, detail::CountingOps{&ops});
}

std::vector<double> bernstein_product(std::span<const double> v, double t) {
  std::vector<double> out(v.begin(), v.end());
  bernstein_product_inplace(out, t);
  return out;
}

void alternate_signs_inplace(std::span<double> v) {
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
}

std::vector<double> alternate_signs(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  alternate_signs_inplace(out);
  return out;
}

}  // namespace pascalbez
