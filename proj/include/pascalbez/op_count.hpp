#pragma once

#include <cstdint>

namespace pascalbez {

/// Floating-point operation tally reported by the instrumented entry points.
/// Subtractions count as additions; sign flips are free.
struct OpCount {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  std::uint64_t divs = 0;

  std::uint64_t total() const { return adds + muls + divs; }

  OpCount& operator+=(const OpCount& o) {
    adds += o.adds;
    muls += o.muls;
    divs += o.divs;
    return *this;
  }

  friend OpCount operator+(OpCount a, const OpCount& b) { return a += b; }
  friend bool operator==(const OpCount&, const OpCount&) = default;
};

namespace detail {

// Counter policies for the sweep kernels. The null policy compiles away.
struct NullOps {
  constexpr void add(std::uint64_t = 1) const {}
  constexpr void mul(std::uint64_t = 1) const {}
  constexpr void div(std::uint64_t = 1) const {}
};

struct CountingOps {
  OpCount* c;
  void add(std::uint64_t k = 1) const { c->adds += k; }
  void mul(std::uint64_t k = 1) const { c->muls += k; }
  void div(std::uint64_t k = 1) const { c->divs += k; }
};

}  // namespace detail
}  // namespace pascalbez
