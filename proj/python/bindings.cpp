#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pascalbez/balancing.hpp"
#include "pascalbez/bench.hpp"
#include "pascalbez/bezier_eval.hpp"
#include "pascalbez/pascal_core.hpp"
#include "pascalbez/toeplitz_fft.hpp"

namespace py = pybind11;
using namespace pascalbez;

namespace {

std::vector<Point2> to_points(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

StrategyKind strategy_from(const std::string& name) {
  if (auto k = parse_strategy_kind(name)) return *k;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_pascalbez, m) {
  m.doc() = "Bezier curves by Pascal matrix methods.";

  m.def("pascal_product", [](std::vector<double> v) { return pascal_product(v); }, py::arg("v"));
  m.def("pascal_g_product", [](std::vector<double> v, double t) { return pascal_g_product(v, t); },
        py::arg("v"), py::arg("t"));
  m.def("pascal_inverse_action", [](std::vector<double> v) { return pascal_inverse_action(v); },
        py::arg("v"));
  m.def("bernstein_product", [](std::vector<double> v, double t) { return bernstein_product(v, t); },
        py::arg("v"), py::arg("t"));

  py::enum_<BalanceKind>(m, "BalanceKind")
      .value("InteriorOptimum", BalanceKind::InteriorOptimum)
      .value("ExceptionalInteger", BalanceKind::ExceptionalInteger)
      .value("Heuristic", BalanceKind::Heuristic)
      .value("Fixed", BalanceKind::Fixed);

  py::class_<BalanceParameter>(m, "BalanceParameter")
      .def_readonly("n", &BalanceParameter::n)
      .def_readonly("t", &BalanceParameter::t)
      .def_readonly("kind", &BalanceParameter::kind)
      .def("__repr__", [](const BalanceParameter& p) {
        return "BalanceParameter(n=" + std::to_string(p.n) + ", t=" + std::to_string(p.t) +
               ", kind=" + std::string(to_string(p.kind)) + ")";
      });

  m.def("compute_k", &compute_k, py::arg("n"));
  m.def("is_exceptional", &is_exceptional, py::arg("n"));
  m.def("enumerate_exceptional", [](int n_max) {
    std::vector<std::pair<int, std::int64_t>> out;
    for (const auto& e : enumerate_exceptional(n_max)) out.emplace_back(e.n, e.k);
    return out;
  }, py::arg("n_max"));
  m.def("optimal_t", &optimal_t, py::arg("n"));
  m.def("spread", &spread, py::arg("n"), py::arg("t"));
  m.def("scaling_diagonals", [](int n, double t) {
    auto d = scaling_diagonals(n, t);
    return std::make_pair(d.d, d.d_inv);
  }, py::arg("n"), py::arg("t"));

  m.def("fast_pascal_multiply",
        [](std::vector<double> v, std::optional<double> t) {
          const int n = static_cast<int>(v.size());
          const BalancedFactorization fac(t ? fixed_t(n, *t) : default_balance(n));
          return fast_pascal_multiply(fac, v);
        },
        py::arg("v"), py::arg("t") = py::none(),
        "Balanced FFT product P v; t defaults to the optimum for len(v).");

  m.def("horner_binomial_eval",
        [](std::vector<double> c, double u) { return horner_binomial_eval(c, u); },
        py::arg("c"), py::arg("u"));

  m.def("evaluate_curve",
        [](const std::vector<std::pair<double, double>>& points, std::vector<double> grid,
           const std::string& strategy, const std::string& multiply_mode) {
          const auto polygon = ControlPolygon::normalize(to_points(points));
          const int n = static_cast<int>(polygon.size());
          const EvalStrategy strat =
              strategy == "default" ? default_strategy(n) : bench::strategy_for(n, strategy_from(strategy));
          EvalOptions opts;
          if (multiply_mode == "fast") opts.multiply_mode = MultiplyMode::FastBalanced;
          else if (multiply_mode != "exact") throw std::invalid_argument("multiply_mode must be exact or fast");
          std::vector<std::pair<double, double>> out;
          for (const auto& p : evaluate_curve(polygon, strat, grid, opts).points) out.emplace_back(p.x, p.y);
          return out;
        },
        py::arg("points"), py::arg("grid"), py::arg("strategy") = "default",
        py::arg("multiply_mode") = "exact",
        "Evaluate a Bezier curve; strategy is default, casteljau, single, reverse-split or "
        "piecewise-affine.");

  m.def("default_strategy", [](int n) {
    const auto s = default_strategy(n);
    return std::make_pair(std::string(to_string(s.kind)), s.affine_schedule);
  }, py::arg("n"));

  m.def("dyadic_grid", &dyadic_grid, py::arg("log2_steps") = 7);
  m.def("random_control_points", [](int n, std::uint64_t seed) {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : bench::random_control_points(n, seed)) out.emplace_back(p.x, p.y);
    return out;
  }, py::arg("n"), py::arg("seed"));
}
