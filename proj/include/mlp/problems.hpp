#ifndef MLP_PROBLEMS_HPP
#define MLP_PROBLEMS_HPP

#include <string>
#include <vector>

#include "mlp/heat.hpp"

namespace mlp {

/// Optional overrides applied on top of a registered problem's defaults.
struct ProblemParams {
  int d = 0;                // 0 keeps the registered default
  double T = 0.0;           // <= 0 keeps the default
  double a = 0.0;           // linear nonlinearity coefficient (problem "linear")
  bool has_a = false;
  double c0 = 0.0;          // constant terminal value (problem "constant")
  bool has_c0 = false;
  std::vector<double> xi;   // empty keeps the default (origin)
};

/// Problems registered by name:
///   "quadratic"  f = 0,        g(x) = |x|^2    (closed-form solution)
///   "linear"     f(v) = a*v,   g(x) = |x|^2    (closed-form solution)
///   "sine"       f(v) = sin(v), g(x) = x^2, d = 1 (quadrature oracle)
///   "constant"   f = 0,        g = c0          (closed-form solution)
HeatProblem make_problem(const std::string& name, const ProblemParams& params = {});

const std::vector<std::string>& registered_problem_names();

}  // namespace mlp

#endif  // MLP_PROBLEMS_HPP
