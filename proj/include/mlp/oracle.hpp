#ifndef MLP_ORACLE_HPP
#define MLP_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mlp/heat.hpp"

namespace mlp {

enum class OracleMethod { closed_form, picard_quadrature, plain_mc_picard };

std::string to_string(OracleMethod m);

struct ReferenceSolution {
  double value = 0.0;
  double uncertainty = 0.0;  // 0 for closed forms
  OracleMethod method = OracleMethod::closed_form;
};

/// Exact y(0, xi) for problems with a registered closed-form solution.
ReferenceSolution closed_form_reference(const HeatProblem& problem);

/// Physicists' Gauss-Hermite rule: sum_i w_i f(x_i) ~ int e^(-x^2) f(x) dx,
/// so E[f(m + s*Z)] = (1/sqrt(pi)) * sum_i w_i f(m + s*sqrt(2)*x_i).
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n);

struct QuadratureGrid {
  int n_t = 65;
  int n_x = 513;
  double x_half_width = 0.0;  // 0 means 8*sqrt(T)
  int quad_nodes = 40;
  int iters = 30;
};

/// Fixed-point iteration of the Feynman-Kac equation on a (t, x) grid for
/// d = 1 problems. Gaussian expectations by Gauss-Hermite quadrature, the
/// time integral by the trapezoid rule, linear interpolation in x with
/// clamped extrapolation. Uncertainty combines the last iterate gap at
/// (0, xi) with a full-vs-half-resolution delta.
ReferenceSolution picard_quadrature_reference(const HeatProblem& problem,
                                              const QuadratureGrid& grid = {});

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Naive nested Monte Carlo Picard iteration: every expectation uses the full
/// sample count at every nesting level. Exponential cost; usable only at tiny
/// sizes as an unbiased-structure cross-check. Throws BudgetExceeded before
/// drawing anything when the predicted draw count passes budget_cap.
ReferenceSolution plain_mc_picard_reference(const HeatProblem& problem,
                                            int picard_iters,
                                            std::int64_t samples_per_expectation,
                                            const Seed256& seed,
                                            int outer_reps = 16,
                                            std::uint64_t budget_cap = 2'000'000'000ULL);

}  // namespace mlp

#endif  // MLP_ORACLE_HPP
