#include "mlp/cost_model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mlp {

double cost_bound_recursive(const CostParams& params, const McSequence& seq,
                            int n, int j) {
  if (n < -1) throw std::invalid_argument("cost_bound_recursive: n < -1");
  if (n <= 0) return 0.0;
  const double M = static_cast<double>(seq.M(j));
  const double overhead = params.gamma * params.z_cost;
  // cost[l+1] holds Cost_l, so cost[0] is Cost_{-1}.
  std::vector<double> cost(static_cast<std::size_t>(n) + 2, 0.0);
  for (int m = 1; m <= n; ++m) {
    double total = std::pow(M, m) * params.z_cost;
    for (int l = 0; l <= m - 1; ++l) {
      total += std::pow(M, m - l) *
               (cost[static_cast<std::size_t>(l) + 1] +
                cost[static_cast<std::size_t>(l)] + overhead);
    }
    cost[static_cast<std::size_t>(m) + 1] = total;
  }
  return cost[static_cast<std::size_t>(n) + 1];
}

double cost_bound_closed_form(const ClosedFormCoeffs& coeffs, double M, double z,
                              int n) {
  if (n <= 0) return 0.0;
  return std::pow((1.0 + coeffs.alpha + coeffs.beta + coeffs.gamma) * M, n) * z;
}

bool lemma_ab_check(double a, double b, int n) {
  if (a < 0.0 || b < 0.0 || n < 1)
    throw std::invalid_argument("lemma_ab_check: requires a,b >= 0 and n >= 1");
  const double lhs = (a * n + b) * std::pow(b, n - 1);
  const double rhs = std::pow(a + b, n);
  // Both sides are exact monomial evaluations; allow one ulp of slack so the
  // a = 0 equality case cannot flip on rounding.
  return lhs <= rhs * (1.0 + 1e-15) + 1e-300;
}

double error_bound(const ErrorBoundParams& params, const McSequence& seq, int n) {
  if (n < 1) throw std::invalid_argument("error_bound: n >= 1 required");
  const double M = static_cast<double>(seq.M(n));
  return params.C *
         std::pow(std::exp(params.kappa) * (1.0 + 4.0 * params.c) / M,
                  0.5 * static_cast<double>(n));
}

int theoretical_n_eps(const ErrorBoundParams& params, const McSequence& seq,
                      double eps) {
  const int horizon = seq.j_max();
  std::vector<double> bounds(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (int n = 1; n <= horizon; ++n)
    bounds[static_cast<std::size_t>(n)] = error_bound(params, seq, n);
  // suffix maxima: N_eps demands the bound stay below eps from n onward
  double suffix = 0.0;
  int best = 0;
  for (int n = horizon; n >= 1; --n) {
    suffix = std::max(suffix, bounds[static_cast<std::size_t>(n)]);
    if (suffix <= eps) best = n;
  }
  return best;
}

}  // namespace mlp
