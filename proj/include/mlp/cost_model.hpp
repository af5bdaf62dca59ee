#ifndef MLP_COST_MODEL_HPP
#define MLP_COST_MODEL_HPP

#include "mlp/mc_sequence.hpp"

namespace mlp {

/// Cost recursion parameters: z_cost per noise realization, gamma*z_cost of
/// per-sample overhead.
struct CostParams {
  double z_cost = 1.0;
  double gamma = 0.0;
};

/// Evaluates the cost recursion with equality:
///   Cost(-1) = Cost(0) = 0,
///   Cost(n)  = M^n*z + sum_{l=0}^{n-1} M^(n-l) * (Cost(l) + Cost(l-1) + gamma*z).
double cost_bound_recursive(const CostParams& params, const McSequence& seq,
                            int n, int j);

struct ClosedFormCoeffs {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
};

/// (1 + alpha + beta + gamma)^n * M^n * z for n >= 1; 0 for n <= 0 to match
/// the recursion's base values.
double cost_bound_closed_form(const ClosedFormCoeffs& coeffs, double M, double z,
                              int n);

/// (a*n + b) * b^(n-1) <= (a + b)^n for a, b >= 0, n >= 1.
bool lemma_ab_check(double a, double b, int n);

struct ErrorBoundParams {
  double C = 1.0;      // >= 1
  double c = 0.0;      // contraction constant, (L*T)^2 in the heat case
  double kappa = 1.0;  // >= 1
};

/// C * (e^kappa * (1 + 4c) / M_n)^(n/2).
double error_bound(const ErrorBoundParams& params, const McSequence& seq, int n);

/// Smallest n with sup_{m >= n} bound(m) <= eps, scanning up to seq.j_max().
/// Returns 0 when no such n exists within the sequence range.
int theoretical_n_eps(const ErrorBoundParams& params, const McSequence& seq,
                      double eps);

}  // namespace mlp

#endif  // MLP_COST_MODEL_HPP
