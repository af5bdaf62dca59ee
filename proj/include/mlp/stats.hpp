#ifndef MLP_STATS_HPP
#define MLP_STATS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mlp/heat.hpp"
#include "mlp/mc_sequence.hpp"
#include "mlp/oracle.hpp"
#include "mlp/rng.hpp"

namespace mlp {

/// Empirical error of the scheme against a reference value. The split
/// rmse^2 = bias^2 + variance is exact (population variance).
struct ErrorEstimate {
  double rmse = 0.0;
  double se_of_rmse = 0.0;
  int n_runs = 0;
  double bias = 0.0;
  double variance = 0.0;
  bool oracle_warning = false;  // oracle.uncertainty > 0.2 * rmse
};

ErrorEstimate empirical_error(const HeatProblem& problem, const McSequence& seq,
                              int n, int j, const ReferenceSolution& oracle,
                              int runs, const Seed256& seed, int threads = 1);

/// |mean((x-h)^2) - mean((x-xbar)^2) - (xbar-h)^2|; an algebraic identity for
/// the empirical measure, so the residual is pure rounding noise.
double bias_variance_residual(std::span<const double> samples, double h);

struct VarianceAdditivityReport {
  double var_of_sum = 0.0;
  double sum_of_vars = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = false;  // |difference| <= 4 se
};

/// Var(sum_k X_k) vs sum_k Var(X_k) for independently generated groups.
VarianceAdditivityReport variance_additivity_check(
    std::span<const std::vector<double>> groups);

/// Randomized evaluation functional sample: psi_0 evaluates at (0, xi) with
/// weight 1; psi_k (k >= 1) evaluates at (U*T, xi + W_{U*T}) with weight
/// sqrt(U^(k-1) / (k-1)!).
struct PsiSample {
  int k = 0;
  double u = 0.0;
  std::vector<double> w;  // W_{U*T}
  double weight = 1.0;
  double t = 0.0;               // evaluation time
  std::vector<double> point;    // evaluation point in space
};

PsiSample sample_psi(StreamState& stream, int k, const HeatProblem& problem,
                     DrawCounter& ledger);

struct HypothesisReport {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double se_lhs = 0.0;
  double se_rhs = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string config;
};

using TestFn = std::function<double(double, std::span<const double>)>;

/// E|psi_k(Phi_n(u, v, Z))|^2 <= (LT)^2 E|psi_{k+1}(u - v)|^2, estimated by
/// Monte Carlo with shared psi draws between the two sides.
HypothesisReport hypothesis_II_check(const HeatProblem& problem, const TestFn& u,
                                     const TestFn& v, int k, std::int64_t mc,
                                     const Seed256& seed);

/// E|psi_k(y - sum_l E[Phi_l(Y^0_l, Y^1_{l-1}, Z)])|^2
///   <= (LT)^2 E|psi_{k+1}(Y_{n-1,j} - y)|^2 on problems with closed-form y.
/// Inner expectations are estimated by nested Monte Carlo, which adds noise
/// to the left side; the comparison is a statistical test, not a proof.
HypothesisReport hypothesis_III_check(const HeatProblem& problem,
                                      const McSequence& seq, int n, int j, int k,
                                      std::int64_t mc, const Seed256& seed);

}  // namespace mlp

#endif  // MLP_STATS_HPP
