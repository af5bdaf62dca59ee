#ifndef MLP_HEAT_HPP
#define MLP_HEAT_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlp/cost_model.hpp"
#include "mlp/fault.hpp"
#include "mlp/mc_sequence.hpp"
#include "mlp/rng.hpp"

namespace mlp {

/// One semi-linear heat terminal-value problem:
///   d_t y + (1/2) Lap y + f(t, x, y) = 0 on (0,T) x R^d,  y(T, x) = g(x),
/// approximated at the point (0, xi) via the Feynman-Kac fixed point.
struct HeatProblem {
  std::string name;
  int d = 1;
  double T = 1.0;
  std::vector<double> xi;  // evaluation point, size d
  std::function<double(double, std::span<const double>, double)> f;
  std::function<double(std::span<const double>)> g;
  double L = 0.0;            // Lipschitz constant of f in its third argument
  double p = 0.0;            // growth exponent
  double growth_const = 1.0; // constant in max{|f(t,x,0)|, |g(x)|} <= const*max{1, |x|^p}

  // Closed-form quantities, when the problem has them. constant_C falls back
  // to Monte Carlo when the moments are absent; oracles and hypothesis checks
  // require `solution`.
  std::optional<double> g2_moment;          // E|g(xi + W_T)|^2
  std::optional<double> f2_time_integral;   // int_0^T E|f(t, xi + W_t, 0)|^2 dt
  std::function<double(double, std::span<const double>)> solution;  // y(t, x)

  double contraction_c() const { return (L * T) * (L * T); }
};

/// The noise one scheme sample consumes: a uniform time fraction u and the
/// Brownian value at u*tau; at level 0 also the value at tau from the same
/// path (w_at_t = w_at_ut + sqrt((1-u)*tau) * G).
struct LevelDraw {
  double u = 0.0;
  std::vector<double> w_at_ut;
  std::optional<std::vector<double>> w_at_t;
};

/// Draw order is canonical: u first, then the d normals for w_at_ut, then
/// (if requested) the d normals for the terminal increment.
LevelDraw sample_level_draw(StreamState& stream, int d, double tau,
                            bool need_terminal, DrawCounter& ledger);

/// One realization of Y_{n,j}^path(s, x). Serial reference implementation.
double eval_mlp(const HeatProblem& problem, const McSequence& seq, int n, int j,
                double s, std::span<const double> x, const IndexPath& root,
                const Seed256& seed, DrawCounter& ledger);

/// Same value bit for bit, with the top-level sample blocks spread over an
/// OpenMP team. threads <= 1 falls back to the serial path.
double eval_mlp_parallel(const HeatProblem& problem, const McSequence& seq,
                         int n, int j, double s, std::span<const double> x,
                         const IndexPath& root, const Seed256& seed,
                         DrawCounter& ledger, int threads);

struct DrawCount {
  std::uint64_t normals = 0;
  std::uint64_t uniforms = 0;
};

/// Exact number of draws one eval_mlp call performs:
///   N(-1) = N(0) = 0,
///   N(n) = M^n*d + sum_{l=0}^{n-1} M^(n-l) * (N(l) + N(l-1) + d),
///   V(n) = sum_{l=0}^{n-1} M^(n-l) * (V(l) + V(l-1) + 1).
DrawCount exact_draw_count(int d, const McSequence& seq, int n, int j);

/// Heat-equation cost parametrization: z = d and per-sample overhead d + 1,
/// so gamma*z matches the d + 1 term of the cost recursion exactly.
inline CostParams heat_cost_params(int d) {
  return CostParams{static_cast<double>(d),
                    (static_cast<double>(d) + 1.0) / static_cast<double>(d)};
}

/// Closed-form chain coefficients: alpha = beta = 1, gamma = 2 bounds the
/// d + 1 overhead by 2d and yields (5 M_n)^n d.
inline ClosedFormCoeffs heat_closed_form_coeffs() { return {1.0, 1.0, 2.0}; }

/// max{1, e^(LT) * [ sqrt(E|g(xi+W_T)|^2) + sqrt(T) * sqrt(int_0^T E|f(t,xi+W_t,0)|^2 dt) ]}.
/// Registered closed-form moments take precedence; otherwise plain Monte
/// Carlo with mc_samples draws per expectation (time integral via T * E[...]
/// at a uniform time).
double constant_C(const HeatProblem& problem, std::int64_t mc_samples,
                  const Seed256& seed);

}  // namespace mlp

#endif  // MLP_HEAT_HPP
