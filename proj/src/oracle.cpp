#include "mlp/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mlp/numeric.hpp"

namespace mlp {

std::string to_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::closed_form: return "closed_form";
    case OracleMethod::picard_quadrature: return "picard_quadrature";
    case OracleMethod::plain_mc_picard: return "plain_mc_picard";
  }
  return "unknown";
}

ReferenceSolution closed_form_reference(const HeatProblem& problem) {
  if (!problem.solution)
    throw std::invalid_argument("closed_form_reference: problem \"" +
                                problem.name + "\" has no closed-form solution");
  return {problem.solution(0.0, problem.xi), 0.0, OracleMethod::closed_form};
}

std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n >= 1 required");
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  const double eps = 1e-14;
  const int m = (n + 1) / 2;
  double z = 0.0, pp = 0.0;
  for (int i = 0; i < m; ++i) {
    // Stroud-Secrest style starting guesses, then Newton on the orthonormal
    // Hermite recurrence.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[static_cast<std::size_t>(i) - 2];
    }
    for (int it = 0; it < 100; ++it) {
      double p1 = 0.7511255444649425;  // pi^(-1/4)
      double p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / k) * p2 - std::sqrt((k - 1.0) / k) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) <= eps) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(n - 1 - i)] = -z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
  return {std::move(x), std::move(w)};
}

namespace {

constexpr double kInvSqrtPi = 0.5641895835477563;

struct PicardGridResult {
  double value = 0.0;     // y(0, xi) after the final iteration
  double last_gap = 0.0;  // |y_iters - y_{iters-1}|(0, xi)
};

// One full fixed-point solve on an (n_t x n_x) grid.
PicardGridResult picard_on_grid(const HeatProblem& prob, int n_t, int n_x,
                                double half_width, int quad_nodes, int iters) {
  const double T = prob.T;
  const double xi = prob.xi[0];
  const double dt = T / (n_t - 1);
  const double dx = 2.0 * half_width / (n_x - 1);
  const double x_lo = xi - half_width;
  auto [nodes, weights] = gauss_hermite(quad_nodes);

  auto x_of = [&](int m) { return x_lo + m * dx; };
  auto t_of = [&](int i) { return i * dt; };

  std::vector<double> y(static_cast<std::size_t>(n_t) * n_x, 0.0);
  std::vector<double> y_next(y.size(), 0.0);

  auto interp = [&](const std::vector<double>& grid, int i, double q) {
    // linear in x, clamped outside the box
    double rel = (q - x_lo) / dx;
    if (rel <= 0.0) return grid[static_cast<std::size_t>(i) * n_x];
    if (rel >= n_x - 1) return grid[static_cast<std::size_t>(i) * n_x + n_x - 1];
    const int m0 = static_cast<int>(rel);
    const double frac = rel - m0;
    const double* row = grid.data() + static_cast<std::size_t>(i) * n_x;
    return row[m0] * (1.0 - frac) + row[m0 + 1] * frac;
  };

  // Terminal term E[g(x + W_{T-t})] does not change across iterations.
  std::vector<double> terminal(y.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < n_x; ++m) {
    std::vector<double> pt(1);
    for (int i = 0; i < n_t; ++i) {
      const double delta = T - t_of(i);
      double acc = 0.0;
      if (delta <= 0.0) {
        pt[0] = x_of(m);
        acc = prob.g(pt);
      } else {
        const double scale = std::sqrt(2.0 * delta);
        for (int q = 0; q < quad_nodes; ++q) {
          pt[0] = x_of(m) + scale * nodes[static_cast<std::size_t>(q)];
          acc += weights[static_cast<std::size_t>(q)] * prob.g(pt);
        }
        acc *= kInvSqrtPi;
      }
      terminal[static_cast<std::size_t>(i) * n_x + m] = acc;
    }
  }

  const std::size_t center = static_cast<std::size_t>((n_x - 1) / 2);
  double prev_value = 0.0;
  double last_gap = 0.0;
  double prev_sup_gap = 0.0;
  int growing = 0;

  for (int it = 0; it < iters; ++it) {
#pragma omp parallel for schedule(static)
    for (int m = 0; m < n_x; ++m) {
      std::vector<double> pt(1);
      for (int i = 0; i < n_t; ++i) {
        // integrand F(s_r) = E[f(s_r, x + W_{s_r - t_i}, y(s_r, x + W_{s_r - t_i}))]
        double integral = 0.0;
        for (int r = i; r < n_t; ++r) {
          const double delta = t_of(r) - t_of(i);
          double fr;
          if (delta <= 0.0) {
            pt[0] = x_of(m);
            fr = prob.f(t_of(r), pt, y[static_cast<std::size_t>(r) * n_x + m]);
          } else {
            const double scale = std::sqrt(2.0 * delta);
            double acc = 0.0;
            for (int q = 0; q < quad_nodes; ++q) {
              const double xq = x_of(m) + scale * nodes[static_cast<std::size_t>(q)];
              pt[0] = xq;
              acc += weights[static_cast<std::size_t>(q)] *
                     prob.f(t_of(r), pt, interp(y, r, xq));
            }
            fr = acc * kInvSqrtPi;
          }
          const double tw = (r == i || r == n_t - 1) ? 0.5 * dt : dt;
          integral += tw * fr;
        }
        y_next[static_cast<std::size_t>(i) * n_x + m] =
            terminal[static_cast<std::size_t>(i) * n_x + m] + integral;
      }
    }

    double sup_gap = 0.0;
    for (std::size_t idx = 0; idx < y.size(); ++idx)
      sup_gap = std::max(sup_gap, std::fabs(y_next[idx] - y[idx]));
    // ignore round-off jitter once the iteration has converged
    const double floor = 1e-12 * (1.0 + std::fabs(prev_value));
    if (it > 0 && sup_gap > prev_sup_gap && sup_gap > floor) {
      if (++growing >= 3)
        throw EvaluationFault(
            "picard_quadrature_reference: iteration gap grew for 3 consecutive "
            "iterations (non-contraction)");
    } else {
      growing = 0;
    }
    prev_sup_gap = sup_gap;

    y.swap(y_next);
    const double value = y[center];  // row i = 0
    last_gap = std::fabs(value - prev_value);
    prev_value = value;
  }
  return {prev_value, last_gap};
}

}  // namespace

ReferenceSolution picard_quadrature_reference(const HeatProblem& problem,
                                              const QuadratureGrid& grid) {
  if (problem.d != 1)
    throw std::invalid_argument("picard_quadrature_reference: d must be 1");
  if (grid.n_t < 3 || grid.n_x < 3 || grid.n_x % 2 == 0)
    throw std::invalid_argument(
        "picard_quadrature_reference: need n_t >= 3 and odd n_x >= 3");
  const double hw =
      grid.x_half_width > 0.0 ? grid.x_half_width : 8.0 * std::sqrt(problem.T);

  const PicardGridResult full = picard_on_grid(
      problem, grid.n_t, grid.n_x, hw, grid.quad_nodes, grid.iters);
  const PicardGridResult half =
      picard_on_grid(problem, (grid.n_t - 1) / 2 + 1, (grid.n_x - 1) / 2 + 1, hw,
                     grid.quad_nodes, grid.iters);

  ReferenceSolution out;
  out.method = OracleMethod::picard_quadrature;
  out.value = full.value;
  out.uncertainty = full.last_gap + std::fabs(half.value - full.value);
  return out;
}

namespace {

// Draws per evaluation of one Picard level: each sample costs one uniform,
// 2d normals, and a level below.
std::uint64_t plain_mc_draws(int iters, std::int64_t samples, int d) {
  std::uint64_t per_level = 0;
  for (int k = 1; k <= iters; ++k)
    per_level = static_cast<std::uint64_t>(samples) *
                (1 + 2 * static_cast<std::uint64_t>(d) + per_level);
  return per_level;
}

double plain_mc_eval(const HeatProblem& prob, int k, std::int64_t samples,
                     double t, std::span<const double> x, IndexPath& path,
                     const Seed256& seed, DrawCounter& ledger) {
  if (k <= 0) return 0.0;
  const double tau = prob.T - t;
  const int d = prob.d;
  double acc = 0.0;
  std::vector<double> xg(static_cast<std::size_t>(d));
  std::vector<double> xp(static_cast<std::size_t>(d));
  for (std::int64_t i = 1; i <= samples; ++i) {
    path.extend(k, i);
    StreamState stream = derive_stream(seed, path, StreamChannel::draw);
    const LevelDraw draw = sample_level_draw(stream, d, tau, true, ledger);
    for (int c = 0; c < d; ++c) {
      xg[static_cast<std::size_t>(c)] =
          x[static_cast<std::size_t>(c)] + (*draw.w_at_t)[static_cast<std::size_t>(c)];
      xp[static_cast<std::size_t>(c)] =
          x[static_cast<std::size_t>(c)] + draw.w_at_ut[static_cast<std::size_t>(c)];
    }
    const double tp = t + draw.u * tau;
    const double inner = plain_mc_eval(prob, k - 1, samples, tp, xp, path, seed, ledger);
    acc += prob.g(xg) + tau * prob.f(tp, xp, inner);
    path.pop();
  }
  return acc / static_cast<double>(samples);
}

}  // namespace

ReferenceSolution plain_mc_picard_reference(const HeatProblem& problem,
                                            int picard_iters,
                                            std::int64_t samples_per_expectation,
                                            const Seed256& seed, int outer_reps,
                                            std::uint64_t budget_cap) {
  if (picard_iters < 1)
    throw std::invalid_argument("plain_mc_picard_reference: picard_iters >= 1");
  const std::uint64_t predicted =
      static_cast<std::uint64_t>(outer_reps) *
      plain_mc_draws(picard_iters, samples_per_expectation, problem.d);
  if (predicted > budget_cap)
    throw BudgetExceeded("plain_mc_picard_reference: predicted " +
                         std::to_string(predicted) + " draws exceeds cap " +
                         std::to_string(budget_cap));

  std::vector<double> reps(static_cast<std::size_t>(outer_reps));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < outer_reps; ++r) {
    DrawCounter ledger;
    IndexPath path = IndexPath::root(0);
    const Seed256 rep_seed = derive_subseed(seed, 201, r);
    reps[static_cast<std::size_t>(r)] =
        plain_mc_eval(problem, picard_iters, samples_per_expectation, 0.0,
                      problem.xi, path, rep_seed, ledger);
  }
  const MeanVar mv = mean_var(reps);
  ReferenceSolution out;
  out.method = OracleMethod::plain_mc_picard;
  out.value = mv.mean;
  out.uncertainty =
      3.0 * std::sqrt(mv.variance / std::max(1, outer_reps - 1));
  return out;
}

}  // namespace mlp
