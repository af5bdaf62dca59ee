#include "mlp/stats.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mlp/numeric.hpp"

namespace mlp {

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(std::span<const double> xs) {
  const MeanVar mv = mean_var(xs);
  MeanSe out;
  out.mean = mv.mean;
  if (xs.size() > 1)
    out.se = std::sqrt(mv.variance / static_cast<double>(xs.size() - 1));
  return out;
}

}  // namespace

ErrorEstimate empirical_error(const HeatProblem& problem, const McSequence& seq,
                              int n, int j, const ReferenceSolution& oracle,
                              int runs, const Seed256& seed, int threads) {
  if (runs < 2) throw std::invalid_argument("empirical_error: runs >= 2 required");
  std::vector<double> values(static_cast<std::size_t>(runs));
  std::exception_ptr fault;

#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads))
  for (int r = 0; r < runs; ++r) {
    try {
      DrawCounter ledger;
      const Seed256 run_seed = derive_subseed(seed, 1, r);
      values[static_cast<std::size_t>(r)] =
          eval_mlp(problem, seq, n, j, 0.0, problem.xi, IndexPath::root(0),
                   run_seed, ledger);
    } catch (...) {
#pragma omp critical
      if (!fault) fault = std::current_exception();
    }
  }
  if (fault) std::rethrow_exception(fault);

  const double h = oracle.value;
  ErrorEstimate est;
  est.n_runs = runs;
  const MeanVar mv = mean_var(values);
  est.bias = mv.mean - h;
  est.variance = mv.variance;

  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    sq[i] = (values[i] - h) * (values[i] - h);
  const MeanVar mse = mean_var(sq);
  est.rmse = std::sqrt(mse.mean);
  if (est.rmse > 0.0) {
    const double se_mse = std::sqrt(mse.variance / static_cast<double>(runs - 1));
    est.se_of_rmse = se_mse / (2.0 * est.rmse);  // delta method
  }
  est.oracle_warning = oracle.uncertainty > 0.2 * est.rmse;
  return est;
}

double bias_variance_residual(std::span<const double> samples, double h) {
  if (samples.size() < 2)
    throw std::invalid_argument("bias_variance_residual: >= 2 samples required");
  const MeanVar mv = mean_var(samples);
  double msq = 0.0;
  for (double v : samples) msq += (v - h) * (v - h);
  msq /= static_cast<double>(samples.size());
  const double bias = mv.mean - h;
  return std::fabs(msq - mv.variance - bias * bias);
}

VarianceAdditivityReport variance_additivity_check(
    std::span<const std::vector<double>> groups) {
  if (groups.empty())
    throw std::invalid_argument("variance_additivity_check: no groups");
  const std::size_t runs = groups.front().size();
  for (const auto& g : groups)
    if (g.size() != runs)
      throw std::invalid_argument("variance_additivity_check: ragged groups");
  if (runs < 2)
    throw std::invalid_argument("variance_additivity_check: >= 2 runs required");

  // variance of the sample variance via the 4th central moment
  auto var_with_se = [&](std::span<const double> xs) -> MeanSe {
    const MeanVar mv = mean_var(xs);
    double m4 = 0.0;
    for (double v : xs) {
      const double c = v - mv.mean;
      m4 += c * c * c * c;
    }
    m4 /= static_cast<double>(xs.size());
    MeanSe out;
    out.mean = mv.variance;
    out.se = std::sqrt(std::max(0.0, m4 - mv.variance * mv.variance) /
                       static_cast<double>(xs.size()));
    return out;
  };

  std::vector<double> sums(runs, 0.0);
  for (const auto& g : groups)
    for (std::size_t r = 0; r < runs; ++r) sums[r] += g[r];

  const MeanSe total = var_with_se(sums);
  double sum_of_vars = 0.0;
  double se_sq = total.se * total.se;
  for (const auto& g : groups) {
    const MeanSe gv = var_with_se(g);
    sum_of_vars += gv.mean;
    se_sq += gv.se * gv.se;
  }

  VarianceAdditivityReport rep;
  rep.var_of_sum = total.mean;
  rep.sum_of_vars = sum_of_vars;
  rep.se = std::sqrt(se_sq);
  rep.z = rep.se > 0.0 ? std::fabs(total.mean - sum_of_vars) / rep.se : 0.0;
  rep.pass = groups.size() == 1
                 ? total.mean == sum_of_vars
                 : std::fabs(total.mean - sum_of_vars) <= 4.0 * rep.se;
  return rep;
}

PsiSample sample_psi(StreamState& stream, int k, const HeatProblem& problem,
                     DrawCounter& ledger) {
  PsiSample s;
  s.k = k;
  if (k == 0) {
    s.t = 0.0;
    s.point = problem.xi;
    s.weight = 1.0;
    return s;
  }
  s.u = draw_uniform(stream, ledger);
  s.w.resize(static_cast<std::size_t>(problem.d));
  const double scale = std::sqrt(s.u * problem.T);
  for (auto& w : s.w) w = scale * draw_normal(stream, ledger);
  s.weight = std::sqrt(std::pow(s.u, k - 1) / factorial(k - 1));
  s.t = s.u * problem.T;
  s.point.resize(s.w.size());
  for (std::size_t i = 0; i < s.w.size(); ++i)
    s.point[i] = problem.xi[i] + s.w[i];
  return s;
}

namespace {

bool inequality_pass(double lhs, double rhs, double se_lhs, double se_rhs) {
  if (rhs <= 0.0) return lhs <= 4.0 * se_lhs + 1e-300;
  const double rel_se = std::sqrt(se_lhs * se_lhs + se_rhs * se_rhs) / rhs;
  return lhs <= rhs * (1.0 + 4.0 * rel_se);
}

}  // namespace

HypothesisReport hypothesis_II_check(const HeatProblem& problem, const TestFn& u,
                                     const TestFn& v, int k, std::int64_t mc,
                                     const Seed256& seed) {
  const int d = problem.d;
  const double T = problem.T;
  const double lt2 = problem.contraction_c();

  std::vector<double> lhs_samples(static_cast<std::size_t>(mc));
  std::vector<double> rhs_samples(static_cast<std::size_t>(mc));

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < mc; ++i) {
    DrawCounter scratch;
    // psi draw, shared between the two sides of the inequality
    StreamState psi_stream =
        derive_stream(seed, IndexPath({301, i}), StreamChannel::aux);
    const PsiSample psi1 = sample_psi(psi_stream, std::max(1, k), problem, scratch);

    double eval_t, weight_k;
    std::span<const double> eval_x;
    if (k == 0) {
      eval_t = 0.0;
      eval_x = problem.xi;
      weight_k = 1.0;
    } else {
      eval_t = psi1.t;
      eval_x = psi1.point;
      weight_k = psi1.weight;
    }
    const double tbar = T - eval_t;  // remaining time at the evaluation point

    // independent Z = (U, W) realization
    StreamState z_stream =
        derive_stream(seed, IndexPath({302, i}), StreamChannel::draw);
    const double u0 = draw_uniform(z_stream, scratch);
    std::vector<double> xp(static_cast<std::size_t>(d));
    const double scale = std::sqrt(u0 * tbar);
    for (int c = 0; c < d; ++c)
      xp[static_cast<std::size_t>(c)] =
          eval_x[static_cast<std::size_t>(c)] + scale * draw_normal(z_stream, scratch);
    const double tp = eval_t + u0 * tbar;

    const double phi =
        tbar * (problem.f(tp, xp, u(tp, xp)) - problem.f(tp, xp, v(tp, xp)));
    const double lhs_val = weight_k * phi;
    lhs_samples[static_cast<std::size_t>(i)] = lhs_val * lhs_val;

    // rhs evaluates psi_{k+1} at the shared psi point
    const double wk1 =
        std::sqrt(std::pow(psi1.u, k) / factorial(k));
    const double diff = u(psi1.t, psi1.point) - v(psi1.t, psi1.point);
    rhs_samples[static_cast<std::size_t>(i)] = lt2 * wk1 * wk1 * diff * diff;
  }

  const MeanSe lhs = mean_se(lhs_samples);
  const MeanSe rhs = mean_se(rhs_samples);
  HypothesisReport rep;
  rep.check = "hypothesis_II";
  rep.lhs = lhs.mean;
  rep.rhs = rhs.mean;
  rep.se_lhs = lhs.se;
  rep.se_rhs = rhs.se;
  rep.pass = inequality_pass(lhs.mean, rhs.mean, lhs.se, rhs.se);
  std::ostringstream cfg;
  cfg << "problem=" << problem.name << " k=" << k << " mc=" << mc;
  rep.config = cfg.str();
  return rep;
}

HypothesisReport hypothesis_III_check(const HeatProblem& problem,
                                      const McSequence& seq, int n, int j, int k,
                                      std::int64_t mc, const Seed256& seed) {
  if (!problem.solution)
    throw std::invalid_argument(
        "hypothesis_III_check: problem needs a closed-form solution");
  const int d = problem.d;
  const double T = problem.T;
  const double lt2 = problem.contraction_c();

  const std::int64_t inner = 100;
  const std::int64_t outer = std::max<std::int64_t>(200, mc / inner);

  std::vector<double> lhs_samples(static_cast<std::size_t>(outer));
  std::vector<double> rhs_samples(static_cast<std::size_t>(outer));
  std::exception_ptr fault;

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < outer; ++i) {
    try {
      DrawCounter scratch;
      StreamState psi_stream =
          derive_stream(seed, IndexPath({311, i}), StreamChannel::aux);
      const PsiSample psi = sample_psi(psi_stream, k, problem, scratch);
      const double tbar = T - psi.t;
      const Seed256 seed_i = derive_subseed(seed, 313, i);

      // nested Monte Carlo estimate of sum_l E[Phi_l(Y^0_l, Y^1_{l-1}, Z)]
      double phi_sum = 0.0;
      for (int l = 0; l <= n - 1; ++l) {
        double acc = 0.0;
        for (std::int64_t m = 0; m < inner; ++m) {
          const Seed256 seed_lm = derive_subseed(seed_i, l, m);
          StreamState z_stream =
              derive_stream(seed_lm, IndexPath({312}), StreamChannel::draw);
          const LevelDraw draw =
              sample_level_draw(z_stream, d, tbar, /*need_terminal=*/l == 0, scratch);
          const double tp = psi.t + draw.u * tbar;
          std::vector<double> xp(static_cast<std::size_t>(d));
          for (int c = 0; c < d; ++c)
            xp[static_cast<std::size_t>(c)] =
                psi.point[static_cast<std::size_t>(c)] +
                draw.w_at_ut[static_cast<std::size_t>(c)];
          if (l == 0) {
            std::vector<double> xg(static_cast<std::size_t>(d));
            for (int c = 0; c < d; ++c)
              xg[static_cast<std::size_t>(c)] =
                  psi.point[static_cast<std::size_t>(c)] +
                  (*draw.w_at_t)[static_cast<std::size_t>(c)];
            acc += problem.g(xg) + tbar * problem.f(tp, xp, 0.0);
          } else {
            DrawCounter ledger;
            const double y_hi = eval_mlp(problem, seq, l, j, tp, xp,
                                         IndexPath::root(0), seed_lm, ledger);
            const double y_lo = eval_mlp(problem, seq, l - 1, j, tp, xp,
                                         IndexPath::root(1), seed_lm, ledger);
            acc += tbar * (problem.f(tp, xp, y_hi) - problem.f(tp, xp, y_lo));
          }
        }
        phi_sum += acc / static_cast<double>(inner);
      }
      const double resid = problem.solution(psi.t, psi.point) - phi_sum;
      lhs_samples[static_cast<std::size_t>(i)] =
          psi.weight * psi.weight * resid * resid;

      // rhs sample: psi_{k+1} applied to Y_{n-1,j} - y
      StreamState psi2_stream =
          derive_stream(seed, IndexPath({314, i}), StreamChannel::aux);
      const PsiSample psi2 = sample_psi(psi2_stream, k + 1, problem, scratch);
      DrawCounter ledger;
      const Seed256 seed_rhs = derive_subseed(seed, 315, i);
      const double y_prev =
          eval_mlp(problem, seq, n - 1, j, psi2.t, psi2.point,
                   IndexPath::root(0), seed_rhs, ledger);
      const double diff = y_prev - problem.solution(psi2.t, psi2.point);
      rhs_samples[static_cast<std::size_t>(i)] =
          lt2 * psi2.weight * psi2.weight * diff * diff;
    } catch (...) {
#pragma omp critical
      if (!fault) fault = std::current_exception();
    }
  }
  if (fault) std::rethrow_exception(fault);

  const MeanSe lhs = mean_se(lhs_samples);
  const MeanSe rhs = mean_se(rhs_samples);
  HypothesisReport rep;
  rep.check = "hypothesis_III";
  rep.lhs = lhs.mean;
  rep.rhs = rhs.mean;
  rep.se_lhs = lhs.se;
  rep.se_rhs = rhs.se;
  rep.pass = inequality_pass(lhs.mean, rhs.mean, lhs.se, rhs.se);
  std::ostringstream cfg;
  cfg << "problem=" << problem.name << " n=" << n << " j=" << j << " k=" << k
      << " outer=" << outer << " inner=" << inner;
  rep.config = cfg.str();
  return rep;
}

}  // namespace mlp
