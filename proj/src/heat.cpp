#include "mlp/heat.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "mlp/numeric.hpp"

namespace mlp {

LevelDraw sample_level_draw(StreamState& stream, int d, double tau,
                            bool need_terminal, DrawCounter& ledger) {
  if (tau < 0.0) throw std::invalid_argument("sample_level_draw: tau < 0");
  LevelDraw draw;
  draw.u = draw_uniform(stream, ledger);
  draw.w_at_ut.resize(static_cast<std::size_t>(d));
  const double scale_u = std::sqrt(draw.u * tau);
  for (auto& w : draw.w_at_ut) w = scale_u * draw_normal(stream, ledger);
  if (need_terminal) {
    draw.w_at_t.emplace(static_cast<std::size_t>(d));
    const double scale_rest = std::sqrt((1.0 - draw.u) * tau);
    for (std::size_t k = 0; k < draw.w_at_t->size(); ++k)
      (*draw.w_at_t)[k] = draw.w_at_ut[k] + scale_rest * draw_normal(stream, ledger);
  }
  return draw;
}

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int e = 0; e < exp; ++e) r *= base;
  return r;
}

class HeatEvaluator {
public:
  HeatEvaluator(const HeatProblem& prob, const McSequence& seq, int j,
                const Seed256& seed)
      : prob_(prob), seq_(seq), j_(j), seed_(seed) {}

  double evaluate(int n, double s, std::span<const double> x,
                  const IndexPath& root, DrawCounter& ledger, int threads);

private:
  double apply_f(double t, std::span<const double> x, double v) const {
    const double r = prob_.f(t, x, v);
    if (!std::isfinite(r))
      throw EvaluationFault("eval_mlp: f returned non-finite value", t,
                            {x.begin(), x.end()}, v);
    return r;
  }
  double apply_g(std::span<const double> x) const {
    const double r = prob_.g(x);
    if (!std::isfinite(r))
      throw EvaluationFault("eval_mlp: g returned non-finite value", prob_.T,
                            {x.begin(), x.end()}, 0.0);
    return r;
  }

  struct BlockSums {
    double f = 0.0;
    double g = 0.0;
  };

  // Samples i in [i_lo, i_hi] of level l for a node at (s, x).
  BlockSums eval_block(int l, std::int64_t i_lo, std::int64_t i_hi, double s,
                       std::span<const double> x, double tau, IndexPath& path,
                       DrawCounter& ledger);

  double eval_node(int n, double s, std::span<const double> x, IndexPath& path,
                   DrawCounter& ledger);

  const HeatProblem& prob_;
  const McSequence& seq_;
  int j_;
  const Seed256& seed_;
};

HeatEvaluator::BlockSums HeatEvaluator::eval_block(
    int l, std::int64_t i_lo, std::int64_t i_hi, double s,
    std::span<const double> x, double tau, IndexPath& path,
    DrawCounter& ledger) {
  const int d = prob_.d;
  double fbuf[kSumBlock];
  double gbuf[kSumBlock];
  std::size_t fill = 0;
  std::vector<double> xp(static_cast<std::size_t>(d));

  for (std::int64_t i = i_lo; i <= i_hi; ++i, ++fill) {
    path.extend(l, i);
    StreamState stream = derive_stream(seed_, path, StreamChannel::draw);
    const LevelDraw draw =
        sample_level_draw(stream, d, tau, /*need_terminal=*/l == 0, ledger);
    const double tp = s + draw.u * tau;
    for (int k = 0; k < d; ++k)
      xp[static_cast<std::size_t>(k)] =
          x[static_cast<std::size_t>(k)] + draw.w_at_ut[static_cast<std::size_t>(k)];

    if (l == 0) {
      // The same Brownian path supplies W_{u tau} for f and W_tau for g.
      std::vector<double> xg(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k)
        xg[static_cast<std::size_t>(k)] =
            x[static_cast<std::size_t>(k)] + (*draw.w_at_t)[static_cast<std::size_t>(k)];
      gbuf[fill] = apply_g(xg);
      fbuf[fill] = apply_f(tp, xp, 0.0);  // Y_{0,j} == 0
      path.pop();
    } else {
      const double y_hi = eval_node(l, tp, xp, path, ledger);
      path.pop();
      path.extend(-l, i);
      const double y_lo = eval_node(l - 1, tp, xp, path, ledger);
      path.pop();
      // Both f evaluations receive the identical space-time point.
      fbuf[fill] = apply_f(tp, xp, y_hi) - apply_f(tp, xp, y_lo);
      gbuf[fill] = 0.0;
    }
  }
  BlockSums out;
  out.f = pairwise_sum(std::span<const double>(fbuf, fill));
  out.g = pairwise_sum(std::span<const double>(gbuf, fill));
  return out;
}

double HeatEvaluator::eval_node(int n, double s, std::span<const double> x,
                                IndexPath& path, DrawCounter& ledger) {
  if (n <= 0) return 0.0;
  const double tau = prob_.T - s;
  const std::int64_t M = seq_.M(j_);

  double total = 0.0;
  double g_term = 0.0;
  for (int l = 0; l <= n - 1; ++l) {
    const std::int64_t count = ipow(M, n - l);
    const std::size_t nblocks = block_count(static_cast<std::size_t>(count));
    std::vector<double> fblocks(nblocks);
    std::vector<double> gblocks(l == 0 ? nblocks : 0);
    for (std::size_t b = 0; b < nblocks; ++b) {
      const std::int64_t i_lo = static_cast<std::int64_t>(b * kSumBlock) + 1;
      const std::int64_t i_hi =
          std::min<std::int64_t>(count, static_cast<std::int64_t>((b + 1) * kSumBlock));
      const BlockSums sums = eval_block(l, i_lo, i_hi, s, x, tau, path, ledger);
      fblocks[b] = sums.f;
      if (l == 0) gblocks[b] = sums.g;
    }
    const double inv = 1.0 / static_cast<double>(count);
    if (l == 0) g_term = pairwise_sum(gblocks) * inv;
    total += tau * pairwise_sum(fblocks) * inv;
  }
  return g_term + total;
}

double HeatEvaluator::evaluate(int n, double s, std::span<const double> x,
                               const IndexPath& root, DrawCounter& ledger,
                               int threads) {
  if (n <= 0) return 0.0;
  if (threads <= 1) {
    IndexPath path = root;
    return eval_node(n, s, x, path, ledger);
  }

  const double tau = prob_.T - s;
  const std::int64_t M = seq_.M(j_);
  double total = 0.0;
  double g_term = 0.0;
  for (int l = 0; l <= n - 1; ++l) {
    const std::int64_t count = ipow(M, n - l);
    const std::size_t nblocks = block_count(static_cast<std::size_t>(count));
    std::vector<double> fblocks(nblocks);
    std::vector<double> gblocks(l == 0 ? nblocks : 0);
    std::vector<DrawCounter> ledgers(nblocks);
    std::exception_ptr fault;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
      try {
        IndexPath path = root;
        const std::int64_t i_lo = b * static_cast<std::int64_t>(kSumBlock) + 1;
        const std::int64_t i_hi = std::min<std::int64_t>(
            count, (b + 1) * static_cast<std::int64_t>(kSumBlock));
        const BlockSums sums = eval_block(
            l, i_lo, i_hi, s, x, tau, path, ledgers[static_cast<std::size_t>(b)]);
        fblocks[static_cast<std::size_t>(b)] = sums.f;
        if (l == 0) gblocks[static_cast<std::size_t>(b)] = sums.g;
      } catch (...) {
#pragma omp critical
        if (!fault) fault = std::current_exception();
      }
    }
    if (fault) std::rethrow_exception(fault);

    for (const DrawCounter& c : ledgers) ledger += c;
    const double inv = 1.0 / static_cast<double>(count);
    if (l == 0) g_term = pairwise_sum(gblocks) * inv;
    total += tau * pairwise_sum(fblocks) * inv;
  }
  return g_term + total;
}

void check_eval_args(const HeatProblem& problem, const McSequence& seq, int n,
                     int j, double s, std::span<const double> x,
                     const IndexPath& root) {
  if (n < -1) throw std::invalid_argument("eval_mlp: n >= -1 required");
  if (j < 1 || j > seq.j_max())
    throw std::invalid_argument("eval_mlp: j outside sequence range");
  if (s < 0.0 || s > problem.T)
    throw std::invalid_argument("eval_mlp: s outside [0, T]");
  if (static_cast<int>(x.size()) != problem.d)
    throw std::invalid_argument("eval_mlp: x has wrong dimension");
  if (root.empty()) throw std::invalid_argument("eval_mlp: empty path");
}

}  // namespace

double eval_mlp(const HeatProblem& problem, const McSequence& seq, int n, int j,
                double s, std::span<const double> x, const IndexPath& root,
                const Seed256& seed, DrawCounter& ledger) {
  check_eval_args(problem, seq, n, j, s, x, root);
  HeatEvaluator ev(problem, seq, j, seed);
  return ev.evaluate(n, s, x, root, ledger, 1);
}

double eval_mlp_parallel(const HeatProblem& problem, const McSequence& seq,
                         int n, int j, double s, std::span<const double> x,
                         const IndexPath& root, const Seed256& seed,
                         DrawCounter& ledger, int threads) {
  check_eval_args(problem, seq, n, j, s, x, root);
  HeatEvaluator ev(problem, seq, j, seed);
  return ev.evaluate(n, s, x, root, ledger, threads);
}

DrawCount exact_draw_count(int d, const McSequence& seq, int n, int j) {
  if (n < -1) throw std::invalid_argument("exact_draw_count: n >= -1 required");
  if (n <= 0) return {};
  const std::int64_t M = seq.M(j);
  // normals[m+1] = N(m), uniforms[m+1] = V(m); index 0 is level -1.
  std::vector<std::uint64_t> normals(static_cast<std::size_t>(n) + 2, 0);
  std::vector<std::uint64_t> uniforms(static_cast<std::size_t>(n) + 2, 0);
  const auto ud = static_cast<std::uint64_t>(d);
  for (int m = 1; m <= n; ++m) {
    std::uint64_t nsum = static_cast<std::uint64_t>(ipow(M, m)) * ud;
    std::uint64_t vsum = 0;
    for (int l = 0; l <= m - 1; ++l) {
      const auto mult = static_cast<std::uint64_t>(ipow(M, m - l));
      nsum += mult * (normals[static_cast<std::size_t>(l) + 1] +
                      normals[static_cast<std::size_t>(l)] + ud);
      vsum += mult * (uniforms[static_cast<std::size_t>(l) + 1] +
                      uniforms[static_cast<std::size_t>(l)] + 1);
    }
    normals[static_cast<std::size_t>(m) + 1] = nsum;
    uniforms[static_cast<std::size_t>(m) + 1] = vsum;
  }
  return {normals[static_cast<std::size_t>(n) + 1],
          uniforms[static_cast<std::size_t>(n) + 1]};
}

double constant_C(const HeatProblem& problem, std::int64_t mc_samples,
                  const Seed256& seed) {
  if (mc_samples < 1000)
    throw std::invalid_argument("constant_C: mc_samples >= 1000 required");
  const int d = problem.d;
  const double T = problem.T;
  DrawCounter scratch;

  double g2;
  if (problem.g2_moment) {
    g2 = *problem.g2_moment;
  } else {
    StreamState s = derive_stream(seed, IndexPath({101}), StreamChannel::aux);
    std::vector<double> xw(static_cast<std::size_t>(d));
    double acc = 0.0;
    const double sT = std::sqrt(T);
    for (std::int64_t i = 0; i < mc_samples; ++i) {
      for (int k = 0; k < d; ++k)
        xw[static_cast<std::size_t>(k)] =
            problem.xi[static_cast<std::size_t>(k)] + sT * draw_normal(s, scratch);
      const double gv = problem.g(xw);
      acc += gv * gv;
    }
    g2 = acc / static_cast<double>(mc_samples);
  }

  double f2int;
  if (problem.f2_time_integral) {
    f2int = *problem.f2_time_integral;
  } else {
    StreamState s = derive_stream(seed, IndexPath({102}), StreamChannel::aux);
    std::vector<double> xw(static_cast<std::size_t>(d));
    double acc = 0.0;
    for (std::int64_t i = 0; i < mc_samples; ++i) {
      const double u = draw_uniform(s, scratch);
      const double scale = std::sqrt(u * T);
      for (int k = 0; k < d; ++k)
        xw[static_cast<std::size_t>(k)] =
            problem.xi[static_cast<std::size_t>(k)] + scale * draw_normal(s, scratch);
      const double fv = problem.f(u * T, xw, 0.0);
      acc += fv * fv;
    }
    f2int = T * acc / static_cast<double>(mc_samples);
  }

  if (!std::isfinite(g2) || !std::isfinite(f2int))
    throw EvaluationFault("constant_C: non-finite moment estimate");
  return std::max(1.0, std::exp(problem.L * T) *
                           (std::sqrt(g2) + std::sqrt(T) * std::sqrt(f2int)));
}

}  // namespace mlp
