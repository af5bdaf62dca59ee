#ifndef MLP_GMLP_HPP
#define MLP_GMLP_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "mlp/fault.hpp"
#include "mlp/mc_sequence.hpp"
#include "mlp/numeric.hpp"
#include "mlp/rng.hpp"

namespace mlp {

/// Generalised MLP instance over an element type E and noise type Z.
/// phi(l, u, v, z) is the level-l dynamics map; for l >= 1 it must vanish
/// when u == v (difference form). z_sampler draws one Z realization.
template <class E, class Z>
struct GmlpInstance {
  std::function<E(int, const E&, const E&, const Z&)> phi;
  std::function<Z(StreamState&, DrawCounter&)> z_sampler;
  E base_prev{};  // value of Y_{-1,j}
  E base_zero{};  // value of Y_{0,j}
};

namespace detail {

template <class E, class Z>
E gmlp_eval_rec(const GmlpInstance<E, Z>& inst, const McSequence& seq, int n,
                int j, IndexPath& path, const Seed256& seed,
                DrawCounter& ledger) {
  if (n == -1) return inst.base_prev;
  if (n == 0) return inst.base_zero;

  const std::int64_t M = seq.M(j);
  std::vector<E> level_sums;
  level_sums.reserve(static_cast<std::size_t>(n));
  for (int l = 0; l <= n - 1; ++l) {
    std::int64_t count = 1;
    for (int e = 0; e < n - l; ++e) count *= M;
    std::vector<E> samples;
    samples.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 1; i <= count; ++i) {
      path.extend(l, i);
      StreamState zs = derive_stream(seed, path, StreamChannel::draw);
      const Z z = inst.z_sampler(zs, ledger);
      const E hi = gmlp_eval_rec(inst, seq, l, j, path, seed, ledger);
      path.pop();
      path.extend(-l, i);
      const E lo = gmlp_eval_rec(inst, seq, l - 1, j, path, seed, ledger);
      path.pop();
      samples.push_back(inst.phi(l, hi, lo, z));
      if constexpr (std::is_floating_point_v<E>) {
        if (!std::isfinite(samples.back()))
          throw EvaluationFault("gmlp_evaluate: non-finite phi output");
      }
    }
    E sum{};
    for (std::size_t b = 0; b * kSumBlock < samples.size(); ++b) {
      E block{};
      const std::size_t hi_idx =
          std::min(samples.size(), (b + 1) * kSumBlock);
      for (std::size_t idx = b * kSumBlock; idx < hi_idx; ++idx)
        block = block + samples[idx];
      sum = sum + block;
    }
    level_sums.push_back(sum * (1.0 / static_cast<double>(count)));
  }
  E total{};
  for (const E& s : level_sums) total = total + s;
  return total;
}

}  // namespace detail

/// One realization of Y_{n,j}^path. Pure in (seed, path): a repeated call
/// returns the identical value.
template <class E, class Z>
E gmlp_evaluate(const GmlpInstance<E, Z>& inst, const McSequence& seq, int n,
                int j, const IndexPath& root, const Seed256& seed,
                DrawCounter& ledger) {
  if (n < -1) throw std::invalid_argument("gmlp_evaluate: n >= -1 required");
  if (j < 1 || j > seq.j_max())
    throw std::invalid_argument("gmlp_evaluate: j outside sequence range");
  if (root.empty()) throw std::invalid_argument("gmlp_evaluate: empty path");
  IndexPath path = root;
  return detail::gmlp_eval_rec(inst, seq, n, j, path, seed, ledger);
}

/// Scalar elements: double already supports the required operations.
using ScalarInstance = GmlpInstance<double, double>;

}  // namespace mlp

#endif  // MLP_GMLP_HPP
