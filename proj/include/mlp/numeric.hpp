#ifndef MLP_NUMERIC_HPP
#define MLP_NUMERIC_HPP

#include <cstddef>
#include <span>

namespace mlp {

/// Recursive pairwise sum; rounding error grows like log(n) instead of n.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double acc = 0.0;
    for (double v : xs) acc += v;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Fixed block width for chunked accumulation. Block boundaries depend only
/// on the sample index, so serial and multi-threaded evaluation produce the
/// same summation tree bit for bit.
inline constexpr std::size_t kSumBlock = 64;

inline std::size_t block_count(std::size_t n) {
  return (n + kSumBlock - 1) / kSumBlock;
}

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // population normalization (divide by n)
};

inline MeanVar mean_var(std::span<const double> xs) {
  MeanVar mv;
  if (xs.empty()) return mv;
  mv.mean = pairwise_sum(xs) / static_cast<double>(xs.size());
  double acc = 0.0;
  for (double v : xs) acc += (v - mv.mean) * (v - mv.mean);
  mv.variance = acc / static_cast<double>(xs.size());
  return mv;
}

}  // namespace mlp

#endif  // MLP_NUMERIC_HPP
