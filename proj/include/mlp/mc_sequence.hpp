#ifndef MLP_MC_SEQUENCE_HPP
#define MLP_MC_SEQUENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mlp {

/// Monte Carlo sample numbers M_1 < M_2 < ... with M_j <= kappa*j.
/// Level l of an order-n evaluation uses (M_j)^(n-l) samples.
struct McSequence {
  std::vector<std::int64_t> values;  // values[j-1] = M_j
  double kappa = 1.0;
  double ratio_bound = 2.0;  // bound on M_{j+1}/M_j, = 2*kappa when valid

  static McSequence identity(int j_max);
  static McSequence linear(double kappa, int j_max);  // M_j = ceil(kappa*j)
  static McSequence from_values(std::vector<std::int64_t> vals, double kappa);

  std::int64_t M(int j) const { return values.at(static_cast<std::size_t>(j - 1)); }
  int j_max() const { return static_cast<int>(values.size()); }
};

struct SequenceReport {
  bool strictly_increasing = false;
  bool kappa_bound = false;       // M_j <= kappa*j
  bool lower_bound = false;       // derived: j <= M_j
  bool ratio_bound_ok = false;    // derived: M_{j+1}/M_j <= 2*kappa
  bool pass = false;              // both hypotheses hold
  std::string detail;
};

SequenceReport validate_sequence(const McSequence& seq, int j_max);

}  // namespace mlp

#endif  // MLP_MC_SEQUENCE_HPP
