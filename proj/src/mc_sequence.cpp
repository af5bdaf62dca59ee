#include "mlp/mc_sequence.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mlp {

McSequence McSequence::identity(int j_max) {
  McSequence s;
  s.kappa = 1.0;
  s.ratio_bound = 2.0;
  for (int j = 1; j <= j_max; ++j) s.values.push_back(j);
  return s;
}

McSequence McSequence::linear(double kappa, int j_max) {
  if (kappa < 1.0) throw std::invalid_argument("McSequence: kappa must be >= 1");
  McSequence s;
  s.kappa = kappa;
  s.ratio_bound = 2.0 * kappa;
  for (int j = 1; j <= j_max; ++j)
    s.values.push_back(static_cast<std::int64_t>(std::ceil(kappa * j)));
  return s;
}

McSequence McSequence::from_values(std::vector<std::int64_t> vals, double kappa) {
  McSequence s;
  s.values = std::move(vals);
  s.kappa = kappa;
  s.ratio_bound = 2.0 * kappa;
  return s;
}

SequenceReport validate_sequence(const McSequence& seq, int j_max) {
  if (j_max < 1 || j_max > seq.j_max())
    throw std::out_of_range("validate_sequence: j_max outside sequence range");

  SequenceReport r;
  r.strictly_increasing = true;
  r.kappa_bound = true;
  r.lower_bound = true;
  r.ratio_bound_ok = true;
  std::ostringstream detail;

  for (int j = 1; j <= j_max; ++j) {
    const auto mj = seq.M(j);
    if (mj < 1) {
      r.kappa_bound = false;
      detail << "M_" << j << " < 1; ";
    }
    if (j < j_max && !(mj < seq.M(j + 1))) {
      r.strictly_increasing = false;
      detail << "M_" << j << " >= M_" << (j + 1) << "; ";
    }
    if (static_cast<double>(mj) > seq.kappa * j) {
      r.kappa_bound = false;
      detail << "M_" << j << " > kappa*" << j << "; ";
    }
    if (mj < j) {
      r.lower_bound = false;
      detail << "M_" << j << " < " << j << "; ";
    }
    if (j < j_max && static_cast<double>(seq.M(j + 1)) >
                         2.0 * seq.kappa * static_cast<double>(mj)) {
      r.ratio_bound_ok = false;
      detail << "M_" << (j + 1) << "/M_" << j << " > 2*kappa; ";
    }
  }
  r.pass = r.strictly_increasing && r.kappa_bound;
  r.detail = detail.str();
  return r;
}

}  // namespace mlp
