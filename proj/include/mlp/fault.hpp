#ifndef MLP_FAULT_HPP
#define MLP_FAULT_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mlp {

/// Non-finite value produced during an evaluation. Aborts the whole run;
/// dropping samples would bias the estimator.
class EvaluationFault : public std::runtime_error {
public:
  explicit EvaluationFault(const std::string& what) : std::runtime_error(what) {}
  EvaluationFault(const std::string& what, double t, std::vector<double> x,
                  double v)
      : std::runtime_error(what), t_(t), x_(std::move(x)), v_(v) {}

  double t() const { return t_; }
  const std::vector<double>& x() const { return x_; }
  double v() const { return v_; }

private:
  double t_ = 0.0;
  std::vector<double> x_;
  double v_ = 0.0;
};

}  // namespace mlp

#endif  // MLP_FAULT_HPP
