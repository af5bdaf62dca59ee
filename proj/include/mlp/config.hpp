#ifndef MLP_CONFIG_HPP
#define MLP_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlp/problems.hpp"

namespace mlp {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One experiment configuration. Unknown JSON keys are rejected so a typo
/// cannot silently fall back to a default.
struct RunConfig {
  std::string problem_name = "quadratic";
  ProblemParams problem_params;
  std::string sequence_rule = "identity";  // "identity" | "linear-kappa"
  double kappa = 1.0;
  int n_max = 4;
  int runs = 100;
  std::uint64_t seed = 42;
  double delta = 0.5;
  std::string output_dir = ".";
  int threads = 0;  // 0: machine parallelism
  std::vector<int> d_sweep = {1, 5, 10, 20};
  std::vector<double> epsilons = {1.0, 0.5, 0.25};
  bool allow_large_n = false;  // lifts the n_max <= 6 guard

  HeatProblem make_heat_problem() const;
  McSequence make_sequence(int j_max) const;
  void validate() const;
};

RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config_file(const std::string& path);

}  // namespace mlp

#endif  // MLP_CONFIG_HPP
