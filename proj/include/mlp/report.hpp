#ifndef MLP_REPORT_HPP
#define MLP_REPORT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mlp/stats.hpp"

namespace mlp {

/// One row of the verification table. Structural checks reuse lhs/rhs for
/// their counters; statistical checks carry the estimated sides.
struct CheckRecord {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double se_lhs = 0.0;
  double se_rhs = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string config;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int threads = 1;
  std::int64_t mc_hypothesis = 200000;
  // fault injection hooks for exercising the failure paths end to end
  bool tamper_sequence = false;  // validates M = (1, 1, 2, ...) instead
  bool tamper_cost = false;      // drops the per-sample overhead from the bound
};

std::vector<CheckRecord> run_verify_suite(const VerifyOptions& options);

void write_verify_report(const std::string& path,
                         std::span<const CheckRecord> records,
                         std::uint64_t seed);

struct OracleTarget {
  std::string problem;
  std::string method;
  double value = 0.0;
  double uncertainty = 0.0;
  std::string config;
  std::uint64_t seed = 0;
};

void write_oracle_targets(const std::string& path,
                          std::span<const OracleTarget> targets);
/// Returns an empty list when the file does not exist.
std::vector<OracleTarget> read_oracle_targets(const std::string& path);

}  // namespace mlp

#endif  // MLP_REPORT_HPP
