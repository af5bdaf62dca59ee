#ifndef MLP_CSV_HPP
#define MLP_CSV_HPP

#include <cstdint>
#include <cstdio>
#include <string>

namespace mlp {

/// 17 significant digits: round-trips any double exactly.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_u64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace mlp

#endif  // MLP_CSV_HPP
