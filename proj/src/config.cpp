#include "mlp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mlp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw ConfigError(origin + ": " + msg);
}

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& origin, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const auto& key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) fail(origin, "unknown key \"" + it.key() + "\" in " + where);
  }
}

// nlohmann reports a byte offset; turn it into a line/column diagnostic.
std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double finite_number(const json& v, const std::string& origin,
                     const std::string& key) {
  if (!v.is_number()) fail(origin, "\"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(origin, "\"" + key + "\" must be finite");
  return x;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << col << ": " << e.what();
    throw ConfigError(msg.str());
  }
  if (!root.is_object()) fail(origin, "top level must be a JSON object");

  reject_unknown(root,
                 {"problem", "sequence", "n_max", "runs", "seed", "delta",
                  "output_dir", "threads", "d_sweep", "epsilons", "allow_large_n"},
                 origin, "top level");

  RunConfig cfg;
  if (root.contains("problem")) {
    const json& p = root["problem"];
    if (!p.is_object()) fail(origin, "\"problem\" must be an object");
    reject_unknown(p, {"name", "d", "T", "a", "c0", "xi"}, origin, "problem");
    if (p.contains("name")) {
      if (!p["name"].is_string()) fail(origin, "problem name must be a string");
      cfg.problem_name = p["name"].get<std::string>();
    }
    if (p.contains("d")) {
      if (!p["d"].is_number_integer() || p["d"].get<int>() < 1)
        fail(origin, "problem d must be a positive integer");
      cfg.problem_params.d = p["d"].get<int>();
    }
    if (p.contains("T")) {
      const double T = finite_number(p["T"], origin, "T");
      if (T <= 0.0) fail(origin, "problem T must be > 0");
      cfg.problem_params.T = T;
    }
    if (p.contains("a")) {
      cfg.problem_params.a = finite_number(p["a"], origin, "a");
      cfg.problem_params.has_a = true;
    }
    if (p.contains("c0")) {
      cfg.problem_params.c0 = finite_number(p["c0"], origin, "c0");
      cfg.problem_params.has_c0 = true;
    }
    if (p.contains("xi")) {
      if (!p["xi"].is_array()) fail(origin, "problem xi must be an array");
      for (const auto& v : p["xi"])
        cfg.problem_params.xi.push_back(finite_number(v, origin, "xi"));
    }
  }
  if (root.contains("sequence")) {
    const json& s = root["sequence"];
    if (!s.is_object()) fail(origin, "\"sequence\" must be an object");
    reject_unknown(s, {"rule", "kappa"}, origin, "sequence");
    if (s.contains("rule")) {
      if (!s["rule"].is_string()) fail(origin, "sequence rule must be a string");
      cfg.sequence_rule = s["rule"].get<std::string>();
      if (cfg.sequence_rule != "identity" && cfg.sequence_rule != "linear-kappa")
        fail(origin, "sequence rule must be \"identity\" or \"linear-kappa\"");
    }
    if (s.contains("kappa")) {
      cfg.kappa = finite_number(s["kappa"], origin, "kappa");
      if (cfg.kappa < 1.0) fail(origin, "sequence kappa must be >= 1");
    }
  }
  if (root.contains("n_max")) {
    if (!root["n_max"].is_number_integer())
      fail(origin, "\"n_max\" must be an integer");
    cfg.n_max = root["n_max"].get<int>();
  }
  if (root.contains("runs")) {
    if (!root["runs"].is_number_integer())
      fail(origin, "\"runs\" must be an integer");
    cfg.runs = root["runs"].get<int>();
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
      fail(origin, "\"seed\" must be an integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("delta")) {
    cfg.delta = finite_number(root["delta"], origin, "delta");
    if (cfg.delta <= 0.0) fail(origin, "\"delta\" must be > 0");
  }
  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string())
      fail(origin, "\"output_dir\" must be a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
  }
  if (root.contains("threads")) {
    if (!root["threads"].is_number_integer())
      fail(origin, "\"threads\" must be an integer");
    cfg.threads = root["threads"].get<int>();
  }
  if (root.contains("d_sweep")) {
    if (!root["d_sweep"].is_array()) fail(origin, "\"d_sweep\" must be an array");
    cfg.d_sweep.clear();
    for (const auto& v : root["d_sweep"]) {
      if (!v.is_number_integer() || v.get<int>() < 1)
        fail(origin, "\"d_sweep\" entries must be positive integers");
      cfg.d_sweep.push_back(v.get<int>());
    }
  }
  if (root.contains("epsilons")) {
    if (!root["epsilons"].is_array())
      fail(origin, "\"epsilons\" must be an array");
    cfg.epsilons.clear();
    for (const auto& v : root["epsilons"])
      cfg.epsilons.push_back(finite_number(v, origin, "epsilons"));
  }
  if (root.contains("allow_large_n")) {
    if (!root["allow_large_n"].is_boolean())
      fail(origin, "\"allow_large_n\" must be a boolean");
    cfg.allow_large_n = root["allow_large_n"].get<bool>();
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void RunConfig::validate() const {
  if (n_max < 0) throw ConfigError("n_max must be >= 0");
  if (n_max > 6 && !allow_large_n)
    throw ConfigError(
        "n_max > 6 multiplies cost like (5 M_n)^n; pass --i-know to override");
  if (runs < 2) throw ConfigError("runs must be >= 2");
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

HeatProblem RunConfig::make_heat_problem() const {
  return make_problem(problem_name, problem_params);
}

McSequence RunConfig::make_sequence(int j_max) const {
  if (sequence_rule == "identity") return McSequence::identity(j_max);
  return McSequence::linear(kappa, j_max);
}

}  // namespace mlp
