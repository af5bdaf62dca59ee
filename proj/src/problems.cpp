#include "mlp/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace mlp {

namespace {

double norm_sq(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

// E[ (|xi + W_T|^2)^2 ]: |xi + W_T|^2 / T is noncentral chi-squared with d
// degrees of freedom and noncentrality |xi|^2 / T.
double quadratic_g2_moment(int d, double T, std::span<const double> xi) {
  const double lambda = norm_sq(xi) / T;
  const double mean = d + lambda;
  const double var = 2.0 * (d + 2.0 * lambda);
  return T * T * (var + mean * mean);
}

std::vector<double> default_xi(int d, const std::vector<double>& override_xi) {
  if (override_xi.empty()) return std::vector<double>(static_cast<std::size_t>(d), 0.0);
  if (static_cast<int>(override_xi.size()) != d)
    throw std::invalid_argument("problem: xi has wrong dimension");
  return override_xi;
}

}  // namespace

HeatProblem make_problem(const std::string& name, const ProblemParams& params) {
  HeatProblem prob;
  prob.name = name;
  prob.T = params.T > 0.0 ? params.T : 1.0;

  if (name == "quadratic") {
    prob.d = params.d > 0 ? params.d : 10;
    prob.xi = default_xi(prob.d, params.xi);
    prob.f = [](double, std::span<const double>, double) { return 0.0; };
    prob.g = [](std::span<const double> x) { return norm_sq(x); };
    prob.L = 0.0;
    prob.p = 2.0;
    prob.growth_const = 1.0;
    prob.g2_moment = quadratic_g2_moment(prob.d, prob.T, prob.xi);
    prob.f2_time_integral = 0.0;
    const int d = prob.d;
    const double T = prob.T;
    prob.solution = [d, T](double t, std::span<const double> x) {
      return norm_sq(x) + d * (T - t);
    };
    return prob;
  }

  if (name == "linear") {
    prob.d = params.d > 0 ? params.d : 5;
    prob.xi = default_xi(prob.d, params.xi);
    const double a = params.has_a ? params.a : 0.5;
    prob.f = [a](double, std::span<const double>, double v) { return a * v; };
    prob.g = [](std::span<const double> x) { return norm_sq(x); };
    prob.L = std::fabs(a);
    prob.p = 2.0;
    prob.growth_const = 1.0;
    prob.g2_moment = quadratic_g2_moment(prob.d, prob.T, prob.xi);
    prob.f2_time_integral = 0.0;  // f(t, x, 0) = 0
    const int d = prob.d;
    const double T = prob.T;
    prob.solution = [a, d, T](double t, std::span<const double> x) {
      return std::exp(a * (T - t)) * (norm_sq(x) + d * (T - t));
    };
    return prob;
  }

  if (name == "sine") {
    prob.d = params.d > 0 ? params.d : 1;
    if (prob.d != 1) throw std::invalid_argument("problem sine: d must be 1");
    prob.xi = default_xi(prob.d, params.xi);
    prob.f = [](double, std::span<const double>, double v) { return std::sin(v); };
    prob.g = [](std::span<const double> x) { return x[0] * x[0]; };
    prob.L = 1.0;
    prob.p = 2.0;
    prob.growth_const = 1.0;
    prob.g2_moment = quadratic_g2_moment(prob.d, prob.T, prob.xi);
    prob.f2_time_integral = 0.0;
    return prob;
  }

  if (name == "constant") {
    prob.d = params.d > 0 ? params.d : 1;
    prob.xi = default_xi(prob.d, params.xi);
    const double c0 = params.has_c0 ? params.c0 : 7.0;
    prob.f = [](double, std::span<const double>, double) { return 0.0; };
    prob.g = [c0](std::span<const double>) { return c0; };
    prob.L = 0.0;
    prob.p = 0.0;
    prob.growth_const = std::max(1.0, std::fabs(c0));
    prob.g2_moment = c0 * c0;
    prob.f2_time_integral = 0.0;
    prob.solution = [c0](double, std::span<const double>) { return c0; };
    return prob;
  }

  throw std::invalid_argument("unknown problem: " + name);
}

const std::vector<std::string>& registered_problem_names() {
  static const std::vector<std::string> names = {"quadratic", "linear", "sine",
                                                 "constant"};
  return names;
}

}  // namespace mlp
