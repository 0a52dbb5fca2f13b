#ifndef PRICING_CONFIG_HPP_
#define PRICING_CONFIG_HPP_

// Experiment configuration: a flat `key = value` text format whose defaults
// are the reference example system (T = 3, C = 1, gamma = 0.05,
// q(a) = e^2/3 exp(-3a)).

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pricing/dp.hpp"
#include "pricing/model.hpp"
#include "pricing/policies.hpp"

namespace pricing {

struct CostNoise {
  double cost;
  double gamma;
  bool operator==(const CostNoise&) const = default;
};

struct ExperimentConfig {
  // problem
  int horizon = 3;
  double unsold_cost = 1.0;
  double gamma = 0.05;
  std::string disturbance = "beta";  // beta | degenerate
  double degenerate_w = 1.0;
  double q1 = std::exp(2.0) / 3.0;
  double q2 = 3.0;
  double a_min = 0.0;
  double a_max = 1.0;
  // solver
  int grid_size = 201;
  int price_grid = 201;
  int n_exp = 1000;
  int refine_iters = 20;
  // simulation
  int n_sim = 10000;
  // olfc
  int n_saa = 1000;
  int multistart = 1;
  double olfc_tol = 1e-4;
  int olfc_max_iters = 100;
  // run
  std::uint64_t seed = 2017;
  int threads = 0;  // 0: OpenMP default
  std::string out;
  std::string policy_a = "bellman";
  std::string policy_b = "cec";
  // sweep
  std::vector<double> sweep_q1;
  std::vector<double> sweep_q2;
  std::vector<CostNoise> sweep_cases;

  bool operator==(const ExperimentConfig&) const = default;

  PricingProblem problem() const;
  SolverConfig solver() const;
  OlfcConfig olfc() const;

  // Throws ValidationError naming the first offending key.
  void validate() const;
};

// Applies one key/value pair; throws ValidationError on unknown keys or
// unparsable values.
void set_config_value(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value);

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// Writes every key; parse_config(emit_config(c)) == c.
void emit_config(const ExperimentConfig& cfg, std::ostream& out);

// Shortest round-trip decimal representation, locale independent.
std::string format_number(double x);

std::vector<double> parse_number_list(const std::string& text);
std::vector<CostNoise> parse_cases(const std::string& text);

}  // namespace pricing

#endif  // PRICING_CONFIG_HPP_
