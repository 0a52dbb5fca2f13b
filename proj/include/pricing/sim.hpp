#ifndef PRICING_SIM_HPP_
#define PRICING_SIM_HPP_

// Forward simulation of the controlled stock process and paired policy
// comparisons under common random numbers: path k draws its disturbances
// from a stream keyed on (root seed, k) and every compared policy sees the
// same draws.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pricing/model.hpp"
#include "pricing/policies.hpp"

namespace pricing {

struct PathRecord {
  std::vector<double> prices;  // a_t, t = 0..T-1
  std::vector<double> stocks;  // S_t, t = 0..T
  std::vector<double> sales;   // Q_t, t = 0..T-1
  double profit = 0.0;
};

// Runs the policy from S_0 = 1 (or `initial_stock`) at epoch `start` through
// T; w holds W_{start+1}..W_T.
PathRecord simulate_path(const PricingProblem& p, const Policy& policy,
                         std::span<const double> w, std::uint64_t path_id = 0,
                         int start = 0, double initial_stock = 1.0);

// Disturbance path k of length T - start for a root seed.
std::vector<double> draw_path(const PricingProblem& p, std::uint64_t root_seed,
                              std::uint64_t k, int length);

struct ComparisonSamples {
  std::string label_a;
  std::string label_b;
  std::vector<double> profits_a;
  std::vector<double> profits_b;

  std::size_t size() const { return profits_a.size(); }
  bool operator==(const ComparisonSamples&) const = default;
};

// OpenMP over paths; results are stored by path index.
ComparisonSamples paired_compare(const PricingProblem& p, const Policy& a,
                                 const Policy& b, int n_sim, std::uint64_t root_seed);

// Single-threaded reference for paired_compare; bit-identical output.
ComparisonSamples paired_compare_reference(const PricingProblem& p, const Policy& a,
                                           const Policy& b, int n_sim,
                                           std::uint64_t root_seed);

// Full trajectories of one policy on n_sim CRN paths.
std::vector<PathRecord> simulate_many(const PricingProblem& p, const Policy& policy,
                                      int n_sim, std::uint64_t root_seed);

struct Estimate {
  double mean;
  double standard_error;
};

// Monte Carlo estimate of J(t, s, policy).
Estimate estimate_objective(const PricingProblem& p, const Policy& policy, int t,
                            double s, int n_sim, std::uint64_t seed);

// Mean and standard error of the mean of a sample.
Estimate mean_and_standard_error(std::span<const double> xs);

}  // namespace pricing

#endif  // PRICING_SIM_HPP_
