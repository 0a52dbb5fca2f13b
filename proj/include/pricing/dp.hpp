#ifndef PRICING_DP_HPP_
#define PRICING_DP_HPP_

// Backward-induction solver for the pricing Bellman equation
//
//   v(t, s) = max_a E[ a Q(s, a, W) + v(t + 1, s - Q(s, a, W)) ],
//   v(T, s) = -C s,
//
// on an equispaced stock grid with piecewise-linear interpolation between
// nodes. Expectations use a per-node weighted sample set that is shared by
// every candidate price at that node (common random numbers).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pricing/model.hpp"

namespace pricing {

// K equispaced stock values 0 = s_0 < ... < s_{K-1} = 1.
class StateGrid {
 public:
  explicit StateGrid(int size);

  int size() const { return static_cast<int>(points_.size()); }
  double operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }
  std::span<const double> points() const { return points_; }
  bool operator==(const StateGrid&) const = default;

 private:
  std::vector<double> points_;
};

// Piecewise-linear interpolant through (grid[i], row[i]); exact at nodes.
// Throws std::domain_error when s is outside [0, 1].
double interpolate(const StateGrid& grid, std::span<const double> row, double s);

struct SolverConfig {
  int grid_size = 201;     // K
  int price_grid = 201;    // M
  int n_exp = 1000;        // Monte Carlo draws per expectation
  int refine_iters = 20;   // golden-section iterations after the grid scan
  std::uint64_t seed = 0;

  void validate() const;
};

class ValuePolicyTable {
 public:
  ValuePolicyTable(StateGrid grid, int horizon, PriceInterval prices);

  const StateGrid& grid() const { return grid_; }
  int horizon() const { return horizon_; }
  const PriceInterval& prices() const { return prices_; }

  double value(int i, int t) const { return values_[index(i, t)]; }
  double policy(int i, int t) const { return policy_[index(i, t)]; }
  double& value(int i, int t) { return values_[index(i, t)]; }
  double& policy(int i, int t) { return policy_[index(i, t)]; }

  // v[.][t] for t in 0..T and a[.][t] for t in 0..T-1.
  std::span<const double> value_row(int t) const;
  std::span<const double> policy_row(int t) const;

  bool operator==(const ValuePolicyTable& other) const = default;

 private:
  std::size_t index(int i, int t) const {
    return static_cast<std::size_t>(t) * static_cast<std::size_t>(grid_.size()) +
           static_cast<std::size_t>(i);
  }

  StateGrid grid_;
  int horizon_;
  PriceInterval prices_;
  std::vector<double> values_;  // (T + 1) x K, row per time step
  std::vector<double> policy_;  // T x K
};

// sum_k weight_k [ a Q(s, a, w_k) + I[next_row](s - Q(s, a, w_k)) ]
double expected_stage_value(const PricingProblem& p, double s, double a,
                            const DisturbanceSamples& samples,
                            std::span<const double> next_row,
                            const StateGrid& grid);

struct ScalarMax {
  double argmax;
  double value;
};

// Maximises f over `interval`: scan `grid_points` equispaced candidates,
// then golden-section refine in the bracket around the best one. Values
// within 1e-12 of the running best keep the lower price.
ScalarMax maximise_on_interval(const std::function<double(double)>& f,
                               PriceInterval interval, int grid_points,
                               int refine_iters);

// Parallel solve (OpenMP over grid nodes within each time step).
ValuePolicyTable solve_bellman(const PricingProblem& p, const SolverConfig& cfg);

// Single-threaded reference; produces a table bit-identical to solve_bellman.
ValuePolicyTable solve_bellman_reference(const PricingProblem& p,
                                         const SolverConfig& cfg);

}  // namespace pricing

#endif  // PRICING_DP_HPP_
