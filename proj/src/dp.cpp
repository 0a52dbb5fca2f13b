#include "pricing/dp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pricing {

namespace {

constexpr double kTieTolerance = 1e-12;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

// Optimises one (t, i) node given the already-solved row t + 1.
ScalarMax solve_node(const PricingProblem& p, const SolverConfig& cfg,
                     const StateGrid& grid, std::span<const double> next_row,
                     int t, int i) {
  Rng rng = make_stream(cfg.seed, {tag(StreamTag::kBellmanNode),
                                   static_cast<std::uint64_t>(t),
                                   static_cast<std::uint64_t>(i)});
  const DisturbanceSamples samples =
      expectation_samples(p.disturbance, static_cast<std::size_t>(cfg.n_exp), rng);
  const double s = grid[i];
  return maximise_on_interval(
      [&](double a) { return expected_stage_value(p, s, a, samples, next_row, grid); },
      p.prices, cfg.price_grid, cfg.refine_iters);
}

template <typename NodeLoop>
ValuePolicyTable solve_impl(const PricingProblem& p, const SolverConfig& cfg,
                            NodeLoop&& for_each_node) {
  p.validate();
  cfg.validate();
  ValuePolicyTable table(StateGrid(cfg.grid_size), p.horizon, p.prices);
  const StateGrid& grid = table.grid();
  const int k = grid.size();
  for (int i = 0; i < k; ++i) table.value(i, p.horizon) = terminal_value(p, grid[i]);

  for (int t = p.horizon - 1; t >= 0; --t) {
    const std::span<const double> next_row = table.value_row(t + 1);
    for_each_node(k, [&](int i) {
      const ScalarMax best = solve_node(p, cfg, grid, next_row, t, i);
      table.value(i, t) = best.value;
      // With no stock every price is optimal; a_max is the convention.
      table.policy(i, t) = grid[i] == 0.0 ? p.prices.hi : best.argmax;
    });
  }
  return table;
}

}  // namespace

StateGrid::StateGrid(int size) {
  if (size < 2) throw ValidationError("state grid needs at least 2 points");
  points_.resize(static_cast<std::size_t>(size));
  const double h = 1.0 / static_cast<double>(size - 1);
  for (int i = 0; i < size; ++i) points_[static_cast<std::size_t>(i)] = i * h;
  points_.back() = 1.0;
}

double interpolate(const StateGrid& grid, std::span<const double> row, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("interpolate: stock outside [0, 1]");
  const int k = grid.size();
  int j = std::min(static_cast<int>(s * (k - 1)), k - 2);
  if (grid[j + 1] <= s && j + 1 < k - 1) ++j;
  if (grid[j] > s) --j;
  if (s == grid[j]) return row[static_cast<std::size_t>(j)];
  if (s == grid[j + 1]) return row[static_cast<std::size_t>(j + 1)];
  const double frac = (s - grid[j]) / (grid[j + 1] - grid[j]);
  const double lo = row[static_cast<std::size_t>(j)];
  const double hi = row[static_cast<std::size_t>(j + 1)];
  return lo + frac * (hi - lo);
}

void SolverConfig::validate() const {
  if (grid_size < 2) throw ValidationError("solver: K must be at least 2");
  if (price_grid < 2) throw ValidationError("solver: M must be at least 2");
  if (n_exp < 1) throw ValidationError("solver: nExp must be at least 1");
  if (refine_iters < 0) throw ValidationError("solver: refineIters must be non-negative");
}

ValuePolicyTable::ValuePolicyTable(StateGrid grid, int horizon, PriceInterval prices)
    : grid_(std::move(grid)),
      horizon_(horizon),
      prices_(prices),
      values_(static_cast<std::size_t>(horizon + 1) * static_cast<std::size_t>(grid_.size())),
      policy_(static_cast<std::size_t>(horizon) * static_cast<std::size_t>(grid_.size())) {}

std::span<const double> ValuePolicyTable::value_row(int t) const {
  return std::span<const double>(values_).subspan(index(0, t),
                                                  static_cast<std::size_t>(grid_.size()));
}

std::span<const double> ValuePolicyTable::policy_row(int t) const {
  return std::span<const double>(policy_).subspan(index(0, t),
                                                  static_cast<std::size_t>(grid_.size()));
}

double expected_stage_value(const PricingProblem& p, double s, double a,
                            const DisturbanceSamples& samples,
                            std::span<const double> next_row,
                            const StateGrid& grid) {
  const double q = demand(p.demand, a);
  double total = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double sold = std::min(s, q * samples.values[k]);
    total += samples.weights[k] * (a * sold + interpolate(grid, next_row, s - sold));
  }
  return total;
}

ScalarMax maximise_on_interval(const std::function<double(double)>& f,
                               PriceInterval interval, int grid_points,
                               int refine_iters) {
  const double width = interval.hi - interval.lo;
  const double h = width / static_cast<double>(grid_points - 1);
  auto candidate = [&](int j) {
    return j == grid_points - 1 ? interval.hi : interval.lo + j * h;
  };

  ScalarMax best{interval.lo, f(interval.lo)};
  int best_j = 0;
  for (int j = 1; j < grid_points; ++j) {
    const double a = candidate(j);
    const double v = f(a);
    if (v > best.value + kTieTolerance) {
      best = {a, v};
      best_j = j;
    }
  }
  if (refine_iters == 0) return best;

  double lo = candidate(std::max(best_j - 1, 0));
  double hi = candidate(std::min(best_j + 1, grid_points - 1));
  // Refined points replace the scan winner only on strict improvement.
  auto consider = [&](double a, double v) {
    if (v > best.value + kTieTolerance) best = {a, v};
  };
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 1; it < refine_iters; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return best;
}

ValuePolicyTable solve_bellman(const PricingProblem& p, const SolverConfig& cfg) {
  return solve_impl(p, cfg, [](int k, auto&& body) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < k; ++i) body(i);
  });
}

ValuePolicyTable solve_bellman_reference(const PricingProblem& p,
                                         const SolverConfig& cfg) {
  return solve_impl(p, cfg, [](int k, auto&& body) {
    for (int i = 0; i < k; ++i) body(i);
  });
}

}  // namespace pricing
