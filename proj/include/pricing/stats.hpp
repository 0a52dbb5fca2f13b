#ifndef PRICING_STATS_HPP_
#define PRICING_STATS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "pricing/sim.hpp"

namespace pricing {

// Quantile with linear interpolation between order statistics at the
// 1-based rank level * (n - 1) + 1. Throws on empty input.
double quantile(std::span<const double> xs, double level);

// Same, on data already sorted ascending.
double quantile_sorted(std::span<const double> sorted, double level);

// ||a - b||_2 / ||a||_2 under the empirical measure.
double relative_l2(std::span<const double> a, std::span<const double> b);

// A is the reference policy; relative differences are 1 - P_B / P_A.
struct ComparisonStats {
  double mean_diff = 0.0;      // mean(P_A - P_B)
  double se_diff = 0.0;        // standard error of mean_diff
  double mean_a = 0.0;
  double se_a = 0.0;
  double mean_b = 0.0;
  double se_b = 0.0;
  double q05 = 0.0;            // quantiles of 1 - P_B / P_A
  double median = 0.0;
  double q95 = 0.0;
  double rel_l2 = 0.0;
  double frac_a_better = 0.0;  // share of pairs with P_A > P_B
  double frac_b_better = 0.0;  // share of pairs with P_B > P_A
  std::size_t n = 0;
  std::size_t excluded = 0;    // pairs with P_A == 0, left out of the relative quantiles
};

ComparisonStats summarise(const ComparisonSamples& samples);

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges spanning [min, max]
  std::vector<std::size_t> counts;
};

// Equal-width bins over [min(xs), max(xs)]; the maximum goes in the last bin.
Histogram histogram(std::span<const double> xs, int bins);

inline constexpr int kProfitBins = 40;
inline constexpr int kDifferenceBins = 30;

}  // namespace pricing

#endif  // PRICING_STATS_HPP_
