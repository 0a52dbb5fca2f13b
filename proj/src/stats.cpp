#include "pricing/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pricing {

double quantile_sorted(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(level >= 0.0 && level <= 1.0)) throw std::invalid_argument("quantile: level outside [0, 1]");
  const double h = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<const double> xs, double level) {
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, level);
}

double relative_l2(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("relative_l2: samples must be non-empty and equal length");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]) * (a[k] - b[k]);
    den += a[k] * a[k];
  }
  if (den == 0.0) throw std::domain_error("relative_l2: reference sample has zero norm");
  return std::sqrt(num / den);
}

ComparisonStats summarise(const ComparisonSamples& samples) {
  const std::size_t n = samples.size();
  if (n < 2 || samples.profits_b.size() != n)
    throw std::invalid_argument("summarise: need at least 2 paired samples");
  ComparisonStats st;
  st.n = n;
  std::vector<double> diff(n);
  std::vector<double> rel;
  rel.reserve(n);
  std::size_t a_better = 0;
  std::size_t b_better = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double pa = samples.profits_a[k];
    const double pb = samples.profits_b[k];
    diff[k] = pa - pb;
    a_better += pa > pb;
    b_better += pb > pa;
    if (pa == 0.0) {
      ++st.excluded;
    } else {
      rel.push_back(1.0 - pb / pa);
    }
  }
  const Estimate d = mean_and_standard_error(diff);
  const Estimate ea = mean_and_standard_error(samples.profits_a);
  const Estimate eb = mean_and_standard_error(samples.profits_b);
  st.mean_diff = d.mean;
  st.se_diff = d.standard_error;
  st.mean_a = ea.mean;
  st.se_a = ea.standard_error;
  st.mean_b = eb.mean;
  st.se_b = eb.standard_error;
  st.frac_a_better = static_cast<double>(a_better) / static_cast<double>(n);
  st.frac_b_better = static_cast<double>(b_better) / static_cast<double>(n);
  if (!rel.empty()) {
    std::sort(rel.begin(), rel.end());
    st.q05 = quantile_sorted(rel, 0.05);
    st.median = quantile_sorted(rel, 0.5);
    st.q95 = quantile_sorted(rel, 0.95);
  }
  st.rel_l2 = relative_l2(samples.profits_a, samples.profits_b);
  return st;
}

Histogram histogram(std::span<const double> xs, int bins) {
  if (xs.empty()) throw std::invalid_argument("histogram: empty sample");
  if (bins < 1) throw std::invalid_argument("histogram: need at least one bin");
  const auto [min_it, max_it] = std::minmax_element(xs.begin(), xs.end());
  const double lo = *min_it;
  const double hi = *max_it;
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int j = 0; j <= bins; ++j)
    h.edges[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / bins;
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  const double width = hi - lo;
  for (double x : xs) {
    int j = width > 0.0 ? static_cast<int>((x - lo) / width * bins) : 0;
    j = std::clamp(j, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(j)];
  }
  return h;
}

}  // namespace pricing
