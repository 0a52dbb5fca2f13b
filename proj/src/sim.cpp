#include "pricing/sim.hpp"

#include <cmath>
#include <exception>
#include <mutex>

namespace pricing {

namespace {

// Runs body(k) for k in [0, n) across OpenMP threads; the first exception
// thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(int n, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 0; k < n; ++k) {
    try {
      body(k);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

template <typename Body>
void serial_for(int n, Body&& body) {
  for (int k = 0; k < n; ++k) body(k);
}

std::vector<double> draw_stream_path(const PricingProblem& p, StreamTag domain,
                                     std::uint64_t root_seed, std::uint64_t k,
                                     int length) {
  Rng rng = make_stream(root_seed, {tag(domain), k});
  std::vector<double> w(static_cast<std::size_t>(length));
  for (auto& x : w) x = sample_disturbance(p.disturbance, rng);
  return w;
}

template <typename Loop>
ComparisonSamples compare_impl(const PricingProblem& p, const Policy& a, const Policy& b,
                               int n_sim, std::uint64_t root_seed, Loop&& loop) {
  if (n_sim < 1) throw ValidationError("compare: nSim must be at least 1");
  p.validate();
  ComparisonSamples out;
  out.label_a = a.name();
  out.label_b = b.name();
  out.profits_a.resize(static_cast<std::size_t>(n_sim));
  out.profits_b.resize(static_cast<std::size_t>(n_sim));
  loop(n_sim, [&](int k) {
    const auto id = static_cast<std::uint64_t>(k);
    const std::vector<double> w = draw_path(p, root_seed, id, p.horizon);
    out.profits_a[static_cast<std::size_t>(k)] = simulate_path(p, a, w, id).profit;
    out.profits_b[static_cast<std::size_t>(k)] = simulate_path(p, b, w, id).profit;
  });
  return out;
}

}  // namespace

PathRecord simulate_path(const PricingProblem& p, const Policy& policy,
                         std::span<const double> w, std::uint64_t path_id, int start,
                         double initial_stock) {
  const int n = p.horizon - start;
  if (start < 0 || n < 1) throw std::out_of_range("simulate: start outside 0..T-1");
  if (w.size() != static_cast<std::size_t>(n))
    throw ValidationError("simulate: disturbance path length must be T - start");
  PathRecord rec;
  rec.prices.reserve(static_cast<std::size_t>(n));
  rec.sales.reserve(static_cast<std::size_t>(n));
  rec.stocks.reserve(static_cast<std::size_t>(n) + 1);
  double stock = initial_stock;
  double revenue = 0.0;
  rec.stocks.push_back(stock);
  for (int j = 0; j < n; ++j) {
    const double a = policy.price(start + j, stock, path_id);
    const StepResult r = step(stock, a, w[static_cast<std::size_t>(j)], p.demand);
    rec.prices.push_back(a);
    rec.sales.push_back(stock - r.next_stock);
    revenue += r.revenue;
    stock = r.next_stock;
    rec.stocks.push_back(stock);
  }
  rec.profit = revenue + terminal_value(p, stock);
  return rec;
}

std::vector<double> draw_path(const PricingProblem& p, std::uint64_t root_seed,
                              std::uint64_t k, int length) {
  return draw_stream_path(p, StreamTag::kSimPath, root_seed, k, length);
}

ComparisonSamples paired_compare(const PricingProblem& p, const Policy& a,
                                 const Policy& b, int n_sim, std::uint64_t root_seed) {
  return compare_impl(p, a, b, n_sim, root_seed,
                      [](int n, auto&& body) { parallel_for(n, body); });
}

ComparisonSamples paired_compare_reference(const PricingProblem& p, const Policy& a,
                                           const Policy& b, int n_sim,
                                           std::uint64_t root_seed) {
  return compare_impl(p, a, b, n_sim, root_seed,
                      [](int n, auto&& body) { serial_for(n, body); });
}

std::vector<PathRecord> simulate_many(const PricingProblem& p, const Policy& policy,
                                      int n_sim, std::uint64_t root_seed) {
  if (n_sim < 1) throw ValidationError("simulate: nSim must be at least 1");
  p.validate();
  std::vector<PathRecord> out(static_cast<std::size_t>(n_sim));
  parallel_for(n_sim, [&](int k) {
    const auto id = static_cast<std::uint64_t>(k);
    out[static_cast<std::size_t>(k)] =
        simulate_path(p, policy, draw_path(p, root_seed, id, p.horizon), id);
  });
  return out;
}

Estimate estimate_objective(const PricingProblem& p, const Policy& policy, int t,
                            double s, int n_sim, std::uint64_t seed) {
  if (n_sim < 2) throw ValidationError("estimate: nSim must be at least 2");
  p.validate();
  std::vector<double> profits(static_cast<std::size_t>(n_sim));
  parallel_for(n_sim, [&](int k) {
    const auto id = static_cast<std::uint64_t>(k);
    const std::vector<double> w =
        draw_stream_path(p, StreamTag::kEstimate, seed, id, p.horizon - t);
    profits[static_cast<std::size_t>(k)] = simulate_path(p, policy, w, id, t, s).profit;
  });
  return mean_and_standard_error(profits);
}

Estimate mean_and_standard_error(std::span<const double> xs) {
  if (xs.empty()) throw ValidationError("estimate: empty sample");
  // Shifted by the first value so that a constant sample has exactly zero
  // spread.
  const double shift = xs.front();
  const auto n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x - shift;
  const double centre = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - shift - centre) * (x - shift - centre);
  const double var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {shift + centre, std::sqrt(var / n)};
}

}  // namespace pricing
