#ifndef PRICING_TESTS_ENUMERATION_ORACLE_HPP_
#define PRICING_TESTS_ENUMERATION_ORACLE_HPP_

// Brute-force reference for two-period problems with a finite disturbance:
// enumerates every first price and every per-outcome second price on the
// price grid, evaluating expected profit exactly with no interpolation and no
// backward recursion.

#include <algorithm>
#include <cmath>
#include <random>
#include <variant>
#include <vector>

#include "pricing/model.hpp"

namespace oracle {

struct GridInstance {
  pricing::PricingProblem problem;
  std::vector<double> price_grid;  // M prices
  int grid_size;                   // K stock nodes
};

inline std::vector<double> price_grid(int m) {
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(j)] = static_cast<double>(j) / (m - 1);
  return out;
}

// q(a) = 0.1 k 2^{10 (1 - a)} on prices j / 10 gives 0.1 k 2^{10 - j}, and
// integer atoms keep every sale a multiple of 0.1 (or a stockout), so
// post-sale stock always lands on a node of the 11-point grid.
inline GridInstance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_k(1, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> atoms = {0.0, 1.0, 2.0, 3.0};
  std::shuffle(atoms.begin(), atoms.end(), rng);
  atoms.resize(3);
  std::vector<double> probs = {u(rng) + 0.05, u(rng) + 0.05, u(rng) + 0.05};
  const double total = probs[0] + probs[1] + probs[2];
  for (auto& p : probs) p /= total;
  probs[2] = 1.0 - probs[0] - probs[1];

  GridInstance g;
  g.problem.horizon = 2;
  g.problem.unsold_cost = u(rng);
  g.problem.demand = {0.1 * pick_k(rng) * 1024.0, 10.0 * std::log(2.0)};
  g.problem.disturbance = pricing::Discrete{atoms, probs};
  g.price_grid = price_grid(11);
  g.grid_size = 11;
  return g;
}

// Exact optimum of the last period from stock s.
inline double last_period_value(const pricing::PricingProblem& p,
                                const std::vector<double>& prices, double s) {
  const auto& d = std::get<pricing::Discrete>(p.disturbance);
  double best = -1e300;
  for (double a : prices) {
    double ev = 0.0;
    for (std::size_t k = 0; k < d.atoms.size(); ++k) {
      const double sold = std::min(s, pricing::demand(p.demand, a) * d.atoms[k]);
      ev += d.probs[k] * (a * sold - p.unsold_cost * (s - sold));
    }
    best = std::max(best, ev);
  }
  return best;
}

// Exact two-period optimum from stock s, maximising over every tuple
// (a0, a1(w_1), ..., a1(w_n)) of grid prices.
inline double two_period_value(const pricing::PricingProblem& p,
                               const std::vector<double>& prices, double s) {
  const auto& d = std::get<pricing::Discrete>(p.disturbance);
  const std::size_t n = d.atoms.size();
  const std::size_t m = prices.size();
  double best = -1e300;
  std::vector<std::size_t> choice(n);
  for (double a0 : prices) {
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      double ev = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double sold0 = std::min(s, pricing::demand(p.demand, a0) * d.atoms[k]);
        const double s1 = s - sold0;
        const double a1 = prices[choice[k]];
        double inner = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const double sold1 = std::min(s1, pricing::demand(p.demand, a1) * d.atoms[r]);
          inner += d.probs[r] * (a1 * sold1 - p.unsold_cost * (s1 - sold1));
        }
        ev += d.probs[k] * (a0 * sold0 + inner);
      }
      best = std::max(best, ev);
      std::size_t pos = 0;
      while (pos < n && ++choice[pos] == m) choice[pos++] = 0;
      if (pos == n) break;
    }
  }
  return best;
}

}  // namespace oracle

#endif  // PRICING_TESTS_ENUMERATION_ORACLE_HPP_
