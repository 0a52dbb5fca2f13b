#ifndef PRICING_POLICIES_HPP_
#define PRICING_POLICIES_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pricing/dp.hpp"
#include "pricing/model.hpp"

namespace pricing {

// A Markov pricing rule (t, s) -> a in [a_min, a_max].
//
// `path_id` identifies the simulated sample path making the query. Policies
// that draw their own Monte Carlo samples (OLFC) key their streams on it so
// that paths never share or perturb each other's noise; the others ignore it.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual double price(int t, double s, std::uint64_t path_id) const = 0;
  double price(int t, double s) const { return price(t, s, 0); }

  virtual std::string name() const = 0;
};

// Interpolated lookup into a solved policy table.
class BellmanPolicy final : public Policy {
 public:
  explicit BellmanPolicy(std::shared_ptr<const ValuePolicyTable> table);

  double price(int t, double s, std::uint64_t path_id) const override;
  using Policy::price;
  std::string name() const override { return "bellman"; }

  const ValuePolicyTable& table() const { return *table_; }

 private:
  std::shared_ptr<const ValuePolicyTable> table_;
};

double bellman_price(const ValuePolicyTable& table, int t, double s);

// (a + C) min(s / (T - t), q(a) w_hat): the certainty-equivalent
// single-price objective (w_hat = 1 for the mean forecast).
double cec_objective(const PricingProblem& p, int t, double s, double a,
                     double w_hat = 1.0);

// Closed-form CEC price under the mean forecast W = 1:
//   P_A[ max( log(q1 (T - t) / s) / q2, 1 / q2 - C ) ].
// s = 0 returns a_max (nothing can be sold, every price is optimal).
double cec_price(const PricingProblem& p, int t, double s);

struct CecEstimate {
  double w_hat = 1.0;
};

class CecPolicy final : public Policy {
 public:
  explicit CecPolicy(PricingProblem problem, CecEstimate estimate = {});

  double price(int t, double s, std::uint64_t path_id) const override;
  using Policy::price;
  std::string name() const override { return "cec"; }

 private:
  PricingProblem problem_;
  CecEstimate estimate_;
};

struct OlfcConfig {
  int n_saa = 1000;
  double tol = 1e-4;
  int max_iters = 100;   // coordinate sweeps per start
  int multistart = 1;    // CEC start plus (multistart - 1) random starts
  std::uint64_t seed = 0;

  void validate() const;
};

// Raised when the OLFC optimiser exhausts max_iters; carries the best
// open-loop price vector found.
class OlfcNonConvergence : public std::runtime_error {
 public:
  OlfcNonConvergence(const std::string& msg, std::vector<double> best)
      : std::runtime_error(msg), best_(std::move(best)) {}
  const std::vector<double>& best() const { return best_; }

 private:
  std::vector<double> best_;
};

// Frozen disturbance paths for one decision epoch: row k holds
// (w_{t+1}, ..., w_T) of path k.
struct SaaPaths {
  int length = 0;
  std::vector<double> values;
  std::vector<double> weights;

  std::size_t count() const { return weights.size(); }
  std::span<const double> row(std::size_t k) const {
    return std::span<const double>(values).subspan(k * static_cast<std::size_t>(length),
                                                   static_cast<std::size_t>(length));
  }
};

SaaPaths draw_saa_paths(const PricingProblem& p, const OlfcConfig& cfg, int t,
                        std::uint64_t path_id);

// Sample average of sum_tau a_tau Q(S_tau, a_tau, w_{tau+1}) - C S_T over the
// frozen paths, starting from stock s; prices.size() == paths.length.
double olfc_objective(const PricingProblem& p, double s,
                      std::span<const double> prices, const SaaPaths& paths);

struct OlfcSolution {
  std::vector<double> prices;
  double objective;
  int sweeps;
};

// Maximises olfc_objective over the box A^{T-t}.
OlfcSolution olfc_optimise(const PricingProblem& p, const OlfcConfig& cfg, int t,
                           double s, const SaaPaths& paths, std::uint64_t path_id);

double olfc_price(const PricingProblem& p, const OlfcConfig& cfg, int t, double s,
                  std::uint64_t path_id = 0);

class OlfcPolicy final : public Policy {
 public:
  OlfcPolicy(PricingProblem problem, OlfcConfig cfg);

  double price(int t, double s, std::uint64_t path_id) const override;
  using Policy::price;
  std::string name() const override { return "olfc"; }

 private:
  PricingProblem problem_;
  OlfcConfig cfg_;
};

// Same price in every state; used for baselines and tests.
class ConstantPolicy final : public Policy {
 public:
  explicit ConstantPolicy(double a) : a_(a) {}
  double price(int, double, std::uint64_t) const override { return a_; }
  using Policy::price;
  std::string name() const override { return "constant"; }

 private:
  double a_;
};

}  // namespace pricing

#endif  // PRICING_POLICIES_HPP_
