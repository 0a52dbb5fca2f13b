#ifndef PRICING_DRIVERS_HPP_
#define PRICING_DRIVERS_HPP_

// Experiment drivers behind the `solve`, `simulate`, `compare` and `sweep`
// subcommands. Each computes everything first, then writes CSV to `csv` and a
// labelled `key: value` summary to `summary`.

#include <iosfwd>
#include <memory>
#include <string>

#include "pricing/config.hpp"
#include "pricing/policies.hpp"
#include "pricing/stats.hpp"

namespace pricing {

// Builds "bellman" (solving the DP), "cec" or "olfc" for cfg's problem.
// `table` is reused for bellman when non-null.
std::unique_ptr<Policy> make_policy(const std::string& name, const ExperimentConfig& cfg,
                                    std::shared_ptr<const ValuePolicyTable> table = nullptr);

// s, v_t0..v_tT, aB_t0..aB_t{T-1}, aC_t0..aC_t{T-1}
void run_solve(const ExperimentConfig& cfg, std::ostream& csv);
void write_solve_csv(const PricingProblem& p, const ValuePolicyTable& table,
                     std::ostream& csv);

// path_id, a_t0..a_t{T-1}, profit
void run_simulate(const ExperimentConfig& cfg, const std::string& policy,
                  std::ostream& csv, std::ostream& summary);

// path_id, profit_A, profit_B, diff
void run_compare(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& summary);
void write_stats(const ComparisonStats& st, std::ostream& summary);

// C, gamma, q1, q2, relL2, q05, median, q95, fracBetter, error
// One row per (C, gamma) case x q1 x q2 cell; policy A is bellman and policy
// B is cfg.policy_b. Failing cells keep their row with the error message.
void run_sweep(const ExperimentConfig& cfg, std::ostream& csv);

}  // namespace pricing

#endif  // PRICING_DRIVERS_HPP_
