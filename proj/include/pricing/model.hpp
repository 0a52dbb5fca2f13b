#ifndef PRICING_MODEL_HPP_
#define PRICING_MODEL_HPP_

// Dimensionless single-product pricing problem: stock starts at 1, prices
// live in [0, 1] (scaled by the price cap) and demand is multiplicatively
// perturbed by an i.i.d. non-negative disturbance W.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pricing {

// Thrown for any parameter that violates a model or configuration invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exponential demand q(a) = q1 * exp(-q2 * a).
struct DemandFunction {
  double q1 = 0.0;
  double q2 = 0.0;

  void validate() const;
};

double demand(const DemandFunction& d, double price);

// W = 1/2 + X, X ~ Beta(mu, mu); E[W] = 1, Var[W] = gamma^2.
struct ShiftedBeta {
  double gamma = 0.05;
};

// W == w almost surely.
struct Degenerate {
  double w = 1.0;
};

// Finite distribution on non-negative atoms. Used for exact-expectation
// oracles.
struct Discrete {
  std::vector<double> atoms;
  std::vector<double> probs;
};

using DisturbanceModel = std::variant<ShiftedBeta, Degenerate, Discrete>;

void validate(const DisturbanceModel& m);

// True when every draw of the model yields the same value.
bool is_deterministic(const DisturbanceModel& m);

struct BetaShape {
  double mu;
  double nu;
};

// mu = nu = 1 / (8 gamma^2) - 1/2. Requires 0 < gamma^2 < 1/12.
BetaShape beta_shape_params(double gamma);

using Rng = std::mt19937_64;

// Stream derived from a root seed and a key path. Distinct keys give
// statistically independent streams; the same key always gives the same one.
Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> key);

// Domain tags for make_stream so that different consumers never collide.
enum class StreamTag : std::uint64_t {
  kBellmanNode = 1,
  kSimPath = 2,
  kOlfcEpoch = 3,
  kOlfcStart = 4,
  kEstimate = 5,
};

inline std::uint64_t tag(StreamTag t) { return static_cast<std::uint64_t>(t); }

double sample_disturbance(const DisturbanceModel& m, Rng& rng);

// A weighted sample set approximating E[f(W)] as sum_k weight_k f(w_k).
struct DisturbanceSamples {
  std::vector<double> values;
  std::vector<double> weights;

  std::size_t size() const { return values.size(); }
};

// ShiftedBeta: n i.i.d. draws, weight 1/n each. Degenerate: one atom.
// Discrete: its atoms with their probabilities (exact expectation).
DisturbanceSamples expectation_samples(const DisturbanceModel& m,
                                       std::size_t n, Rng& rng);

struct PriceInterval {
  double lo = 0.0;
  double hi = 1.0;

  double clamp(double a) const { return a < lo ? lo : (a > hi ? hi : a); }
  bool contains(double a) const { return a >= lo && a <= hi; }
  bool operator==(const PriceInterval&) const = default;
};

struct PricingProblem {
  int horizon = 3;
  double unsold_cost = 1.0;
  PriceInterval prices;
  DemandFunction demand;
  DisturbanceModel disturbance = ShiftedBeta{};

  static constexpr double kInitialStock = 1.0;

  void validate() const;
};

// min(s, q(a) w): units sold over one period.
double sales(double stock, double price, double w, const DemandFunction& d);

struct StepResult {
  double next_stock;
  double revenue;
};

StepResult step(double stock, double price, double w, const DemandFunction& d);

// -C s.
double terminal_value(const PricingProblem& p, double stock);

// Physical units: initial stock, price cap and unsold cost.
struct DimensionalScaling {
  double initial_stock = 1.0;
  double max_price = 1.0;
  double unsold_cost = 0.0;

  void validate() const;
};

struct DimensionlessInputs {
  double unsold_cost;
  // q(a) = q_hat(a * max_price) / initial_stock
  std::function<double(double)> demand;
};

DimensionlessInputs nondimensionalise(
    const DimensionalScaling& scaling,
    std::function<double(double)> dimensional_demand);

// Exponential demand in physical units, q_hat(p) = k1 exp(-k2 p), maps onto
// an exponential dimensionless demand; this returns its (q1, q2).
DemandFunction nondimensionalise_exponential(const DimensionalScaling& scaling,
                                             double k1, double k2);

}  // namespace pricing

#endif  // PRICING_MODEL_HPP_
