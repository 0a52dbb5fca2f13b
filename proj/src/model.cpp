#include "pricing/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pricing {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

}  // namespace

void DemandFunction::validate() const {
  if (!(q1 > 0.0) || !std::isfinite(q1)) fail("demand: q1 must be positive");
  if (!(q2 > 0.0) || !std::isfinite(q2)) fail("demand: q2 must be positive");
}

double demand(const DemandFunction& d, double price) {
  return d.q1 * std::exp(-d.q2 * price);
}

BetaShape beta_shape_params(double gamma) {
  if (!(gamma > 0.0)) fail("disturbance: gamma must be positive");
  if (!(gamma * gamma < 1.0 / 12.0)) {
    std::ostringstream os;
    os << "disturbance: gamma^2 = " << gamma * gamma
       << " must be below 1/12 for a unimodal Beta";
    fail(os.str());
  }
  const double mu = 1.0 / (8.0 * gamma * gamma) - 0.5;
  return {mu, mu};
}

void validate(const DisturbanceModel& m) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ShiftedBeta>) {
          beta_shape_params(v.gamma);
        } else if constexpr (std::is_same_v<T, Degenerate>) {
          if (!(v.w >= 0.0) || !std::isfinite(v.w))
            fail("disturbance: degenerate w must be non-negative");
        } else {
          if (v.atoms.empty() || v.atoms.size() != v.probs.size())
            fail("disturbance: discrete atoms/probs must be non-empty and equal length");
          for (double a : v.atoms)
            if (!(a >= 0.0) || !std::isfinite(a))
              fail("disturbance: discrete atoms must be non-negative");
          for (double p : v.probs)
            if (!(p >= 0.0)) fail("disturbance: discrete probs must be non-negative");
          const double total = std::accumulate(v.probs.begin(), v.probs.end(), 0.0);
          if (std::abs(total - 1.0) > 1e-12)
            fail("disturbance: discrete probs must sum to 1");
        }
      },
      m);
}

bool is_deterministic(const DisturbanceModel& m) {
  if (std::holds_alternative<Degenerate>(m)) return true;
  if (const auto* d = std::get_if<Discrete>(&m)) {
    int support = 0;
    for (double p : d->probs) support += p > 0.0;
    return support == 1;
  }
  return false;
}

Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (key.size() + 1));
  auto push = [&](std::uint64_t x) {
    words.push_back(static_cast<std::uint32_t>(x));
    words.push_back(static_cast<std::uint32_t>(x >> 32));
  };
  push(seed);
  for (std::uint64_t k : key) push(k);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

double sample_disturbance(const DisturbanceModel& m, Rng& rng) {
  return std::visit(
      [&rng](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ShiftedBeta>) {
          const BetaShape shape = beta_shape_params(v.gamma);
          std::gamma_distribution<double> gx(shape.mu, 1.0);
          std::gamma_distribution<double> gy(shape.nu, 1.0);
          const double x = gx(rng);
          const double y = gy(rng);
          return 0.5 + x / (x + y);
        } else if constexpr (std::is_same_v<T, Degenerate>) {
          return v.w;
        } else {
          std::discrete_distribution<std::size_t> pick(v.probs.begin(), v.probs.end());
          return v.atoms[pick(rng)];
        }
      },
      m);
}

DisturbanceSamples expectation_samples(const DisturbanceModel& m, std::size_t n,
                                       Rng& rng) {
  DisturbanceSamples out;
  if (const auto* d = std::get_if<Degenerate>(&m)) {
    out.values = {d->w};
    out.weights = {1.0};
    return out;
  }
  if (const auto* d = std::get_if<Discrete>(&m)) {
    for (std::size_t k = 0; k < d->atoms.size(); ++k) {
      if (d->probs[k] == 0.0) continue;
      out.values.push_back(d->atoms[k]);
      out.weights.push_back(d->probs[k]);
    }
    return out;
  }
  if (n == 0) fail("expectation_samples: need at least one sample");
  out.values.resize(n);
  out.weights.assign(n, 1.0 / static_cast<double>(n));
  for (auto& w : out.values) w = sample_disturbance(m, rng);
  return out;
}

void PricingProblem::validate() const {
  if (horizon < 1) fail("problem: horizon T must be at least 1");
  if (!(unsold_cost >= 0.0) || !std::isfinite(unsold_cost))
    fail("problem: unsold cost C must be non-negative");
  if (!(prices.lo >= 0.0 && prices.lo < prices.hi && prices.hi <= 1.0))
    fail("problem: price interval must satisfy 0 <= a_min < a_max <= 1");
  demand.validate();
  pricing::validate(disturbance);
}

double sales(double stock, double price, double w, const DemandFunction& d) {
  return std::min(stock, demand(d, price) * w);
}

StepResult step(double stock, double price, double w, const DemandFunction& d) {
  const double sold = sales(stock, price, w, d);
  return {stock - sold, price * sold};
}

double terminal_value(const PricingProblem& p, double stock) {
  return -p.unsold_cost * stock;
}

void DimensionalScaling::validate() const {
  if (!(initial_stock > 0.0)) fail("scaling: initial stock must be positive");
  if (!(max_price > 0.0)) fail("scaling: max price must be positive");
  if (!(unsold_cost >= 0.0)) fail("scaling: unsold cost must be non-negative");
}

DimensionlessInputs nondimensionalise(
    const DimensionalScaling& scaling,
    std::function<double(double)> dimensional_demand) {
  scaling.validate();
  DimensionlessInputs out;
  out.unsold_cost = scaling.unsold_cost / scaling.max_price;
  out.demand = [scaling, q = std::move(dimensional_demand)](double a) {
    return q(a * scaling.max_price) / scaling.initial_stock;
  };
  return out;
}

DemandFunction nondimensionalise_exponential(const DimensionalScaling& scaling,
                                             double k1, double k2) {
  scaling.validate();
  return {k1 / scaling.initial_stock, k2 * scaling.max_price};
}

}  // namespace pricing
