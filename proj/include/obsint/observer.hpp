#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "obsint/poly.hpp"
#include "obsint/record.hpp"

namespace obsint {

// Perturbation parameter as a function of time: either constant, or the
// start-up ramp 1/eps = min(rate * t, inv_max). Values are clamped to <= 1.
class EpsSchedule {
 public:
  static EpsSchedule constant(double eps);
  static EpsSchedule ramp(double rate, double inv_max);

  double at(double t) const;
  double sup() const;
  double inf() const;
  bool is_constant() const { return rate_ == 0.0; }
  double rate() const { return rate_; }
  double inv_max() const { return inv_max_; }

 private:
  EpsSchedule(double eps, double rate, double inv_max) : eps_(eps), rate_(rate), inv_max_(inv_max) {}
  double eps_;
  double rate_;
  double inv_max_;
};

inline constexpr int kMaxObserverOrder = 12;

// Immutable description of one differentiation-integration observer:
//   x_i' = x_{i+1},  i < n
//   eps^{n+1-c(p)} x_n' = -sum_{i != p} k_i eps^{i-c(p)} x_i - k_p (x_p - a(t)).
// Construction checks the gain-validity condition at the schedule's supremum.
class ObserverSpec {
 public:
  explicit ObserverSpec(ObserverGainSet gains);
  ObserverSpec(ObserverGainSet gains, EpsSchedule schedule);

  int order() const { return gains_.n; }
  int sensor_index() const { return gains_.p; }
  const ObserverGainSet& gain_set() const { return gains_; }
  const EpsSchedule& schedule() const { return schedule_; }

  // Guidance step: 0.5 * eps_min / |lambda_max| (lambda: roots of the
  // eps-scaled characteristic polynomial at eps_min).
  double recommended_max_dt() const;
  // Real-axis limit of classical RK4 (about 2.785 / |fastest eigenvalue|).
  double rk4_stability_dt() const;

 private:
  ObserverGainSet gains_;
  EpsSchedule schedule_;
};

struct ObserverState {
  std::vector<double> x;
  double t = 0.0;

  static ObserverState zero(int n) { return {std::vector<double>(static_cast<std::size_t>(n), 0.0), 0.0}; }
};

using Sampler = std::function<double(double)>;

// Chain weights for a fixed eps, shared by all RK4 stages of one step.
struct ChainWeights {
  int n = 0;
  int p = 0;
  std::array<double, kMaxObserverOrder> w{};  // coefficient on x_i (k_p for i = p)
  double inv_lead = 0.0;                      // 1 / eps^{n+1-c(p)}

  static ChainWeights make(const ObserverSpec& spec, double eps);
};

// dx for state x, measured value a and the given weights.
void derivative_into(const ChainWeights& cw, std::span<const double> x, double a, std::span<double> dx);

// Observer right-hand side with eps taken from the schedule at state.t.
std::vector<double> derivative(const ObserverSpec& spec, const ObserverState& state, double a);

// One classical RK4 step. eps is held at its value at the start of the step;
// the sampler is evaluated at the RK4 stage times.
ObserverState step(const ObserverSpec& spec, const ObserverState& state, const Sampler& sampler, double dt);
void advance(const ObserverSpec& spec, ObserverState& state, const Sampler& sampler, double dt);

// Corollary-style presets. All reduce to the same generalized evaluator.
ObserverSpec preset_differentiator(int n, std::vector<double> k, double eps);
ObserverSpec preset_onefold(double k1, double k2, double eps);
ObserverSpec preset_diffint(double k1, double k2, double k3, double eps);
ObserverSpec preset_double(double k1, double k2, double k3, double eps);
ObserverSpec preset_diff_double(double k1, double k2, double k3, double k4, double eps);

// Integrates from x0 for `duration` seconds. Columns: t, a, x1..xn; a row
// every `record_every` steps plus the initial state.
RunRecord run(const ObserverSpec& spec, const Sampler& sampler, std::vector<double> x0, double duration, double dt,
              int record_every);

}  // namespace obsint
