#include "obsint/observer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "obsint/error.hpp"
#include "obsint/log.hpp"

namespace obsint {

// ---------------------------------------------------------------------------
// EpsSchedule

EpsSchedule EpsSchedule::constant(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error("perturbation eps must lie in (0, 1]");
  return EpsSchedule(eps, 0.0, 1.0 / eps);
}

EpsSchedule EpsSchedule::ramp(double rate, double inv_max) {
  if (!(rate > 0.0)) throw Error("eps ramp rate must be positive");
  if (!(inv_max >= 1.0)) throw Error("eps ramp ceiling 1/eps_min must be >= 1");
  return EpsSchedule(1.0 / inv_max, rate, inv_max);
}

double EpsSchedule::at(double t) const {
  if (rate_ == 0.0) return eps_;
  const double inv = std::min(rate_ * std::max(t, 0.0), inv_max_);
  return inv <= 1.0 ? 1.0 : 1.0 / inv;
}

double EpsSchedule::sup() const { return rate_ == 0.0 ? eps_ : 1.0; }
double EpsSchedule::inf() const { return rate_ == 0.0 ? eps_ : 1.0 / inv_max_; }

// ---------------------------------------------------------------------------
// ObserverSpec

namespace {

void check_validity(const ObserverGainSet& g, const EpsSchedule& schedule) {
  g.validate();
  if (g.n > kMaxObserverOrder) throw Error("observer order exceeds " + std::to_string(kMaxObserverOrder));
  if (auto why = lemma1_violation(g.n, g.p, g.k, schedule.sup())) {
    throw Error("gain validity condition violated: " + *why);
  }
}

}  // namespace

ObserverSpec::ObserverSpec(ObserverGainSet gains) : ObserverSpec(gains, EpsSchedule::constant(gains.eps)) {}

ObserverSpec::ObserverSpec(ObserverGainSet gains, EpsSchedule schedule)
    : gains_(std::move(gains)), schedule_(schedule) {
  check_validity(gains_, schedule_);
}

double ObserverSpec::recommended_max_dt() const {
  ObserverGainSet g = gains_;
  g.eps = std::min(schedule_.inf(), 0.999999);
  double lam = 0.0;
  for (const auto& r : roots(characteristic_poly(g))) lam = std::max(lam, std::abs(r));
  return 0.5 * schedule_.inf() / lam;
}

double ObserverSpec::rk4_stability_dt() const { return 2.785 / 0.5 * recommended_max_dt(); }

// ---------------------------------------------------------------------------
// Right-hand side

ChainWeights ChainWeights::make(const ObserverSpec& spec, double eps) {
  if (!(eps > 0.0)) throw Error("degenerate perturbation (eps <= 0)");
  const auto& g = spec.gain_set();
  ChainWeights cw;
  cw.n = g.n;
  cw.p = g.p;
  const int c = c_of(g.p);
  for (int i = 1; i <= g.n; ++i) {
    cw.w[static_cast<std::size_t>(i - 1)] = i == g.p ? g.gain(i) : g.gain(i) * std::pow(eps, i - c);
  }
  cw.inv_lead = 1.0 / std::pow(eps, g.n + 1 - c);
  return cw;
}

void derivative_into(const ChainWeights& cw, std::span<const double> x, double a, std::span<double> dx) {
  const auto n = static_cast<std::size_t>(cw.n);
  const auto p = static_cast<std::size_t>(cw.p - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) dx[i] = x[i + 1];
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc -= cw.w[i] * (i == p ? x[i] - a : x[i]);
  }
  dx[n - 1] = acc * cw.inv_lead;
}

std::vector<double> derivative(const ObserverSpec& spec, const ObserverState& state, double a) {
  if (static_cast<int>(state.x.size()) != spec.order()) throw Error("state dimension does not match observer order");
  const ChainWeights cw = ChainWeights::make(spec, spec.schedule().at(state.t));
  std::vector<double> dx(state.x.size());
  derivative_into(cw, state.x, a, dx);
  return dx;
}

void advance(const ObserverSpec& spec, ObserverState& state, const Sampler& sampler, double dt) {
  if (!(dt > 0.0)) throw Error("step size must be positive");
  const auto n = static_cast<std::size_t>(spec.order());
  if (state.x.size() != n) throw Error("state dimension does not match observer order");
  const ChainWeights cw = ChainWeights::make(spec, spec.schedule().at(state.t));
  const double t = state.t;
  const double a0 = sampler(t);
  const double am = sampler(t + 0.5 * dt);
  const double a1 = sampler(t + dt);

  std::array<double, kMaxObserverOrder> k1{}, k2{}, k3{}, k4{}, w{};
  const std::span<const double> x(state.x);
  const std::span<double> ws(w.data(), n);

  derivative_into(cw, x, a0, std::span<double>(k1.data(), n));
  for (std::size_t i = 0; i < n; ++i) w[i] = x[i] + 0.5 * dt * k1[i];
  derivative_into(cw, ws, am, std::span<double>(k2.data(), n));
  for (std::size_t i = 0; i < n; ++i) w[i] = x[i] + 0.5 * dt * k2[i];
  derivative_into(cw, ws, am, std::span<double>(k3.data(), n));
  for (std::size_t i = 0; i < n; ++i) w[i] = x[i] + dt * k3[i];
  derivative_into(cw, ws, a1, std::span<double>(k4.data(), n));

  for (std::size_t i = 0; i < n; ++i) {
    state.x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(state.x[i])) throw DivergenceError("observer divergence: dt too large or unstable gains", t);
  }
  state.t = t + dt;
}

ObserverState step(const ObserverSpec& spec, const ObserverState& state, const Sampler& sampler, double dt) {
  ObserverState next = state;
  advance(spec, next, sampler, dt);
  return next;
}

// ---------------------------------------------------------------------------
// Presets

ObserverSpec preset_differentiator(int n, std::vector<double> k, double eps) {
  return ObserverSpec(ObserverGainSet{n, 1, std::move(k), eps});
}

ObserverSpec preset_onefold(double k1, double k2, double eps) { return ObserverSpec(ObserverGainSet{2, 2, {k1, k2}, eps}); }

ObserverSpec preset_diffint(double k1, double k2, double k3, double eps) {
  return ObserverSpec(ObserverGainSet{3, 2, {k1, k2, k3}, eps});
}

ObserverSpec preset_double(double k1, double k2, double k3, double eps) {
  return ObserverSpec(ObserverGainSet{3, 3, {k1, k2, k3}, eps});
}

ObserverSpec preset_diff_double(double k1, double k2, double k3, double k4, double eps) {
  return ObserverSpec(ObserverGainSet{4, 3, {k1, k2, k3, k4}, eps});
}

// ---------------------------------------------------------------------------
// run

RunRecord run(const ObserverSpec& spec, const Sampler& sampler, std::vector<double> x0, double duration, double dt,
              int record_every) {
  const int n = spec.order();
  if (x0.empty()) x0.assign(static_cast<std::size_t>(n), 0.0);
  if (static_cast<int>(x0.size()) != n) throw Error("initial state dimension does not match observer order");
  if (!(dt > 0.0)) throw Error("step size must be positive");
  if (duration < 0.0) throw Error("duration must be non-negative");
  if (record_every < 1) throw Error("record_every must be >= 1");
  if (dt > spec.rk4_stability_dt()) {
    warn("dt = " + std::to_string(dt) + " s exceeds the RK4 stability limit " +
         std::to_string(spec.rk4_stability_dt()) + " s for this observer");
  }

  std::vector<std::string> cols{"t", "a"};
  for (int i = 1; i <= n; ++i) cols.push_back("x" + std::to_string(i));
  RunRecord rec(std::move(cols));
  const auto steps = static_cast<long long>(std::llround(duration / dt));
  rec.reserve_rows(static_cast<std::size_t>(steps / record_every + 1));

  ObserverState state{std::move(x0), 0.0};
  std::vector<double> row(static_cast<std::size_t>(n + 2));
  auto emit = [&] {
    row[0] = state.t;
    row[1] = sampler(state.t);
    std::copy(state.x.begin(), state.x.end(), row.begin() + 2);
    rec.add_row(row);
  };
  emit();
  for (long long s = 1; s <= steps; ++s) {
    advance(spec, state, sampler, dt);
    state.t = static_cast<double>(s) * dt;
    if (s % record_every == 0) emit();
  }
  return rec;
}

}  // namespace obsint
