#include "obsint/signals.hpp"

#include <cmath>
#include <numbers>

#include "obsint/error.hpp"

namespace obsint {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

double unit_open(std::uint64_t bits) {
  // 53 random bits mapped into (0, 1).
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double gaussian_draw(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64(index));
  const double u1 = unit_open(h);
  const double u2 = unit_open(splitmix64(h));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomNoise::at(double t) const {
  if (variance == 0.0) return mean;
  const auto k = static_cast<std::uint64_t>(std::floor(std::max(t, 0.0) / sample_dt + 1e-9));
  return mean + std::sqrt(variance) * gaussian_draw(seed, k);
}

double PulseNoise::at(double t) const {
  double r = std::fmod(t - phase_delay, period);
  if (r < 0) r += period;
  return r < width_seconds() ? amplitude : 0.0;
}

void NoiseSpec::validate() const {
  if (random) {
    if (!(random->variance >= 0.0)) throw Error("noise variance must be >= 0");
    if (!(random->sample_dt > 0.0)) throw Error("noise sample_dt must be positive");
  }
  if (pulse) {
    if (!(pulse->period > 0.0)) throw Error("pulse period must be positive");
    const double w = pulse->width_seconds();
    if (!(w > 0.0 && w <= pulse->period)) throw Error("pulse width must satisfy 0 < width <= period");
  }
}

double analytic_truth(const std::string& name, double t) {
  constexpr double h0 = 30.0, a = 5.0, km = 0.005;
  if (name == "a01" || name == "sin") return std::sin(t);
  if (name == "a02" || name == "cos") return std::cos(t);
  if (name == "a03" || name == "-sin") return -std::sin(t);
  if (name == "zero") return 0.0;
  const double e = std::exp(-0.5 * km * a * t * t);
  if (name == "zd") return h0 * (1.0 - e);
  if (name == "zd_dot") return h0 * km * a * t * e;
  if (name == "zd_ddot") return h0 * km * a * (1.0 - km * a * t * t) * e;
  throw Error("unknown signal name: " + name);
}

SignalSource::SignalSource(std::string base, NoiseSpec noise, double bias)
    : base_(std::move(base)), noise_(noise), bias_(bias) {
  analytic_truth(base_, 0.0);
  noise_.validate();
}

double SignalSource::sample(double t) const {
  double v = analytic_truth(base_, t) + bias_;
  if (noise_.pulse) v += noise_.pulse->at(t);
  if (noise_.random) v += noise_.random->at(t);
  return v;
}

}  // namespace obsint
