#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace obsint {

// Gaussian draws held constant over each sample_dt interval. The draw for
// interval k depends only on (seed, k).
struct RandomNoise {
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t seed = 1;
  double sample_dt = 1e-3;

  double at(double t) const;
};

enum class WidthUnits { seconds, percent };

// amplitude while ((t - phase_delay) mod period) < width, else 0.
struct PulseNoise {
  double amplitude = 0.0;
  double period = 1.0;
  double width = 0.5;
  double phase_delay = 0.0;
  WidthUnits units = WidthUnits::seconds;

  double width_seconds() const { return units == WidthUnits::percent ? period * width / 100.0 : width; }
  double at(double t) const;
};

struct NoiseSpec {
  std::optional<RandomNoise> random;
  std::optional<PulseNoise> pulse;

  void validate() const;
};

// a01 = sin, a02 = cos, a03 = -sin, and the quadrotor altitude reference
// (zd, zd_dot, zd_ddot) with h0 = 30, a = 5, km = 0.005.
double analytic_truth(const std::string& name, double t);

class SignalSource {
 public:
  SignalSource(std::string base, NoiseSpec noise = {}, double bias = 0.0);

  // base(t) + pulse(t) + random(t) + bias
  double sample(double t) const;
  double truth(double t) const { return analytic_truth(base_, t); }
  const std::string& base() const { return base_; }
  const NoiseSpec& noise() const { return noise_; }
  double bias() const { return bias_; }

 private:
  std::string base_;
  NoiseSpec noise_;
  double bias_;
};

// Stateless generator helpers, exposed for the quadrotor noise channels.
std::uint64_t splitmix64(std::uint64_t x);
double gaussian_draw(std::uint64_t seed, std::uint64_t index);

}  // namespace obsint
