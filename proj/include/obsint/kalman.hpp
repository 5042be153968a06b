#pragma once

#include <Eigen/Dense>
#include <vector>

#include "obsint/record.hpp"
#include "obsint/signals.hpp"

namespace obsint {

// Linear KF on the kinematic chain x_i' = x_{i+1}, x_m' = 0 with the sensor
// reading chain state measured_index (1-based).
struct KfModel {
  int m = 2;
  Eigen::MatrixXd Q;  // continuous-time process noise density
  double R = 1e-2;
  int measured_index = 2;

  // Q = q I, R floored at 1e-6.
  static KfModel chain(int m, int measured_index, double q = 1e-4, double r = 1e-2);
  void validate() const;
};

struct KfState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  double innovation = 0.0;

  static KfState initial(const KfModel& model, std::vector<double> mean, double p0 = 1.0);
};

Eigen::MatrixXd chain_transition(int m, double dt);

KfState predict(const KfModel& model, const KfState& state, double dt);
// Joseph form. R = +inf leaves the state untouched.
KfState update(const KfModel& model, const KfState& state, double z);

// Predict/update at every dt using src.sample(t). Columns t, z, kf1..kfm.
RunRecord run_baseline(const KfModel& model, const SignalSource& src, std::vector<double> x0, double duration,
                       double dt, int record_every = 1, double p0 = 1.0);

}  // namespace obsint
