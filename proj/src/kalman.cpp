#include "obsint/kalman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "obsint/error.hpp"

namespace obsint {

KfModel KfModel::chain(int m, int measured_index, double q, double r) {
  KfModel model;
  model.m = m;
  model.Q = Eigen::MatrixXd::Identity(m, m) * q;
  model.R = std::max(r, 1e-6);
  model.measured_index = measured_index;
  model.validate();
  return model;
}

void KfModel::validate() const {
  if (m < 1) throw Error("KF chain length must be >= 1");
  if (measured_index < 1 || measured_index > m) throw Error("KF measured_index must lie in 1..m");
  if (Q.rows() != m || Q.cols() != m) throw Error("KF process noise must be m x m");
  if (!(R > 0.0)) throw Error("KF measurement noise variance must be positive");
}

KfState KfState::initial(const KfModel& model, std::vector<double> mean, double p0) {
  if (mean.empty()) mean.assign(static_cast<std::size_t>(model.m), 0.0);
  if (static_cast<int>(mean.size()) != model.m) throw Error("KF initial mean has the wrong dimension");
  KfState s;
  s.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), model.m);
  s.cov = Eigen::MatrixXd::Identity(model.m, model.m) * p0;
  return s;
}

Eigen::MatrixXd chain_transition(int m, double dt) {
  Eigen::MatrixXd F = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < m; ++i) {
    double term = 1.0;
    for (int k = 1; i + k < m; ++k) {
      term *= dt / k;
      F(i, i + k) = term;
    }
  }
  return F;
}

KfState predict(const KfModel& model, const KfState& state, double dt) {
  if (dt < 0.0) throw Error("KF predict needs dt >= 0");
  if (dt == 0.0) return state;
  const Eigen::MatrixXd F = chain_transition(model.m, dt);
  KfState out;
  out.mean = F * state.mean;
  out.cov = F * state.cov * F.transpose() + model.Q * dt;
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  out.innovation = state.innovation;
  return out;
}

KfState update(const KfModel& model, const KfState& state, double z) {
  if (std::isinf(model.R)) return state;
  const int h = model.measured_index - 1;
  const double y = z - state.mean(h);
  const double S = state.cov(h, h) + model.R;
  const Eigen::VectorXd K = state.cov.col(h) / S;
  if (!K.allFinite()) throw Error("KF gain is not finite");
  KfState out;
  out.mean = state.mean + K * y;
  Eigen::MatrixXd IKH = Eigen::MatrixXd::Identity(model.m, model.m);
  IKH.col(h) -= K;
  out.cov = IKH * state.cov * IKH.transpose() + model.R * K * K.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  out.innovation = y;
  return out;
}

RunRecord run_baseline(const KfModel& model, const SignalSource& src, std::vector<double> x0, double duration,
                       double dt, int record_every, double p0) {
  model.validate();
  if (!(dt > 0.0)) throw Error("step size must be positive");
  if (record_every < 1) throw Error("record_every must be >= 1");
  std::vector<std::string> cols{"t", "z"};
  for (int i = 1; i <= model.m; ++i) cols.push_back("kf" + std::to_string(i));
  RunRecord rec(std::move(cols));
  KfState s = KfState::initial(model, std::move(x0), p0);
  std::vector<double> row(static_cast<std::size_t>(model.m + 2));
  auto emit = [&](double t, double z) {
    row[0] = t;
    row[1] = z;
    for (int i = 0; i < model.m; ++i) row[static_cast<std::size_t>(i + 2)] = s.mean(i);
    rec.add_row(row);
  };
  emit(0.0, src.sample(0.0));
  const auto steps = static_cast<long long>(std::llround(duration / dt));
  for (long long k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double z = src.sample(t);
    s = update(model, predict(model, s, dt), z);
    if (!s.mean.allFinite()) throw DivergenceError("KF divergence", t);
    if (k % record_every == 0) emit(t, z);
  }
  return rec;
}

}  // namespace obsint
