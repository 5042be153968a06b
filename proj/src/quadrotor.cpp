#include "obsint/quadrotor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "obsint/error.hpp"
#include "obsint/kalman.hpp"

namespace obsint {

void QuadParams::validate() const {
  for (double v : {m, g, l, Jx, Jy, Jz, b, k, kx, ky, kz, kpsi, ktheta, kphi}) {
    if (!(v > 0.0)) throw Error("quadrotor parameters must all be strictly positive");
  }
}

QuadState QuadState::from_interleaved(const std::array<double, 12>& v) {
  QuadState q;
  for (int i = 0; i < 6; ++i) {
    q.s[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(2 * i)];
    q.s[static_cast<std::size_t>(i + 6)] = v[static_cast<std::size_t>(2 * i + 1)];
  }
  return q;
}

std::array<double, 6> DisturbanceSpec::at(double t) const {
  std::array<double, 6> d{};
  for (std::size_t i = 0; i < 6; ++i) d[i] = amp[i] * std::sin(freq[i] * t);
  return d;
}

Eigen::Matrix3d rotation_bg(double psi, double theta, double phi) {
  const double cps = std::cos(psi), sps = std::sin(psi);
  const double cth = std::cos(theta), sth = std::sin(theta);
  const double cph = std::cos(phi), sph = std::sin(phi);
  Eigen::Matrix3d R;
  R << cps * cth, sps * cph + cps * sth * sph, sps * sph - cps * sth * cph,
      -sps * cth, cps * cph - sps * sth * sph, cps * sph + sps * sth * cph,
      sth, -cth * sph, cth * cph;
  return R;
}

std::array<double, 12> dynamics(const QuadParams& p, const QuadState& x, const RotorForces& forces,
                                const std::array<double, 6>& delta,
                                const std::optional<Eigen::Vector3d>& translational_force) {
  const auto& s = x.s;
  const auto& f = forces.f;
  Eigen::Vector3d thrust;
  if (translational_force) {
    thrust = *translational_force;
  } else {
    thrust = rotation_bg(s[3], s[4], s[5]).col(2) * forces.total();
  }
  std::array<double, 12> d{};
  for (std::size_t i = 0; i < 6; ++i) d[i] = s[i + 6];
  d[6] = (thrust.x() - p.kx * s[6] + delta[0]) / p.m;
  d[7] = (thrust.y() - p.ky * s[7] + delta[1]) / p.m;
  d[8] = (thrust.z() - p.m * p.g - p.kz * s[8] + delta[2]) / p.m;
  d[9] = (p.k / p.b * (-f[0] + f[1] - f[2] + f[3]) - p.kpsi * s[9] + delta[3]) / p.Jz;
  d[10] = ((f[0] - f[2]) * p.l - p.l * p.ktheta * s[10] + delta[4]) / p.Jy;
  d[11] = ((f[1] - f[3]) * p.l - p.l * p.kphi * s[11] + delta[5]) / p.Jx;
  return d;
}

std::array<double, 12> dynamics(const QuadParams& p, const QuadState& x, const RotorForces& forces,
                                const DisturbanceSpec& dist, double t) {
  return dynamics(p, x, forces, dist.at(t));
}

double thrust_magnitude(const Eigen::Vector3d& u_p) { return u_p.norm(); }

Allocation allocate_rotors(const QuadParams& p, double F, const Eigen::Vector3d& u_a) {
  const double T = p.b / p.k * u_a(0);
  Allocation a;
  auto& f = a.forces.f;
  f[0] = (F - T) / 4.0 + u_a(1) / (2.0 * p.l);
  f[2] = (F - T) / 4.0 - u_a(1) / (2.0 * p.l);
  f[1] = (F + T) / 4.0 + u_a(2) / (2.0 * p.l);
  f[3] = (F + T) / 4.0 - u_a(2) / (2.0 * p.l);
  const double hi = 4.0 * p.m * p.g;
  for (double& v : f) {
    if (v < 0.0 || v > hi) {
      a.saturated = true;
      v = std::clamp(v, 0.0, hi);
    }
  }
  return a;
}

std::pair<double, Eigen::Vector3d> recompose(const QuadParams& p, const RotorForces& forces) {
  const auto& f = forces.f;
  return {forces.total(), Eigen::Vector3d(p.k / p.b * (-f[0] + f[1] - f[2] + f[3]), (f[0] - f[2]) * p.l,
                                          (f[1] - f[3]) * p.l)};
}

ReferencePoint ReferenceTrajectory::at(double t) const {
  const double e = std::exp(-0.5 * km * a * t * t);
  ReferencePoint r;
  r.pos = {0.0, 0.0, h0 * (1.0 - e)};
  r.vel = {0.0, 0.0, h0 * km * a * t * e};
  r.acc = {0.0, 0.0, h0 * km * a * (1.0 - km * a * t * t) * e};
  return r;
}

ObserverSpec position_observer(std::vector<double> k, EpsSchedule schedule) {
  const double eps = std::min(schedule.inf(), 0.5);
  return ObserverSpec(ObserverGainSet{3, 1, std::move(k), eps}, schedule);
}

ObserverSpec attitude_observer(std::vector<double> k, EpsSchedule schedule) {
  const double eps = std::min(schedule.inf(), 0.5);
  return ObserverSpec(ObserverGainSet{3, 2, std::move(k), eps}, schedule);
}

Eigen::Vector3d position_controller(const QuadParams& p, const ControlGains& c, const ReferencePoint& ref,
                                    const Eigen::Vector3d& pos_hat, const Eigen::Vector3d& vel_hat,
                                    const Eigen::Vector3d& dhat) {
  const Eigen::Vector3d xi(-p.m * ref.acc.x(), -p.m * ref.acc.y(), -p.m * ref.acc.z() - p.m * p.g);
  return -xi - dhat - p.m * (c.kp1 * (pos_hat - ref.pos) + c.kp2 * (vel_hat - ref.vel));
}

Eigen::Vector3d attitude_controller(const QuadParams& p, const ControlGains& c, const Eigen::Vector3d& att_hat,
                                    const Eigen::Vector3d& rate_hat, const Eigen::Vector3d& dhat) {
  const Eigen::Vector3d J(p.Jz, p.Jy, p.Jx);
  return -dhat - J.cwiseProduct(c.ka1 * att_hat + c.ka2 * rate_hat);
}

DhatMode parse_dhat_mode(const std::string& s) {
  if (s == "twin") return DhatMode::twin;
  if (s == "delayed") return DhatMode::delayed;
  if (s == "raw") return DhatMode::raw;
  if (s == "none") return DhatMode::none;
  throw Error("unknown dhat mode '" + s + "' (expected twin, delayed, raw or none)");
}

Actuation parse_actuation(const std::string& s) {
  if (s == "body") return Actuation::body;
  if (s == "direct") return Actuation::direct;
  throw Error("unknown actuation '" + s + "' (expected body or direct)");
}

std::string to_string(DhatMode m) {
  switch (m) {
    case DhatMode::twin: return "twin";
    case DhatMode::delayed: return "delayed";
    case DhatMode::raw: return "raw";
    case DhatMode::none: return "none";
  }
  return "?";
}

std::string to_string(Actuation a) { return a == Actuation::body ? "body" : "direct"; }

QuadSimConfig QuadSimConfig::published() {
  QuadSimConfig c;
  NoiseSpec n;
  n.random = RandomNoise{0.0, 0.001, 0, 1e-3};
  n.pulse = PulseNoise{0.001, 1.0, 1.0, 0.0, WidthUnits::seconds};
  c.pos_noise = n;
  c.rate_noise = n;
  return c;
}

// ---------------------------------------------------------------------------
// Closed loop

namespace {

// Combined state: plant (12), position observers (9), attitude observers
// (9), twin position observers (9), twin attitude observers (9).
constexpr std::size_t kPlant = 0, kPos = 12, kAtt = 21, kTwinPos = 30, kTwinAtt = 39, kDim = 48;
using Vec = std::array<double, kDim>;

struct Hold {
  RotorForces forces;
  std::optional<Eigen::Vector3d> direct_force;
  Eigen::Vector3d h_pos = Eigen::Vector3d::Zero();
  Eigen::Vector3d h_att = Eigen::Vector3d::Zero();
};

SignalSource noise_channel(const NoiseSpec& spec, std::uint64_t seed, double dt) {
  NoiseSpec n = spec;
  if (n.random) {
    n.random->seed = seed;
    if (n.random->sample_dt <= 0.0) n.random->sample_dt = dt;
  }
  return SignalSource("zero", n, 0.0);
}

}  // namespace

RunRecord simulate_closed_loop(const QuadSimConfig& cfg) {
  RunRecord rec;
  simulate_closed_loop(cfg, rec);
  return rec;
}

void simulate_closed_loop(const QuadSimConfig& cfg, RunRecord& rec) {
  const auto& P = cfg.params;
  P.validate();
  if (!(cfg.dt > 0.0)) throw Error("step size must be positive");
  if (cfg.duration < 0.0) throw Error("duration must be non-negative");
  if (cfg.record_every < 1) throw Error("record_every must be >= 1");

  const ObserverSpec pos_spec =
      position_observer(cfg.pos_k, EpsSchedule::ramp(cfg.pos_eps_rate, cfg.pos_eps_inv_max));
  const ObserverSpec att_spec = attitude_observer(cfg.att_k, EpsSchedule::constant(cfg.att_eps));
  const Eigen::Vector3d J(P.Jz, P.Jy, P.Jx);

  std::array<SignalSource, 6> noise{
      noise_channel(cfg.pos_noise, splitmix64(cfg.seed * 8 + 1), cfg.dt),
      noise_channel(cfg.pos_noise, splitmix64(cfg.seed * 8 + 2), cfg.dt),
      noise_channel(cfg.pos_noise, splitmix64(cfg.seed * 8 + 3), cfg.dt),
      noise_channel(cfg.rate_noise, splitmix64(cfg.seed * 8 + 4), cfg.dt),
      noise_channel(cfg.rate_noise, splitmix64(cfg.seed * 8 + 5), cfg.dt),
      noise_channel(cfg.rate_noise, splitmix64(cfg.seed * 8 + 6), cfg.dt)};

  Vec X{};
  const QuadState q0 = QuadState::from_interleaved(cfg.x0_interleaved);
  std::copy(q0.s.begin(), q0.s.end(), X.begin() + kPlant);
  std::copy(cfg.pos_obs_x0.begin(), cfg.pos_obs_x0.end(), X.begin() + kPos);
  std::copy(cfg.att_obs_x0.begin(), cfg.att_obs_x0.end(), X.begin() + kAtt);

  KfModel kf_model = KfModel::chain(2, 2, cfg.kf_q,
                                    cfg.rate_noise.random ? cfg.rate_noise.random->variance : 1e-6);
  std::array<KfState, 3> kf;
  for (std::size_t i = 0; i < 3; ++i) {
    kf[i] = KfState::initial(kf_model, {cfg.att_obs_x0[3 * i], cfg.att_obs_x0[3 * i + 1]}, cfg.kf_p0);
  }

  auto measure = [&](const Vec& x, double t, std::size_t ch) {
    const std::size_t idx = ch < 3 ? ch : ch + 6;  // positions, then rates
    return x[idx] + noise[ch].sample(t);
  };

  auto rhs = [&](double t, const Vec& x, const Hold& hold, const ChainWeights& cp, const ChainWeights& ca, Vec& dx) {
    QuadState qs;
    std::copy(x.begin(), x.begin() + 12, qs.s.begin());
    const auto dp = dynamics(P, qs, hold.forces, cfg.dist.at(t), hold.direct_force);
    std::copy(dp.begin(), dp.end(), dx.begin());
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t o = 3 * i;
      derivative_into(cp, std::span<const double>(x.data() + kPos + o, 3), measure(x, t, i),
                      std::span<double>(dx.data() + kPos + o, 3));
      derivative_into(ca, std::span<const double>(x.data() + kAtt + o, 3), measure(x, t, i + 3),
                      std::span<double>(dx.data() + kAtt + o, 3));
      derivative_into(cp, std::span<const double>(x.data() + kTwinPos + o, 3), hold.h_pos(static_cast<int>(i)),
                      std::span<double>(dx.data() + kTwinPos + o, 3));
      derivative_into(ca, std::span<const double>(x.data() + kTwinAtt + o, 3), hold.h_att(static_cast<int>(i)),
                      std::span<double>(dx.data() + kTwinAtt + o, 3));
    }
  };

  std::vector<std::string> cols{"t", "x", "y", "z", "psi", "theta", "phi", "vx", "vy", "vz", "dpsi", "dtheta",
                                "dphi", "xd", "yd", "zd", "meas_x", "meas_y", "meas_z", "meas_dpsi", "meas_dtheta",
                                "meas_dphi", "est_x", "est_vx", "est_x3", "est_y", "est_vy", "est_y3", "est_z",
                                "est_vz", "est_z3", "est_psi", "est_dpsi", "est_psi3", "est_theta", "est_dtheta",
                                "est_theta3", "est_phi", "est_dphi", "est_phi3", "dhat_x", "dhat_y", "dhat_z",
                                "dhat_psi", "dhat_theta", "dhat_phi", "delta_x", "delta_y", "delta_z", "delta_psi",
                                "delta_theta", "delta_phi", "F1", "F2", "F3", "F4", "F", "saturated", "kf_psi",
                                "kf_theta", "kf_phi"};
  rec = RunRecord(cols);
  rec.metadata["dhat_mode"] = to_string(cfg.dhat);
  rec.metadata["actuation"] = to_string(cfg.actuation);

  const auto steps = static_cast<long long>(std::llround(cfg.duration / cfg.dt));
  rec.reserve_rows(static_cast<std::size_t>(steps / cfg.record_every + 1));
  Eigen::Vector3d h_pos_prev = Eigen::Vector3d::Zero(), h_att_prev = Eigen::Vector3d::Zero();
  std::vector<double> row(cols.size());
  Vec k1, k2, k3, k4, tmp;

  for (long long s = 0;; ++s) {
    const double t = static_cast<double>(s) * cfg.dt;

    // Control from the current estimates.
    Eigen::Vector3d pos_hat, vel_hat, pos3, att_hat, rate_hat, att3, twin_pos, twin_att;
    for (int i = 0; i < 3; ++i) {
      const auto o = static_cast<std::size_t>(3 * i);
      pos_hat(i) = X[kPos + o];
      vel_hat(i) = X[kPos + o + 1];
      pos3(i) = X[kPos + o + 2];
      att_hat(i) = X[kAtt + o];
      rate_hat(i) = X[kAtt + o + 1];
      att3(i) = X[kAtt + o + 2];
      twin_pos(i) = X[kTwinPos + o];      // p = 1
      twin_att(i) = X[kTwinAtt + o + 1];  // p = 2
    }
    Eigen::Vector3d dhat_p, dhat_a;
    switch (cfg.dhat) {
      case DhatMode::twin:
        dhat_p = P.m * (pos3 - twin_pos);
        dhat_a = J.cwiseProduct(att3 - twin_att);
        break;
      case DhatMode::delayed:
        dhat_p = P.m * (pos3 - h_pos_prev);
        dhat_a = J.cwiseProduct(att3 - h_att_prev);
        break;
      case DhatMode::raw:
        dhat_p = pos3;
        dhat_a = att3;
        break;
      case DhatMode::none:
        dhat_p.setZero();
        dhat_a.setZero();
        break;
    }
    const ReferencePoint ref = cfg.ref.at(t);
    const Eigen::Vector3d u_p = position_controller(P, cfg.gains, ref, pos_hat, vel_hat, dhat_p);
    const Eigen::Vector3d u_a = attitude_controller(P, cfg.gains, att_hat, rate_hat, dhat_a);
    const Allocation alloc = allocate_rotors(P, thrust_magnitude(u_p), u_a);

    Hold hold;
    hold.forces = alloc.forces;
    const auto [F_real, ua_real] = recompose(P, alloc.forces);
    const Eigen::Vector3d gvec(0.0, 0.0, P.g);
    if (cfg.actuation == Actuation::direct) {
      hold.direct_force = u_p;
      hold.h_pos = u_p / P.m - gvec;
    } else {
      hold.h_pos = rotation_bg(att_hat(0), att_hat(1), att_hat(2)).col(2) * F_real / P.m - gvec;
    }
    hold.h_att = ua_real.cwiseQuotient(J);

    // KF baseline on the sampled rates.
    if (s > 0) {
      for (std::size_t i = 0; i < 3; ++i) kf[i] = update(kf_model, predict(kf_model, kf[i], cfg.dt), measure(X, t, i + 3));
    }

    if (s % cfg.record_every == 0) {
      const auto delta = cfg.dist.at(t);
      std::size_t c = 0;
      row[c++] = t;
      for (std::size_t i = 0; i < 12; ++i) row[c++] = X[i];
      for (int i = 0; i < 3; ++i) row[c++] = ref.pos(i);
      for (std::size_t i = 0; i < 6; ++i) row[c++] = measure(X, t, i);
      for (std::size_t i = 0; i < 9; ++i) row[c++] = X[kPos + i];
      for (std::size_t i = 0; i < 9; ++i) row[c++] = X[kAtt + i];
      for (int i = 0; i < 3; ++i) row[c++] = dhat_p(i);
      for (int i = 0; i < 3; ++i) row[c++] = dhat_a(i);
      row[c++] = delta[0] - P.kx * X[6];
      row[c++] = delta[1] - P.ky * X[7];
      row[c++] = delta[2] - P.kz * X[8];
      row[c++] = delta[3] - P.kpsi * X[9];
      row[c++] = delta[4] - P.l * P.ktheta * X[10];
      row[c++] = delta[5] - P.l * P.kphi * X[11];
      for (double f : alloc.forces.f) row[c++] = f;
      row[c++] = F_real;
      row[c++] = alloc.saturated ? 1.0 : 0.0;
      for (std::size_t i = 0; i < 3; ++i) row[c++] = kf[i].mean(0);
      rec.add_row(row);
    }
    if (s >= steps) break;

    h_pos_prev = hold.h_pos;
    h_att_prev = hold.h_att;

    const ChainWeights cp = ChainWeights::make(pos_spec, pos_spec.schedule().at(t));
    const ChainWeights ca = ChainWeights::make(att_spec, att_spec.schedule().at(t));
    const double dt = cfg.dt;
    rhs(t, X, hold, cp, ca, k1);
    for (std::size_t i = 0; i < kDim; ++i) tmp[i] = X[i] + 0.5 * dt * k1[i];
    rhs(t + 0.5 * dt, tmp, hold, cp, ca, k2);
    for (std::size_t i = 0; i < kDim; ++i) tmp[i] = X[i] + 0.5 * dt * k2[i];
    rhs(t + 0.5 * dt, tmp, hold, cp, ca, k3);
    for (std::size_t i = 0; i < kDim; ++i) tmp[i] = X[i] + dt * k3[i];
    rhs(t + dt, tmp, hold, cp, ca, k4);
    for (std::size_t i = 0; i < kDim; ++i) {
      X[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(X[i])) throw DivergenceError("closed-loop divergence", t + dt);
    }
    if (std::abs(X[4]) >= std::numbers::pi / 2) throw DivergenceError("pitch left (-pi/2, pi/2)", t + dt);
  }
}

}  // namespace obsint
