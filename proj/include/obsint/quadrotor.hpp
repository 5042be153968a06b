#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "obsint/observer.hpp"
#include "obsint/record.hpp"
#include "obsint/signals.hpp"

namespace obsint {

struct QuadParams {
  double m = 2.0;
  double g = 9.81;
  double l = 0.2;
  double Jx = 1.25;
  double Jy = 1.25;
  double Jz = 2.5;
  double b = 2.923e-3;
  double k = 5e-4;
  double kx = 0.01, ky = 0.01, kz = 0.01;
  double kpsi = 0.012, ktheta = 0.012, kphi = 0.012;

  void validate() const;
};

// Layout: x, y, z, psi, theta, phi, then the six rates in the same order.
struct QuadState {
  std::array<double, 12> s{};

  Eigen::Vector3d pos() const { return {s[0], s[1], s[2]}; }
  Eigen::Vector3d att() const { return {s[3], s[4], s[5]}; }
  Eigen::Vector3d vel() const { return {s[6], s[7], s[8]}; }
  Eigen::Vector3d rates() const { return {s[9], s[10], s[11]}; }

  // From (x, x', y, y', z, z', psi, psi', theta, theta', phi, phi').
  static QuadState from_interleaved(const std::array<double, 12>& v);
};

struct RotorForces {
  std::array<double, 4> f{};
  double total() const { return f[0] + f[1] + f[2] + f[3]; }
};

struct Allocation {
  RotorForces forces;
  bool saturated = false;
};

// One sinusoid per channel: amp * sin(freq * t).
struct DisturbanceSpec {
  std::array<double, 6> amp{0.5, 0.5, 0.5, 0.2, 0.2, 0.2};
  std::array<double, 6> freq{1.0, 1.0, 1.0, 0.8, 0.8, 0.8};

  static DisturbanceSpec none() { return {{}, {}}; }
  // (dx, dy, dz, dpsi, dtheta, dphi)
  std::array<double, 6> at(double t) const;
};

Eigen::Matrix3d rotation_bg(double psi, double theta, double phi);

// Plant right-hand side. With translational_force set, that vector replaces
// the rotor thrust term of the translational equations (gravity, drag and
// disturbances still apply).
std::array<double, 12> dynamics(const QuadParams& p, const QuadState& x, const RotorForces& forces,
                                const std::array<double, 6>& delta,
                                const std::optional<Eigen::Vector3d>& translational_force = std::nullopt);
std::array<double, 12> dynamics(const QuadParams& p, const QuadState& x, const RotorForces& forces,
                                const DisturbanceSpec& dist, double t);

double thrust_magnitude(const Eigen::Vector3d& u_p);

// Rotor forces for total thrust F and body torques u_a, clamped to
// [0, 4 m g] per rotor.
Allocation allocate_rotors(const QuadParams& p, double F, const Eigen::Vector3d& u_a);
// Inverse map: (F, u_a) realised by the given rotor forces.
std::pair<double, Eigen::Vector3d> recompose(const QuadParams& p, const RotorForces& forces);

struct ReferencePoint {
  Eigen::Vector3d pos, vel, acc;
};

// x_d = y_d = 0, z_d = h0 (1 - exp(-0.5 km a t^2)).
struct ReferenceTrajectory {
  double h0 = 30.0;
  double a = 5.0;
  double km = 0.005;

  ReferencePoint at(double t) const;
};

ObserverSpec position_observer(std::vector<double> k, EpsSchedule schedule);
ObserverSpec attitude_observer(std::vector<double> k, EpsSchedule schedule);

struct ControlGains {
  double kp1 = 16.0, kp2 = 8.0;
  double ka1 = 28.0, ka2 = 8.0;
};

// u_p = -Xi_p - dhat - m (kp1 e + kp2 e').
Eigen::Vector3d position_controller(const QuadParams& p, const ControlGains& c, const ReferencePoint& ref,
                                    const Eigen::Vector3d& pos_hat, const Eigen::Vector3d& vel_hat,
                                    const Eigen::Vector3d& dhat);
// u_a = -Xi_a - dhat - J (ka1 e + ka2 e'), J = diag(Jz, Jy, Jx), zero reference.
Eigen::Vector3d attitude_controller(const QuadParams& p, const ControlGains& c, const Eigen::Vector3d& att_hat,
                                    const Eigen::Vector3d& rate_hat, const Eigen::Vector3d& dhat);

// How the disturbance feedforward is formed from the observer's x3.
//   twin:    mass * (x3 - y_p), y a copy of the observer driven by h(t)
//   delayed: mass * (x3 - h(t - dt))
//   raw:     x3
//   none:    0
enum class DhatMode { twin, delayed, raw, none };
// body: translational force R_bg e3 F. direct: u_p applied as the force.
enum class Actuation { body, direct };

DhatMode parse_dhat_mode(const std::string& s);
Actuation parse_actuation(const std::string& s);
std::string to_string(DhatMode m);
std::string to_string(Actuation a);

struct QuadSimConfig {
  QuadParams params;
  DisturbanceSpec dist;
  ReferenceTrajectory ref;
  ControlGains gains;

  std::vector<double> pos_k{6, 11, 6};
  double pos_eps_rate = 5.0;    // 1/eps = min(rate t, inv_max)
  double pos_eps_inv_max = 5.0;
  std::vector<double> att_k{0.1, 2, 1};
  double att_eps = 1.0 / 3.0;

  std::array<double, 12> x0_interleaved{0.5, -0.5, -0.5, 0.5, 0.5, -1, 0.2, 0.3, 0.3, -0.1, 0.2, -0.2};
  std::array<double, 9> pos_obs_x0{};
  std::array<double, 9> att_obs_x0{0.2, 0.3, 0, 0.3, -0.1, 0, 0.2, -0.2, 0};

  NoiseSpec pos_noise;
  NoiseSpec rate_noise;
  std::uint64_t seed = 1;

  DhatMode dhat = DhatMode::twin;
  Actuation actuation = Actuation::body;

  double kf_q = 1e-4;
  double kf_p0 = 1.0;

  double duration = 50.0;
  double dt = 1e-3;
  int record_every = 10;

  // Published settings, with measurement noise of variance 0.001 plus
  // 0.001 pulses (period 1 s, width 1 s).
  static QuadSimConfig published();
};

// Plant, six observers, controllers, rotor allocation and a KF attitude
// baseline, integrated together with RK4 at a fixed step. Throws
// DivergenceError on a non-finite state or |theta| >= pi/2.
RunRecord simulate_closed_loop(const QuadSimConfig& cfg);
// Same, but rows recorded before a divergence are left in `out`.
void simulate_closed_loop(const QuadSimConfig& cfg, RunRecord& out);

}  // namespace obsint
