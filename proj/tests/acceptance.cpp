// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Usage: acceptance [out_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "obsint/error.hpp"
#include "obsint/freq.hpp"
#include "obsint/log.hpp"
#include "obsint/observer.hpp"
#include "obsint/poly.hpp"
#include "obsint/quadrotor.hpp"
#include "obsint/record.hpp"
#include "obsint/scenarios.hpp"
#include "oracles.hpp"

using namespace obsint;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

Outcome c1() {
  const auto g = gains_onefold(100, 0.02, 8);
  const bool ok = std::abs(g.k[0] - 2) < 1e-9 && std::abs(g.eps - 0.1768) <= 5e-4 && std::abs(g.k[1] - 3.1256) <= 5e-4;
  return {ok, "k1=" + num(g.k[0]) + " eps=" + num(g.eps) + " k2=" + num(g.k[1])};
}

Outcome c2() {
  const auto a = gains_double(46.8218, 0.0266, 0.0999, 0.4);
  const auto b = gains_double(15.6190, 0.0030, 0.0800, 0.4);
  bool ok = true;
  const double wa[3] = {0.5, 2.5, 3}, wb[3] = {0.1, 0.1, 1};
  for (int i = 0; i < 3; ++i) {
    ok = ok && std::abs(a.k[static_cast<std::size_t>(i)] - wa[i]) < 1e-2;
    ok = ok && std::abs(b.k[static_cast<std::size_t>(i)] - wb[i]) < 1e-2;
  }
  return {ok, "(" + num(a.k[0]) + ", " + num(a.k[1]) + ", " + num(a.k[2]) + ") and (" + num(b.k[0]) + ", " +
                  num(b.k[1]) + ", " + num(b.k[2]) + ")"};
}

Outcome c3() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-5, 5);
  int agree = 0, considered = 0, borderline = 0;
  for (int i = 0; i < 1000; ++i) {
    const int deg = 1 + i % 6;
    std::vector<double> c(static_cast<std::size_t>(deg + 1));
    do {
      for (auto& v : c) v = u(rng);
    } while (c[0] == 0.0);
    const double mr = oracle::max_real(oracle::roots(c));
    if (std::abs(mr) <= 1e-6) {
      ++borderline;
      continue;
    }
    ++considered;
    agree += is_hurwitz(RealPoly(c)) == (mr < 0);
  }
  return {agree == considered, std::to_string(agree) + "/" + std::to_string(considered) + " agree, " +
                                   std::to_string(borderline) + " borderline skipped"};
}

Outcome c4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ue(0.05, 0.95);
  int bad = 0, total = 0;
  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {2, 2}, {3, 2}, {3, 3}, {4, 3}}) {
    int accepted = 0;
    for (int tries = 0; accepted < 500 && tries < 500000; ++tries) {
      ObserverGainSet g{n, p, std::vector<double>(static_cast<std::size_t>(n)), ue(rng)};
      for (auto& k : g.k) k = log_uniform(rng, 1e-2, 1e2);
      if (!lemma1_check(g)) continue;
      ++accepted;
      bad += !is_hurwitz(characteristic_poly(g));
    }
    total += accepted;
    if (accepted < 500) return {false, "only " + std::to_string(accepted) + " valid sets found for (" +
                                           std::to_string(n) + "," + std::to_string(p) + ")"};
  }
  int survivors = 0;
  for (auto [n, p] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {5, 3}, {5, 4}, {5, 5}}) {
    for (int s = 0; s < 200; ++s) {
      std::vector<double> k(static_cast<std::size_t>(n));
      for (auto& v : k) v = log_uniform(rng, 1e-2, 1e2);
      bool all = true;
      for (int e = 0; e <= 32 && all; ++e) {
        std::vector<double> c(static_cast<std::size_t>(n + 1));
        c[0] = 1;
        for (int i = 1; i <= n; ++i)
          c[static_cast<std::size_t>(n - i + 1)] = i == p ? std::pow(10.0, e / 4.0) : k[static_cast<std::size_t>(i - 1)];
        all = is_hurwitz(RealPoly(c));
      }
      survivors += all;
    }
  }
  return {bad == 0 && survivors == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                                          " valid sets Hurwitz; " + std::to_string(survivors) +
                                          " negative-case survivors"};
}

Outcome c5() {
  const ObserverGainSet g{3, 2, {0.1, 3, 2}, 0.1};
  const ObserverSpec spec(g);
  double worst_gain = 0, worst_phase = 0;
  for (double w : {0.5, 1.0, 2.0}) {
    const auto r = run(spec, [w](double t) { return std::sin(w * t); }, {}, 200, 1e-3, 5);
    const auto t = r.column(0);
    const auto x = r.column("x2");
    std::vector<double> tt, xx;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= 100) {
        tt.push_back(t[i]);
        xx.push_back(x[i]);
      }
    const auto [amp, ph] = oracle::sine_fit(tt, xx, w);
    const auto h = transfer_function(g, 2).eval({0, w});
    worst_gain = std::max(worst_gain, std::abs(amp / std::abs(h) - 1));
    worst_phase = std::max(worst_phase, std::abs(std::remainder((ph - std::arg(h)) * 180 / std::numbers::pi, 360.0)));
  }
  return {worst_gain < 0.02 && worst_phase < 3.0,
          "max gain mismatch " + num(100 * worst_gain) + "%, max phase mismatch " + num(worst_phase) + " deg"};
}

Outcome c6() {
  std::vector<double> band;
  for (int i = 0; i <= 200; ++i) band.push_back(0.1 * std::pow(10.0, i / 200.0));
  std::string detail;
  double prev = INFINITY;
  bool ok = true;
  for (double e : {0.2, 0.1, 0.05, 0.025}) {
    const auto d = passband_error(ObserverGainSet{3, 2, {0.1, 3, 2}, e}, 2, band);
    const double worst = *std::max_element(d.begin(), d.end());
    ok = ok && worst < prev;
    prev = worst;
    detail += (detail.empty() ? "" : " > ") + num(worst);
  }
  return {ok, "max |H2-1| over [0.1, 1]: " + detail};
}

Outcome c7(const fs::path& out) {
  std::string detail;
  bool ok = true;
  for (const auto& [name, integrals] : std::vector<std::pair<std::string, int>>{{"integ1-2000s", 1}, {"integ2-2000s", 2}}) {
    const auto r = run_scenario(name, default_config(name), out / name);
    for (int i = 1; i <= integrals; ++i) {
      const double s = std::abs(r.metrics.at("slope_err_x" + std::to_string(i)));
      const double k = std::abs(r.metrics.at("kf_slope_err_x" + std::to_string(i)));
      ok = ok && s < 1e-4 && k >= 10 * s;
      detail += name + " x" + std::to_string(i) + ": obs " + num(s) + ", kf " + num(k) + "; ";
    }
  }
  return {ok, detail};
}

Outcome c8(const fs::path& out) {
  std::string detail;
  bool ok = true;
  try {
    const auto r = run_scenario("quad-50s", default_config("quad-50s"), out / "quad-50s");
    const auto& m = r.metrics;
    const bool a = m.at("final_pos_err_to_hover_target") < 0.1 && m.at("final_att_max") < 0.02 &&
                   m.at("max_att_est_err") < 0.02;
    ok = ok && a;
    detail += "50 s: pos err " + num(m.at("final_pos_err_to_hover_target")) + " m, max |angle| " +
              num(m.at("final_att_max")) + " rad, est err " + num(m.at("max_att_est_err")) + " rad; ";
  } catch (const Error& e) {
    ok = false;
    detail += std::string("50 s: ") + e.what() + "; ";
  }
  try {
    const auto r = run_scenario("quad-1000s", default_config("quad-1000s"), out / "quad-1000s");
    const auto& m = r.metrics;
    const bool b = m.at("max_att_slope") < 1e-4 && m.at("max_kf_att_slope") >= 10 * m.at("max_att_slope");
    ok = ok && b;
    detail += "1000 s: slope " + num(m.at("max_att_slope")) + ", kf " + num(m.at("max_kf_att_slope"));
  } catch (const Error& e) {
    ok = false;
    detail += std::string("1000 s: ") + e.what();
  }
  return {ok, detail};
}

// Non-gating: force actuation, observers fast enough for a stable linearized loop.
void quad_info(const fs::path& out) {
  auto cfg = default_config("quad-50s");
  cfg.set("quad.actuation", "direct");
  cfg.set("quad.pos.eps_rate", "10");
  cfg.set("quad.pos.eps_inv_max", "10");
  cfg.set("quad.att.eps", "0.1");
  try {
    const auto r = run_scenario("quad-50s", cfg, out / "quad-50s-direct");
    const auto& m = r.metrics;
    std::printf("INFO 8 direct actuation, eps_pos = eps_att = 0.1: pos err %s m, max |angle| %s rad, est err %s rad, "
                "rotor saturation %s%% of samples\n",
                num(m.at("final_pos_err_to_hover_target")).c_str(), num(m.at("final_att_max")).c_str(),
                num(m.at("max_att_est_err")).c_str(), num(100 * m.at("saturated_fraction")).c_str());
  } catch (const Error& e) {
    std::printf("INFO 8 direct actuation: %s\n", e.what());
  }
}

Outcome c9() {
  std::string bad;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(-3.1, 3.1), pitch(-1.5, 1.5);
  for (int i = 0; i < 1000; ++i) {
    const auto R = rotation_bg(ang(rng), pitch(rng), ang(rng));
    if ((R * R.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-12 ||
        std::abs(R.determinant() - 1) > 1e-12) {
      bad += "rotation; ";
      break;
    }
  }
  const QuadParams p;
  std::uniform_real_distribution<double> F(10, 40), tq(-0.5, 0.5);
  for (int i = 0; i < 1000; ++i) {
    const double f = F(rng);
    const Eigen::Vector3d ua(tq(rng), tq(rng), tq(rng));
    const auto a = allocate_rotors(p, f, ua);
    if (a.saturated) continue;
    const auto [f2, ua2] = recompose(p, a.forces);
    if (std::abs(f2 - f) > 1e-12 * f || (ua2 - ua).cwiseAbs().maxCoeff() > 1e-12) {
      bad += "allocation; ";
      break;
    }
  }
  QuadState hover;
  hover.s[2] = 30;
  const double q = p.m * p.g / 4;
  for (double v : dynamics(p, hover, RotorForces{{q, q, q, q}}, std::array<double, 6>{}))
    if (std::abs(v) > 1e-12) {
      bad += "hover; ";
      break;
    }
  {
    const double dt = 1e-3;
    const auto r = run(preset_diffint(0.1, 3, 2, 0.2), [](double t) { return std::cos(t); }, {}, 20, dt, 1);
    const auto x1 = r.column("x1"), x2 = r.column("x2"), x3 = r.column("x3");
    double worst = 0;
    for (std::size_t i = 5000; i + 1 < x1.size(); ++i) {
      worst = std::max(worst, std::abs((x1[i + 1] - x1[i - 1]) / (2 * dt) - x2[i]));
      worst = std::max(worst, std::abs((x2[i + 1] - x2[i - 1]) / (2 * dt) - x3[i]));
    }
    if (worst > 1e-4) bad += "integral chain " + num(worst) + "; ";
  }
  {
    auto cfg = default_config("integ2-100s");
    cfg.set("scenario.duration", "10");
    cfg.set("scenario.settle", "1");
    cfg.set("scenario.trailing_window", "5");
    auto q = QuadSimConfig::published();
    q.duration = 2;
    if (!(to_csv(run_scenario("integ2-100s", cfg, {}).record) == to_csv(run_scenario("integ2-100s", cfg, {}).record)) ||
        !(to_csv(simulate_closed_loop(q)) == to_csv(simulate_closed_loop(q))))
      bad += "determinism; ";
  }
  return {bad.empty(), bad.empty() ? "rotation, allocation, hover, integral chain, determinism" : bad};
}

}  // namespace

int main(int argc, char** argv) {
  set_warnings_enabled(false);
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
  fs::create_directories(out);
  report(1, "onefold gain synthesis", c1);
  report(2, "double integrator gain synthesis", c2);
  report(3, "Hurwitz test vs root oracle", c3);
  report(4, "gain validity sweeps", c4);
  report(5, "simulation vs frequency response", c5);
  report(6, "operator limit as eps shrinks", c6);
  report(7, "no drift against the KF baseline", [&] { return c7(out); });
  report(8, "quadrotor tracking", [&] { return c8(out); });
  quad_info(out);
  report(9, "invariant suites", c9);
  return failures == 0 ? 0 : 1;
}
