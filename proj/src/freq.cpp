#include "obsint/freq.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "obsint/error.hpp"

namespace obsint {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

std::vector<double> monomial(double c, int power) {
  std::vector<double> v(static_cast<std::size_t>(power + 1), 0.0);
  v[0] = c;
  return v;
}

// Magnitude and raw denominator angle at one frequency.
void eval_point(const RationalTF& tf, double w, double& mag_db, double& den_arg) {
  if (!(w > 0.0)) throw Error("frequency grid must be positive");
  const std::complex<double> s(0.0, w);
  const auto d = tf.den(s);
  if (d == 0.0) throw Error("denominator vanishes at omega = " + std::to_string(w));
  mag_db = 20.0 * std::log10(std::abs(tf.num(s)) / std::abs(d));
  den_arg = std::arg(d);
}

// tf.num is always c * s^m with c > 0, so its phase is 90 m exactly.
FrequencyResponse finish(const RationalTF& tf, std::span<const double> omega, std::vector<double> mag,
                         std::vector<double> den_arg) {
  FrequencyResponse fr;
  fr.omega.assign(omega.begin(), omega.end());
  fr.magnitude_db = std::move(mag);
  fr.phase_deg.resize(omega.size());
  const double num_phase = 90.0 * tf.num.degree() + (tf.num.leading() < 0 ? 180.0 : 0.0);
  double prev = 0.0, offset = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double a = den_arg[i] * kDeg;
    if (i > 0) {
      if (a - prev > 180.0) offset -= 360.0;
      if (a - prev < -180.0) offset += 360.0;
    }
    prev = a;
    fr.phase_deg[i] = num_phase - (a + offset);
  }
  return fr;
}

std::complex<double> ipow(std::complex<double> z, int r) {
  std::complex<double> out = 1.0;
  for (int i = 0; i < std::abs(r); ++i) out *= z;
  return r < 0 ? 1.0 / out : out;
}

}  // namespace

RationalTF transfer_function(const ObserverGainSet& g, int j) {
  g.validate();
  if (j < 1 || j > g.n) throw Error("transfer function index j must lie in 1..n");
  const int c = c_of(g.p);
  std::vector<double> den(static_cast<std::size_t>(g.n + 1), 0.0);
  den[0] = std::pow(g.eps, g.n + 1 - c);
  for (int i = 1; i <= g.n; ++i) {
    const double w = i == g.p ? g.gain(i) : g.gain(i) * std::pow(g.eps, i - c);
    den[static_cast<std::size_t>(g.n - (i - 1))] += w;
  }
  return RationalTF{RealPoly(monomial(g.gain(g.p), j - 1)), RealPoly(std::move(den))};
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw Error("log grid needs 0 < lo < hi and n >= 2");
  std::vector<double> w(static_cast<std::size_t>(n));
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (n - 1));
  return w;
}

FrequencyResponse response_serial(const RationalTF& tf, std::span<const double> omega) {
  std::vector<double> mag(omega.size()), arg(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) eval_point(tf, omega[i], mag[i], arg[i]);
  return finish(tf, omega, std::move(mag), std::move(arg));
}

FrequencyResponse response(const RationalTF& tf, std::span<const double> omega) {
  std::vector<double> mag(omega.size()), arg(omega.size());
  const auto count = static_cast<std::ptrdiff_t>(omega.size());
  // Exceptions cannot leave an OpenMP region; collect and rethrow.
  bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      eval_point(tf, omega[u], mag[u], arg[u]);
    } catch (const Error&) {
      bad = true;
    }
  }
  if (bad) return response_serial(tf, omega);
  return finish(tf, omega, std::move(mag), std::move(arg));
}

FrequencyResponse ideal_response(int r, std::span<const double> omega) {
  FrequencyResponse fr;
  fr.omega.assign(omega.begin(), omega.end());
  for (double w : omega) {
    if (!(w > 0.0)) throw Error("frequency grid must be positive");
    fr.magnitude_db.push_back(20.0 * r * std::log10(w));
    fr.phase_deg.push_back(90.0 * r);
  }
  return fr;
}

std::vector<double> passband_error_serial(const ObserverGainSet& g, int j, std::span<const double> omega) {
  const auto tf = transfer_function(g, j);
  std::vector<double> out(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const std::complex<double> s(0.0, omega[i]);
    out[i] = std::abs(tf.eval(s) * ipow(s, g.p - j) - 1.0);
  }
  return out;
}

std::vector<double> passband_error(const ObserverGainSet& g, int j, std::span<const double> omega) {
  const auto tf = transfer_function(g, j);
  std::vector<double> out(omega.size());
  const auto count = static_cast<std::ptrdiff_t>(omega.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::complex<double> s(0.0, omega[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)] = std::abs(tf.eval(s) * ipow(s, g.p - j) - 1.0);
  }
  return out;
}

double usable_bandwidth(const ObserverGainSet& g, int j, std::span<const double> omega, double tol) {
  const auto err = passband_error(g, j, omega);
  double last = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    if (err[i] < tol) last = omega[i];
  }
  return last;
}

RunRecord bode_record(const ObserverGainSet& g, std::span<const double> omega) {
  std::vector<std::string> cols{"omega"};
  for (int j = 1; j <= g.n; ++j) cols.push_back("mag_db_j" + std::to_string(j));
  for (int j = 1; j <= g.n; ++j) cols.push_back("phase_deg_j" + std::to_string(j));
  std::vector<FrequencyResponse> fr;
  for (int j = 1; j <= g.n; ++j) fr.push_back(response(transfer_function(g, j), omega));
  RunRecord rec(std::move(cols));
  std::vector<double> row(static_cast<std::size_t>(2 * g.n + 1));
  for (std::size_t i = 0; i < omega.size(); ++i) {
    row[0] = omega[i];
    for (std::size_t j = 0; j < fr.size(); ++j) {
      row[1 + j] = fr[j].magnitude_db[i];
      row[1 + fr.size() + j] = fr[j].phase_deg[i];
    }
    rec.add_row(row);
  }
  return rec;
}

}  // namespace obsint
