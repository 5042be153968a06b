#pragma once

#include <complex>
#include <span>
#include <vector>

#include "obsint/poly.hpp"
#include "obsint/record.hpp"

namespace obsint {

struct RationalTF {
  RealPoly num;
  RealPoly den;

  std::complex<double> eval(std::complex<double> s) const { return num(s) / den(s); }
};

// X_j(s) / A(s) for the observer with gains g:
//   k_p s^{j-1} / (eps^{n+1-c} s^n + sum_{i != p} k_i eps^{i-c} s^{i-1} + k_p s^{p-1}).
RationalTF transfer_function(const ObserverGainSet& g, int j);

struct FrequencyResponse {
  std::vector<double> omega;
  std::vector<double> magnitude_db;
  std::vector<double> phase_deg;  // unwrapped, numerator phase taken exactly
};

// n log-spaced points over [lo, hi] rad/s.
std::vector<double> log_grid(double lo = 1e-3, double hi = 1e3, int n = 400);

FrequencyResponse response(const RationalTF& tf, std::span<const double> omega);
FrequencyResponse response_serial(const RationalTF& tf, std::span<const double> omega);

// The ideal operator s^r.
FrequencyResponse ideal_response(int r, std::span<const double> omega);

// |H_j(i w) (i w)^{p-j} - 1| per grid point.
std::vector<double> passband_error(const ObserverGainSet& g, int j, std::span<const double> omega);
std::vector<double> passband_error_serial(const ObserverGainSet& g, int j, std::span<const double> omega);

// Last grid frequency where the deviation is below tol; 0 if none.
double usable_bandwidth(const ObserverGainSet& g, int j, std::span<const double> omega, double tol = 0.05);

// Columns: omega, mag_db_j1..jn, phase_deg_j1..jn.
RunRecord bode_record(const ObserverGainSet& g, std::span<const double> omega);

}  // namespace obsint
