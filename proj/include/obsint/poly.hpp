#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace obsint {

// Real-coefficient polynomial, coefficients stored highest degree first.
// Leading zeros are stripped on construction; the zero polynomial is rejected.
class RealPoly {
 public:
  explicit RealPoly(std::vector<double> coeffs);

  // Monic polynomial with the given roots. Complex roots must come in
  // conjugate pairs; the imaginary residue of the expansion is dropped.
  static RealPoly from_roots(std::span<const std::complex<double>> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double leading() const { return coeffs_.front(); }

  // Coefficient of s^power (0 when power > degree).
  double coeff_of_power(int power) const;

  RealPoly monic() const;

  double operator()(double s) const;
  std::complex<double> operator()(std::complex<double> s) const;
  RealPoly derivative() const;

 private:
  std::vector<double> coeffs_;
};

// Standard Routh array. Rows are stored with their natural length
// ((degree - i) / 2 + 1). Zero first-column pivots are flagged and the
// construction stops there: such a polynomial is never strictly Hurwitz.
struct RouthTable {
  std::vector<std::vector<double>> rows;
  std::vector<bool> zero_pivot;

  std::vector<double> first_column() const;
  bool has_zero_pivot() const;
  // Sign changes in the first column; only meaningful without zero pivots.
  int sign_changes() const;
};

RouthTable routh_table(const RealPoly& poly);
bool is_hurwitz(const RealPoly& poly);

// All roots with multiplicity, via eigenvalues of the balanced companion
// matrix followed by Newton polishing.
std::vector<std::complex<double>> roots(const RealPoly& poly);

// Largest real part among the roots.
double spectral_abscissa(const RealPoly& poly);

// Order n, sensor index p (1-based), gains k_1..k_n and perturbation eps.
struct ObserverGainSet {
  int n = 0;
  int p = 0;
  std::vector<double> k;
  double eps = 0.0;

  // Throws obsint::Error if 1 <= p <= n, k_i > 0, 0 < eps < 1 do not hold.
  void validate() const;
  // Gain k_i with 1-based index.
  double gain(int i) const { return k.at(static_cast<std::size_t>(i - 1)); }
};

// c(p): 1 for the pure differentiator (p = 1), 0 otherwise.
inline int c_of(int p) { return p == 1 ? 1 : 0; }

// Equivalent characteristic polynomial with eps scaled out:
//   s^n + sum_{i != p} k_i s^{i-1} + (k_p / eps^{p - c(p)}) s^{p-1}.
// The observer's own characteristic polynomial has the same roots divided
// by eps.
RealPoly characteristic_poly(const ObserverGainSet& g);

// Returns std::nullopt when the gain-validity inequality for (n, p) holds,
// otherwise a description of the failed condition. Supported cases are
// p = 1 (any n), (2,2), (3,2), (3,3) and (4,3); any other (n, p) throws
// obsint::Error because no gain choice is Hurwitz for arbitrary eps.
// This overload accepts eps in (0, 1] so that schedules touching 1 can be
// checked at their supremum.
std::optional<std::string> lemma1_violation(int n, int p, std::span<const double> k, double eps);
std::optional<std::string> lemma1_violation(const ObserverGainSet& g);
bool lemma1_check(const ObserverGainSet& g);
bool lemma1_supported(int n, int p);

// Eigenvalue placement for the onefold integrator (n = 2, p = 2): places the
// equivalent polynomial's roots at -a1, -a2 with natural frequency omega_n.
ObserverGainSet gains_onefold(double a1, double a2, double omega_n);

// Double integrator (n = 3, p = 3): roots -a1, -a21 +/- a22 i.
ObserverGainSet gains_double(double a1, double a21, double a22, double eps);

// Differentiation-integration observer (n = 3, p = 2): roots -a11 +/- a12 i, -a2.
ObserverGainSet gains_diffint(double a11, double a12, double a2, double eps);

// Batch Hurwitz classification. The OpenMP and serial versions must agree
// element for element; the serial one is kept as the reference.
std::vector<char> classify_hurwitz(std::span<const RealPoly> polys);
std::vector<char> classify_hurwitz_serial(std::span<const RealPoly> polys);

}  // namespace obsint
