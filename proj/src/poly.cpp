#include "obsint/poly.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "obsint/error.hpp"

namespace obsint {

RealPoly::RealPoly(std::vector<double> coeffs) {
  auto first = std::find_if(coeffs.begin(), coeffs.end(), [](double c) { return c != 0.0; });
  if (first == coeffs.end()) {
    throw Error("zero polynomial");
  }
  coeffs.erase(coeffs.begin(), first);
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw Error("non-finite polynomial coefficient");
  }
  coeffs_ = std::move(coeffs);
}

RealPoly RealPoly::from_roots(std::span<const std::complex<double>> roots) {
  std::vector<std::complex<double>> acc{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i];
      next[i + 1] -= acc[i] * r;
    }
    acc = std::move(next);
  }
  std::vector<double> real(acc.size());
  std::transform(acc.begin(), acc.end(), real.begin(), [](const auto& c) { return c.real(); });
  return RealPoly(std::move(real));
}

double RealPoly::coeff_of_power(int power) const {
  if (power < 0 || power > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(degree() - power)];
}

RealPoly RealPoly::monic() const {
  std::vector<double> c(coeffs_);
  const double lead = c.front();
  for (double& v : c) v /= lead;
  return RealPoly(std::move(c));
}

double RealPoly::operator()(double s) const {
  double acc = 0.0;
  for (double c : coeffs_) acc = acc * s + c;
  return acc;
}

std::complex<double> RealPoly::operator()(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (double c : coeffs_) acc = acc * s + c;
  return acc;
}

RealPoly RealPoly::derivative() const {
  if (degree() == 0) throw Error("derivative of a constant is the zero polynomial");
  std::vector<double> d;
  d.reserve(coeffs_.size() - 1);
  const int n = degree();
  for (int i = 0; i < n; ++i) d.push_back(coeffs_[static_cast<std::size_t>(i)] * (n - i));
  return RealPoly(std::move(d));
}

// ---------------------------------------------------------------------------
// Routh table

std::vector<double> RouthTable::first_column() const {
  std::vector<double> col;
  col.reserve(rows.size());
  for (const auto& r : rows) col.push_back(r.empty() ? 0.0 : r.front());
  return col;
}

bool RouthTable::has_zero_pivot() const {
  return std::any_of(zero_pivot.begin(), zero_pivot.end(), [](bool b) { return b; });
}

int RouthTable::sign_changes() const {
  const auto col = first_column();
  int changes = 0;
  for (std::size_t i = 1; i < col.size(); ++i) {
    if ((col[i - 1] > 0.0) != (col[i] > 0.0)) ++changes;
  }
  return changes;
}

RouthTable routh_table(const RealPoly& poly) {
  const int n = poly.degree();
  if (n < 1) throw Error("constant polynomial");

  // Work with a positive leading coefficient; the sign pattern is what matters.
  const double sign = poly.leading() > 0.0 ? 1.0 : -1.0;
  auto coeff = [&](int idx) { return idx <= n ? sign * poly.coeffs()[static_cast<std::size_t>(idx)] : 0.0; };

  RouthTable table;
  table.rows.resize(static_cast<std::size_t>(n + 1));
  table.zero_pivot.assign(static_cast<std::size_t>(n + 1), false);
  for (int i = 0; i <= n; ++i) {
    table.rows[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>((n - i) / 2 + 1), 0.0);
  }
  for (std::size_t j = 0; j < table.rows[0].size(); ++j) table.rows[0][j] = coeff(static_cast<int>(2 * j));
  for (std::size_t j = 0; j < table.rows[1].size(); ++j) table.rows[1][j] = coeff(static_cast<int>(2 * j + 1));

  constexpr double kTol = 64.0 * std::numeric_limits<double>::epsilon();
  const double scale0 = std::abs(table.rows[0][0]);
  if (std::abs(table.rows[1][0]) <= kTol * scale0) {
    table.rows[1][0] = 0.0;
    table.zero_pivot[1] = true;
    return table;
  }

  for (int i = 2; i <= n; ++i) {
    const auto& upper = table.rows[static_cast<std::size_t>(i - 2)];
    const auto& pivot_row = table.rows[static_cast<std::size_t>(i - 1)];
    auto& row = table.rows[static_cast<std::size_t>(i)];
    const double ratio = upper[0] / pivot_row[0];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double a = j + 1 < upper.size() ? upper[j + 1] : 0.0;
      const double b = j + 1 < pivot_row.size() ? ratio * pivot_row[j + 1] : 0.0;
      double v = a - b;
      if (std::abs(v) <= kTol * (std::abs(a) + std::abs(b))) v = 0.0;
      row[j] = v;
    }
    if (row[0] == 0.0) {
      table.zero_pivot[static_cast<std::size_t>(i)] = true;
      return table;
    }
  }
  return table;
}

bool is_hurwitz(const RealPoly& poly) {
  const RouthTable table = routh_table(poly);
  if (table.has_zero_pivot()) return false;
  const auto col = table.first_column();
  return std::all_of(col.begin(), col.end(), [](double v) { return v > 0.0; });
}

// ---------------------------------------------------------------------------
// Roots

namespace {

// Parlett-Reinsch style diagonal balancing with powers of two.
void balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(m(i, j));
        col += std::abs(m(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent != 0) {
        const double f = std::ldexp(1.0, exponent);
        if ((col * f + row / f) < 0.95 * (col + row)) {
          m.row(i) /= f;
          m.col(i) *= f;
          changed = true;
        }
      }
    }
  }
}

std::complex<double> polish(const RealPoly& p, const RealPoly& dp, std::complex<double> z) {
  double residual = std::abs(p(z));
  for (int it = 0; it < 8 && residual > 0.0; ++it) {
    const std::complex<double> d = dp(z);
    if (std::abs(d) == 0.0) break;
    const std::complex<double> next = z - p(z) / d;
    const double r = std::abs(p(next));
    if (!(r < residual)) break;
    z = next;
    residual = r;
  }
  return z;
}

}  // namespace

std::vector<std::complex<double>> roots(const RealPoly& poly) {
  const int n = poly.degree();
  if (n < 1) throw Error("constant polynomial");
  const RealPoly mono = poly.monic();
  if (n == 1) return {std::complex<double>(-mono.coeffs()[1], 0.0)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) companion(0, j) = -mono.coeffs()[static_cast<std::size_t>(j + 1)];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw Error("root finder did not converge");
  }
  const RealPoly dp = mono.derivative();
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    std::complex<double> z = solver.eigenvalues()[i];
    z = polish(mono, dp, z);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error("root finder did not converge");
    out.push_back(z);
  }
  return out;
}

double spectral_abscissa(const RealPoly& poly) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots(poly)) best = std::max(best, r.real());
  return best;
}

// ---------------------------------------------------------------------------
// Observer gain sets

void ObserverGainSet::validate() const {
  if (n < 1) throw Error("observer order must be >= 1");
  if (p < 1 || p > n) throw Error("sensor index p must lie in 1..n");
  if (static_cast<int>(k.size()) != n) throw Error("expected n gains");
  for (double v : k) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("observer gains must be positive and finite");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw Error("perturbation eps must lie in (0, 1)");
}

RealPoly characteristic_poly(const ObserverGainSet& g) {
  g.validate();
  std::vector<double> c(static_cast<std::size_t>(g.n + 1), 0.0);
  c[0] = 1.0;
  for (int i = 1; i <= g.n; ++i) {
    double v = g.gain(i);
    if (i == g.p) v /= std::pow(g.eps, g.p - c_of(g.p));
    c[static_cast<std::size_t>(g.n - (i - 1))] = v;
  }
  return RealPoly(std::move(c));
}

bool lemma1_supported(int n, int p) {
  if (p == 1) return n >= 1;
  return (n == 2 && p == 2) || (n == 3 && (p == 2 || p == 3)) || (n == 4 && p == 3);
}

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::optional<std::string> lemma1_violation(int n, int p, std::span<const double> k, double eps) {
  if (p < 1 || p > n) throw Error("sensor index p must lie in 1..n");
  if (static_cast<int>(k.size()) != n) throw Error("expected n gains");
  if (!lemma1_supported(n, p)) {
    throw Error("no Hurwitz selection exists for n = " + std::to_string(n) + ", p = " + std::to_string(p) +
                " at arbitrary eps");
  }
  if (!(eps > 0.0 && eps <= 1.0)) throw Error("perturbation eps must lie in (0, 1]");
  auto kk = [&](int i) { return k[static_cast<std::size_t>(i - 1)]; };
  for (int i = 1; i <= n; ++i) {
    if (!(kk(i) > 0.0)) return "k" + std::to_string(i) + " > 0 fails";
  }

  if (p == 1) {
    std::vector<double> c(static_cast<std::size_t>(n + 1));
    c[0] = 1.0;
    for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(n - i + 1)] = kk(i);
    if (!is_hurwitz(RealPoly(std::move(c)))) return std::string("s^n + sum k_i s^(i-1) is not Hurwitz");
    return std::nullopt;
  }
  if (n == 2) return std::nullopt;
  if (n == 3) {
    const double bound = std::pow(eps, p) * kk(1) / kk(3);
    if (!(kk(2) > bound)) {
      return "k2 > eps^" + std::to_string(p) + " k1 / k3 fails (" + fmt_num(kk(2)) + " <= " + fmt_num(bound) + ")";
    }
    return std::nullopt;
  }
  // n == 4, p == 3
  const double e3 = eps * eps * eps;
  const double bound3 = e3 * kk(2) / kk(4);
  if (!(kk(3) > bound3)) {
    return "k3 > eps^3 k2 / k4 fails (" + fmt_num(kk(3)) + " <= " + fmt_num(bound3) + ")";
  }
  const double bound2 = e3 * (kk(4) * kk(4) * kk(1) + kk(2) * kk(2)) / (kk(4) * kk(3));
  if (!(kk(2) > bound2)) {
    return "k2 > eps^3 (k4^2 k1 + k2^2) / (k4 k3) fails (" + fmt_num(kk(2)) + " <= " + fmt_num(bound2) + ")";
  }
  return std::nullopt;
}

std::optional<std::string> lemma1_violation(const ObserverGainSet& g) {
  g.validate();
  return lemma1_violation(g.n, g.p, g.k, g.eps);
}

bool lemma1_check(const ObserverGainSet& g) { return !lemma1_violation(g).has_value(); }

// ---------------------------------------------------------------------------
// Gain synthesis

namespace {

ObserverGainSet checked(ObserverGainSet g) {
  g.validate();
  if (auto why = lemma1_violation(g)) throw Error("synthesised gains violate the validity condition: " + *why);
  return g;
}

}  // namespace

ObserverGainSet gains_onefold(double a1, double a2, double omega_n) {
  if (!(a1 > 0.0 && a2 > 0.0 && omega_n > 0.0)) throw Error("eigenvalues and bandwidth must be positive");
  const double k1 = a1 * a2;
  const double eps = std::sqrt(k1) / omega_n;
  if (!(eps < 1.0)) throw Error("bandwidth too low for these eigenvalues (eps >= 1)");
  const double k2 = eps * eps * (a1 + a2);
  return checked({2, 2, {k1, k2}, eps});
}

ObserverGainSet gains_double(double a1, double a21, double a22, double eps) {
  if (!(a1 > 0.0 && a21 > 0.0 && a22 >= 0.0)) throw Error("need a1, a21 > 0 and a22 >= 0");
  const double mod2 = a21 * a21 + a22 * a22;
  const double k1 = a1 * mod2;
  const double k2 = mod2 + 2.0 * a1 * a21;
  const double k3 = eps * eps * eps * (a1 + 2.0 * a21);
  return checked({3, 3, {k1, k2, k3}, eps});
}

ObserverGainSet gains_diffint(double a11, double a12, double a2, double eps) {
  if (!(a11 > 0.0 && a12 >= 0.0 && a2 > 0.0)) throw Error("need a11, a2 > 0 and a12 >= 0");
  const double mod2 = a11 * a11 + a12 * a12;
  const double k1 = mod2 * a2;
  const double k2 = eps * eps * (mod2 + 2.0 * a11 * a2);
  const double k3 = 2.0 * a11 + a2;
  return checked({3, 2, {k1, k2, k3}, eps});
}

// ---------------------------------------------------------------------------
// Batch kernels

std::vector<char> classify_hurwitz_serial(std::span<const RealPoly> polys) {
  std::vector<char> out(polys.size());
  for (std::size_t i = 0; i < polys.size(); ++i) out[i] = is_hurwitz(polys[i]) ? 1 : 0;
  return out;
}

std::vector<char> classify_hurwitz(std::span<const RealPoly> polys) {
  std::vector<char> out(polys.size());
  const auto count = static_cast<std::ptrdiff_t>(polys.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = is_hurwitz(polys[static_cast<std::size_t>(i)]) ? 1 : 0;
  }
  return out;
}

}  // namespace obsint
