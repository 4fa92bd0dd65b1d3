#include "dbulab/special_functions.hpp"

#include <cmath>
#include <vector>

#include "dbulab/errors.hpp"
#include "dbulab/quadrature.hpp"

namespace dbu {

namespace {

double g_y_switch = 15.0;

// Real roots of s^3 + p s + q = 0, Newton-polished.
std::vector<double> cubic_real_roots(double p, double q) {
  std::vector<double> roots;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (disc < 0.0) {
    const double h = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    roots.push_back(std::cbrt(-q / 2.0 + h) + std::cbrt(-q / 2.0 - h));
  } else {
    const double rad = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * rad), -1.0, 1.0);
    const double theta = std::acos(arg);
    for (int k = 0; k < 3; ++k) {
      roots.push_back(rad * std::cos(theta / 3.0 - 2.0 * M_PI * k / 3.0));
    }
  }
  for (double& s : roots) {
    for (int it = 0; it < 4; ++it) {
      const double fs = s * s * s + p * s + q;
      const double dfs = 3.0 * s * s + p;
      if (dfs != 0.0) s -= fs / dfs;
    }
  }
  return roots;
}

}  // namespace

double pearcey_y_switch() { return g_y_switch; }
void set_pearcey_y_switch(double y) { g_y_switch = y; }

PearceyValue pearcey_contour(double x, double y, double tol) {
  // Rotate s = e^{i pi/8} r: the quartic term becomes e^{-r^4/4}. Along the
  // rotated line |integrand| = exp(-r^4/4 - sin(pi/4) x r^2/2 - sin(pi/8) y r),
  // so the truncation radius solves r^4/4 = L0 + growth terms.
  const double c2 = std::sin(M_PI / 4.0) / 2.0;  // 0.353553...
  const double c1 = std::sin(M_PI / 8.0);        // 0.382683...
  const double L0 = -std::log(tol) + 8.0;
  double R = std::pow(4.0 * L0, 0.25);
  for (int it = 0; it < 60; ++it) {
    R = std::pow(4.0 * (L0 + c2 * std::abs(x) * R * R + c1 * std::abs(y) * R), 0.25);
  }
  const cplx rot = std::exp(cplx(0.0, M_PI / 8.0));
  auto integrand = [&](double r) {
    const cplx s = rot * r;
    return std::exp(cplx(0.0, 1.0) * (s * s * s * s / 4.0 + x * s * s / 2.0 + y * s));
  };
  // Pre-split around the stationary region of the modulus so adaptivity finds
  // narrow peaks when |y| is sizeable.
  std::vector<double> brk = {-R, -R / 2, 0.0, R / 2, R};
  const double rpk = std::cbrt(c1 * std::abs(y));
  if (rpk > 0.2 && rpk < R) {
    brk.push_back(y > 0 ? -rpk : rpk);
    std::sort(brk.begin(), brk.end());
  }
  auto q = quad::adaptive_panels(integrand, brk, tol);
  if (!q.converged) {
    throw convergence_error("pearcey: contour quadrature did not converge", q.est_error);
  }
  PearceyValue out;
  out.value = q.value * rot / M_PI;
  out.est_error = (q.est_error + 5e-16 * q.abs_integral) / M_PI;
  out.method = PearceyMethod::contour_quadrature;
  return out;
}

PearceyValue pearcey_asymptotic(double x, double y) {
  // Sum of nondegenerate stationary-point contributions of
  // psi(s) = s^4/4 + x s^2/2 + y s, with two correction orders. psi is exactly
  // quartic, so the local Taylor data (a,b,c) below is exact.
  PearceyValue out;
  out.method = PearceyMethod::asymptotic;
  for (double s0 : cubic_real_roots(x, y)) {
    const double a = 3.0 * s0 * s0 + x;
    const double b = 6.0 * s0;
    const double c = 6.0;
    if (std::abs(a) < 1e-8) {
      throw convergence_error("pearcey: degenerate saddle, use contour quadrature", 1.0);
    }
    const double psi0 = s0 * s0 * s0 * s0 / 4.0 + x * s0 * s0 / 2.0 + y * s0;
    const double sgn = a > 0 ? 1.0 : -1.0;
    const cplx G = std::sqrt(2.0 * M_PI / std::abs(a)) * std::exp(cplx(0.0, sgn * M_PI / 4.0));
    const cplx S1 = cplx(0.0, 1.0) * sgn * (5.0 * b * b - 3.0 * c * a) / (24.0 * std::abs(a) * a * a);
    const double a4 = a * a * a * a;
    const double S2 = -35.0 * c * c / (384.0 * a4) + 35.0 * b * b * c / (64.0 * a4 * a) -
                      385.0 * b * b * b * b / (1152.0 * a4 * a * a);
    out.value += std::exp(cplx(0.0, psi0)) * G * (1.0 + S1 + S2) / M_PI;
    out.est_error += std::abs(G) * std::abs(S2) / M_PI;
  }
  return out;
}

PearceyValue pearcey(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw domain_error("pearcey: non-finite input");
  if (std::abs(y) >= g_y_switch) return pearcey_asymptotic(x, y);
  return pearcey_contour(x, y);
}

namespace {

// Maclaurin series Ai(z) = c1 f(z) - c2 g(z); safe from cancellation on
// roughly z in [-7.5, 2].
double airy_series(double z) {
  static const double c1 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
  static const double c2 = std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
  const double z3 = z * z * z;
  double f = 1.0, g = z;
  double tf = 1.0, tg = z;
  for (int k = 0; k < 80; ++k) {
    tf *= z3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    tg *= z3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    f += tf;
    g += tg;
    if (std::abs(tf) < 1e-18 && std::abs(tg) < 1e-18) break;
  }
  return c1 * f - c2 * g;
}

// DLMF 9.7.9 oscillatory asymptotics for Ai(-z), z large.
double airy_neg_asymptotic(double z) {
  const double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
  double u = 1.0;
  double even = 0.0, odd = 0.0;
  double sign = 1.0;
  double prev = 1e300;
  for (int k = 0; k < 40; ++k) {
    const double term_even = sign * u / std::pow(zeta, 2 * k);
    u *= (3.0 * (2 * k) + 2.5) * (3.0 * (2 * k) + 1.5) * (3.0 * (2 * k) + 0.5) /
         (54.0 * (2 * k + 1) * (2 * k + 0.5));
    const double term_odd = sign * u / std::pow(zeta, 2 * k + 1);
    u *= (3.0 * (2 * k + 1) + 2.5) * (3.0 * (2 * k + 1) + 1.5) * (3.0 * (2 * k + 1) + 0.5) /
         (54.0 * (2 * k + 2) * (2 * k + 1.5));
    if (std::abs(term_even) > prev) break;  // asymptotic series turned
    even += term_even;
    odd += term_odd;
    prev = std::abs(term_even);
    sign = -sign;
    if (std::abs(term_even) < 1e-17) break;
  }
  const double amp = 1.0 / (std::sqrt(M_PI) * std::pow(z, 0.25));
  return amp * (std::cos(zeta - M_PI / 4.0) * even + std::sin(zeta - M_PI / 4.0) * odd);
}

}  // namespace

double airy(double z) {
  if (!(std::abs(z) <= 50.0)) throw domain_error("airy: |z| <= 50 required");
  if (z < -7.5) return airy_neg_asymptotic(-z);
  if (z <= 2.0) return airy_series(z);
  // Positive tail through K_{1/3}: Ai(z) = (1/pi) sqrt(z/3) K_{1/3}((2/3) z^{3/2}).
  const double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
  return std::sqrt(z / 3.0) * bessel_k(1.0 / 3.0, zeta) / M_PI;
}

double bessel_k(double nu, double x) {
  if (!(nu > 0.0 && nu <= 1.0)) throw domain_error("bessel_k: nu in (0,1] required");
  if (!(x > 0.0)) throw domain_error("bessel_k: x > 0 required");
  // Truncation: x(cosh T - 1) - nu T >= 45 keeps the dropped tail below
  // 1e-19 relative to the e^{-x} scale of the result.
  double T = std::acosh(1.0 + 46.0 / x);
  for (int it = 0; it < 30; ++it) T = std::acosh(1.0 + (45.0 + nu * T) / x);
  auto integrand = [&](double t) -> cplx { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); };
  const double scale = std::exp(-x);
  auto q = quad::adaptive_panels(integrand, {0.0, T / 4.0, T / 2.0, T}, 1e-11 * scale);
  if (!q.converged) throw convergence_error("bessel_k: quadrature did not converge", q.est_error);
  return q.value.real();
}

}  // namespace dbu
