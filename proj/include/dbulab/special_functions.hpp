#pragma once

#include <complex>

namespace dbu {

using cplx = std::complex<double>;

enum class PearceyMethod { contour_quadrature, asymptotic };

struct PearceyValue {
  cplx value{0.0, 0.0};
  double est_error = 0.0;
  PearceyMethod method = PearceyMethod::contour_quadrature;
};

// Pearcey integral B(x,y) = (1/pi) int exp(i(s^4/4 + x s^2/2 + y s)) ds.
// Contour quadrature along s = e^{i pi/8} r for |y| below the switch point,
// saddle-point expansion beyond it. B is even in y.
PearceyValue pearcey(double x, double y);
PearceyValue pearcey_contour(double x, double y, double tol = 1e-9);
PearceyValue pearcey_asymptotic(double x, double y);
double pearcey_y_switch();
void set_pearcey_y_switch(double y);

// Airy function, standard normalization Ai(0) = 3^{-2/3}/Gamma(2/3).
// Absolute error <= 1e-10 on |z| <= 50 (domain error beyond).
double airy(double z);

// Modified Bessel K_nu(x) for nu in (0,1], x > 0, via the integral
// representation int_0^inf e^{-x cosh t} cosh(nu t) dt. Relative error <= 1e-8.
double bessel_k(double nu, double x);

}  // namespace dbu
