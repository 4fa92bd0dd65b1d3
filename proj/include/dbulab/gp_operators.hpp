#pragma once

#include "dbulab/multiplier.hpp"

namespace dbu {

// Fourier symbols of the operator family behind the flat-background
// reformulation: A = sqrt(-Lap(2-Lap)) and B = sqrt(-Lap (2-Lap)^{-1}),
// which satisfy A = -Lap B^{-1} = (2-Lap) B. All take |xi|^2.
double gp_symbol_A(double xi2);
double gp_symbol_B(double xi2);
double gp_symbol_r(double xi2);  // -2|xi|^2/(sqrt(|xi|^2(|xi|^2+2)) + |xi|^2)^2, r(0) = -1
double gp_symbol_a(double xi2);  // a = 1 + r
cplx gp_symbol_kappa(double xi2, double t);  // 2i sin(t r/2) e^{i t r/2}

// The family as named multipliers. B_inv and b2 are singular at the zero mode;
// by policy they evaluate to 0 there, which is only correct on zero-mean real
// parts (see upsilon below).
struct GpOperators {
  Multiplier A, B, B_inv, b1, b2, r, a;
  Multiplier kappa(double t) const;
};
GpOperators gp_operators();

struct UpsilonResult {
  Field field;
  double projected_mean = 0.0;  // mean of Re f removed before B^{-1} (inverse only)
};

// Real-linear map Y f = B Re f + i Im f (forward) and Y^{-1} f = B^{-1} Re f + i Im f
// (inverse). The inverse projects out the mean of the real part and reports it.
UpsilonResult upsilon(const Field& f, bool forward);

}  // namespace dbu
