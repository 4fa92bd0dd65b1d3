#pragma once

#include <optional>

#include "dbulab/field.hpp"
#include "dbulab/multiplier.hpp"

namespace dbu {

enum class DerivKind {
  homogeneous,     // D^s = |xi|^s, or |xi_j|^s with an axis
  bessel,          // J^s = (1+|xi|^2)^{s/2}
  bessel_all_but,  // J^s_j^ = (1 + |xi|^2 - xi_j^2)^{s/2}, axis required
};

// Fractional derivative of order s >= 0 realized as a Fourier multiplier.
Field frac_derivative(const Field& f, double s, std::optional<int> axis = std::nullopt,
                      DerivKind kind = DerivKind::homogeneous);

// || (1+|xi|^2)^{s/2} f^ ||_{L^2} by frequency-space lattice quadrature.
double sobolev_norm(const Field& f, double s);

// Pointwise square function  D^s f(x) = ( int |f(x)-f(y)|^2 / |x-y|^{1+2s} dy )^{1/2}
// by direct double summation, 1D only; the |x-y| < dx cell uses a local
// finite-difference model. Quadratic cost, guarded at N <= 4096.
Field square_function_oracle(const Field& f, double s);

// In-place frequency-diagonal application of a precomputed FFT-layout table
// (as produced by symbol_table). The checkerboard phases of the transform
// convention cancel on the roundtrip, so this is the fast path for repeated
// diagonal steps.
void apply_table_inplace(Field& f, const std::vector<cplx>& table);

}  // namespace dbu
