#pragma once

#include <functional>
#include <span>
#include <string>

#include "dbulab/field.hpp"

namespace dbu {

// Fourier multiplier: a symbol over frequency vectors, applied diagonally in
// frequency space.
struct Multiplier {
  std::string label;
  std::function<cplx(std::span<const double> xi)> symbol;
};

// Pointwise product of the frequency samples with the symbol; the result is
// returned in the caller's representation. Throws if the symbol is non-finite
// at some lattice frequency, naming that frequency.
Field apply_multiplier(const Field& f, const Multiplier& m);

// Evaluate the symbol on the grid's frequency lattice, FFT-index order.
std::vector<cplx> symbol_table(const Grid& grid, const Multiplier& m);

Multiplier identity_multiplier();
// Hilbert transform along one axis, -i sign(xi_j); Nyquist mode zeroed so real
// fields map to real fields.
Multiplier hilbert(const Grid& grid, int axis);
// j-th Riesz transform, i xi_j/|xi|; zero mode and Nyquist planes zeroed.
Multiplier riesz(const Grid& grid, int axis);
Multiplier product(const Multiplier& a, const Multiplier& b);

}  // namespace dbu
