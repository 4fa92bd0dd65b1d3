#pragma once

#include <complex>
#include <vector>

#include "dbulab/grid.hpp"

namespace dbu::fft {

// Unnormalized multi-dimensional DFT of FFTW convention:
// sign=-1: sum_j a_j e^{-2pi i kj/N} per axis; sign=+1 the conjugate.
// In-place on a row-major array matching the grid shape. Thread-safe.
void dft(const Grid& grid, std::vector<std::complex<double>>& data, int sign);

}  // namespace dbu::fft
