#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace dbu {

inline constexpr int kMaxDim = 3;

// Uniform periodic lattice on the box prod_i [-L_i, L_i), N_i points per axis
// (N_i a power of two). Space samples sit at x_j = -L + j*dx; the frequency
// lattice is xi_k = pi*k/L for k in [-N/2, N/2), with the single Nyquist mode
// assigned the positive frequency +pi*(N/2)/L.
class Grid {
public:
  Grid(std::vector<double> extent, std::vector<int> points);

  int dim() const { return dim_; }
  double extent(int axis) const { return extent_[axis]; }
  int points(int axis) const { return points_[axis]; }
  double spacing(int axis) const { return 2.0 * extent_[axis] / points_[axis]; }
  std::size_t size() const { return size_; }

  // Volume of one lattice cell, prod_i dx_i.
  double cell_volume() const;
  // Domain volume, prod_i 2 L_i.
  double box_volume() const;

  double coord(int axis, int k) const { return -extent_[axis] + spacing(axis) * k; }
  // Signed frequency for FFT-ordered index k in [0, N): pi*k/L for k <= N/2,
  // pi*(k-N)/L above. k = N/2 maps to the positive Nyquist frequency.
  double freq(int axis, int k) const {
    const int n = points_[axis];
    const int s = (k <= n / 2) ? k : k - n;
    return pi_over_L_[axis] * s;
  }
  double nyquist(int axis) const { return pi_over_L_[axis] * (points_[axis] / 2); }

  // Row-major strides, axis 0 slowest.
  std::size_t stride(int axis) const { return stride_[axis]; }
  // Decompose a flat index into per-axis indices.
  std::array<int, kMaxDim> unravel(std::size_t flat) const;

  bool same_shape(const Grid& other) const;

private:
  int dim_;
  std::array<double, kMaxDim> extent_{};
  std::array<int, kMaxDim> points_{};
  std::array<double, kMaxDim> pi_over_L_{};
  std::array<std::size_t, kMaxDim> stride_{};
  std::size_t size_;
};

}  // namespace dbu
