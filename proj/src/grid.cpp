#include "dbulab/grid.hpp"

#include <cmath>

#include "dbulab/errors.hpp"

namespace dbu {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(std::vector<double> extent, std::vector<int> points) {
  if (extent.size() != points.size() || extent.empty() || extent.size() > kMaxDim) {
    throw validation_error("grid: need matching extent/points for 1 <= dim <= 3");
  }
  dim_ = static_cast<int>(extent.size());
  size_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (!(extent[a] > 0.0)) throw validation_error("grid: extent must be positive");
    if (points[a] < 4 || !power_of_two(points[a])) {
      throw validation_error("grid: points per axis must be a power of two >= 4");
    }
    extent_[a] = extent[a];
    points_[a] = points[a];
    pi_over_L_[a] = M_PI / extent[a];
    size_ *= static_cast<std::size_t>(points[a]);
  }
  std::size_t s = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    stride_[a] = s;
    s *= static_cast<std::size_t>(points_[a]);
  }
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= spacing(a);
  return v;
}

double Grid::box_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= 2.0 * extent_[a];
  return v;
}

std::array<int, kMaxDim> Grid::unravel(std::size_t flat) const {
  std::array<int, kMaxDim> idx{};
  for (int a = 0; a < dim_; ++a) {
    idx[a] = static_cast<int>(flat / stride_[a]);
    flat %= stride_[a];
  }
  return idx;
}

bool Grid::same_shape(const Grid& other) const {
  if (dim_ != other.dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (points_[a] != other.points_[a] || extent_[a] != other.extent_[a]) return false;
  }
  return true;
}

}  // namespace dbu
