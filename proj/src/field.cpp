#include "dbulab/field.hpp"

#include <cmath>

#include "dbulab/errors.hpp"
#include "dbulab/fft.hpp"

namespace dbu {

Field::Field(Grid g, std::vector<cplx> v, Rep r) : grid(std::move(g)), values(std::move(v)), rep(r) {
  if (values.size() != grid.size()) {
    throw contract_error("field: sample count does not match grid");
  }
}

namespace {

// Multiply data[j] by s * (-1)^{sum of lattice indices of j}. Since every axis
// length is even, the leading-index parity alternates once per last-axis row.
void checkerboard_scale(const Grid& grid, std::vector<cplx>& data, double s) {
  const int d = grid.dim();
  const std::size_t row = static_cast<std::size_t>(grid.points(d - 1));
  const std::size_t nrows = data.size() / row;
  int row_parity = 0;
  std::size_t base = 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    double sgn = row_parity ? -s : s;
    for (std::size_t j = 0; j < row; ++j) {
      data[base + j] *= sgn;
      sgn = -sgn;
    }
    base += row;
    row_parity ^= 1;  // even axis lengths: carries never change the parity
  }
}

}  // namespace

Field transform(const Field& f, Rep target) {
  if (f.rep == target) {
    throw contract_error("transform: field already in the requested representation");
  }
  Field out = f;
  if (target == Rep::frequency) {
    fft::dft(out.grid, out.values, -1);
    checkerboard_scale(out.grid, out.values, out.grid.cell_volume());
  } else {
    checkerboard_scale(out.grid, out.values, 1.0 / out.grid.box_volume());
    fft::dft(out.grid, out.values, +1);
  }
  out.rep = target;
  return out;
}

Field in_rep(const Field& f, Rep target) { return f.rep == target ? f : transform(f, target); }

double pairwise_sum(const std::vector<double>& v) {
  // Fixed-order pairwise reduction: deterministic and O(eps log n) error.
  struct Rec {
    static double sum(const double* p, std::size_t n) {
      if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
      }
      const std::size_t h = n / 2;
      return sum(p, h) + sum(p + h, n - h);
    }
  };
  return Rec::sum(v.data(), v.size());
}

double space_lp_norm(const Field& f, double p) {
  if (f.rep != Rep::space) throw contract_error("space_lp_norm: field must be in space rep");
  if (!(p >= 1.0)) throw validation_error("space_lp_norm: p >= 1 required");
  if (std::isinf(p)) return sup_norm(f);
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) terms[i] = std::pow(std::abs(f.values[i]), p);
  return std::pow(pairwise_sum(terms) * f.grid.cell_volume(), 1.0 / p);
}

double sup_norm(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const Field& f) {
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f.values[i]);
    terms[i] = a * a;
  }
  const double w =
      (f.rep == Rep::space) ? f.grid.cell_volume() : 1.0 / f.grid.box_volume();
  return std::sqrt(pairwise_sum(terms) * w);
}

namespace {
void check_compatible(const Field& a, const Field& b, const char* op) {
  if (!a.grid.same_shape(b.grid) || a.rep != b.rep) {
    throw contract_error(std::string(op) + ": fields must share grid and representation");
  }
}
}  // namespace

Field operator+(const Field& a, const Field& b) {
  check_compatible(a, b, "operator+");
  Field out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
  return out;
}

Field operator-(const Field& a, const Field& b) {
  check_compatible(a, b, "operator-");
  Field out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

Field operator*(cplx s, const Field& a) {
  Field out = a;
  for (auto& v : out.values) v *= s;
  return out;
}

}  // namespace dbu
