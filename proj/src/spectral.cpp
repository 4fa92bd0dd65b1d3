#include "dbulab/spectral.hpp"

#include <cmath>

#include "dbulab/errors.hpp"
#include "dbulab/fft.hpp"

namespace dbu {

Field frac_derivative(const Field& f, double s, std::optional<int> axis, DerivKind kind) {
  if (s < 0.0) throw domain_error("frac_derivative: order s must be >= 0");
  if (kind == DerivKind::bessel_all_but && !axis) {
    throw contract_error("frac_derivative: bessel_all_but needs an axis");
  }
  if (axis && (*axis < 0 || *axis >= f.grid.dim())) {
    throw contract_error("frac_derivative: axis out of range");
  }
  Multiplier m;
  switch (kind) {
    case DerivKind::homogeneous:
      if (axis) {
        m = {"D^s_x" + std::to_string(*axis + 1),
             [s, a = *axis](std::span<const double> xi) -> cplx {
               return std::pow(std::abs(xi[a]), s);
             }};
      } else {
        m = {"D^s", [s](std::span<const double> xi) -> cplx {
               double n2 = 0.0;
               for (double x : xi) n2 += x * x;
               return std::pow(n2, s / 2.0);
             }};
      }
      break;
    case DerivKind::bessel:
      m = {"J^s", [s](std::span<const double> xi) -> cplx {
             double n2 = 0.0;
             for (double x : xi) n2 += x * x;
             return std::pow(1.0 + n2, s / 2.0);
           }};
      break;
    case DerivKind::bessel_all_but:
      m = {"J^s_hat", [s, a = *axis](std::span<const double> xi) -> cplx {
             double n2 = 0.0;
             for (std::size_t k = 0; k < xi.size(); ++k)
               if (static_cast<int>(k) != a) n2 += xi[k] * xi[k];
             return std::pow(1.0 + n2, s / 2.0);
           }};
      break;
  }
  return apply_multiplier(f, m);
}

double sobolev_norm(const Field& f, double s) {
  if (s < 0.0) throw domain_error("sobolev_norm: s must be >= 0");
  Field fh = in_rep(f, Rep::frequency);
  const Grid& g = fh.grid;
  const int d = g.dim();
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> xi{};
  for (int a = 0; a < d; ++a) xi[a] = g.freq(a, 0);
  std::vector<double> terms(fh.size());
  for (std::size_t flat = 0; flat < fh.size(); ++flat) {
    double n2 = 0.0;
    for (int a = 0; a < d; ++a) n2 += xi[a] * xi[a];
    const double aabs = std::abs(fh.values[flat]);
    terms[flat] = std::pow(1.0 + n2, s) * aabs * aabs;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g.points(a)) {
        xi[a] = g.freq(a, idx[a]);
        break;
      }
      idx[a] = 0;
      xi[a] = g.freq(a, 0);
    }
  }
  return std::sqrt(pairwise_sum(terms) / g.box_volume());
}

Field square_function_oracle(const Field& f, double s) {
  if (f.grid.dim() != 1) throw contract_error("square_function_oracle: 1D grids only");
  if (!(s > 0.0 && s < 1.0)) throw domain_error("square_function_oracle: s in (0,1) required");
  const int n = f.grid.points(0);
  if (n > 4096) {
    throw cost_guard_error("square_function_oracle: N <= 4096 (quadratic cost)");
  }
  const Field fs = in_rep(f, Rep::space);
  const double dx = f.grid.spacing(0);
  const double L = f.grid.extent(0);
  // Local model for the |x-y| < dx cell: |f'(x)|^2 integrated over |h| < dx/2.
  const double half = 0.5 * dx;
  const double cell_w = 2.0 * std::pow(half, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);

  Field out(f.grid, Rep::space);
  std::vector<double> terms(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) {
        terms[j] = 0.0;
        continue;
      }
      const double dist = dx * std::abs(i - j);
      const double diff = std::abs(fs.values[i] - fs.values[j]);
      terms[j] = diff * diff / std::pow(dist, 1.0 + 2.0 * s) * dx;
    }
    const int ip = (i + 1) % n, im = (i - 1 + n) % n;
    const double fp = std::abs(fs.values[ip] - fs.values[im]) / (2.0 * dx);
    // Far field beyond the box: f(y) ~ 0 there for decaying data, leaving
    // |f(x)|^2 / |x-y|^{1+2s} tails on both sides.
    const double xi_coord = f.grid.coord(0, i);
    const double tail = std::norm(fs.values[i]) *
                        (std::pow(std::max(L + xi_coord, dx), -2.0 * s) +
                         std::pow(std::max(L - xi_coord, dx), -2.0 * s)) /
                        (2.0 * s);
    out.values[i] = std::sqrt(pairwise_sum(terms) + fp * fp * cell_w + tail);
  }
  return out;
}

void apply_table_inplace(Field& f, const std::vector<cplx>& table) {
  if (f.rep != Rep::space) throw contract_error("apply_table_inplace: space rep expected");
  if (table.size() != f.size()) throw contract_error("apply_table_inplace: table size mismatch");
  fft::dft(f.grid, f.values, -1);
  const double inv_n = 1.0 / static_cast<double>(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] *= table[i] * inv_n;
  fft::dft(f.grid, f.values, +1);
}

}  // namespace dbu
