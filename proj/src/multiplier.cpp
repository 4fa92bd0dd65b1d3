#include "dbulab/multiplier.hpp"

#include <cmath>
#include <sstream>

#include "dbulab/errors.hpp"

namespace dbu {

std::vector<cplx> symbol_table(const Grid& grid, const Multiplier& m) {
  const int d = grid.dim();
  std::vector<cplx> table(grid.size());
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> xi{};
  for (int a = 0; a < d; ++a) xi[a] = grid.freq(a, 0);
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    const cplx v = m.symbol(std::span<const double>(xi.data(), d));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "multiplier '" << m.label << "' non-finite at xi = (";
      for (int a = 0; a < d; ++a) os << (a ? ", " : "") << xi[a];
      os << ")";
      throw domain_error(os.str());
    }
    table[flat] = v;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < grid.points(a)) {
        xi[a] = grid.freq(a, idx[a]);
        break;
      }
      idx[a] = 0;
      xi[a] = grid.freq(a, 0);
    }
  }
  return table;
}

Field apply_multiplier(const Field& f, const Multiplier& m) {
  const Rep orig = f.rep;
  Field fh = in_rep(f, Rep::frequency);
  const auto table = symbol_table(fh.grid, m);
  for (std::size_t i = 0; i < fh.size(); ++i) fh.values[i] *= table[i];
  return in_rep(fh, orig);
}

Multiplier identity_multiplier() {
  return {"1", [](std::span<const double>) { return cplx(1.0, 0.0); }};
}

Multiplier hilbert(const Grid& grid, int axis) {
  const double nyq = grid.nyquist(axis);
  return {"H_" + std::to_string(axis + 1),
          [axis, nyq](std::span<const double> xi) -> cplx {
            const double x = xi[axis];
            if (x == 0.0 || x == nyq) return {0.0, 0.0};
            return {0.0, x > 0 ? -1.0 : 1.0};
          }};
}

Multiplier riesz(const Grid& grid, int axis) {
  std::array<double, kMaxDim> nyq{};
  const int d = grid.dim();
  for (int a = 0; a < d; ++a) nyq[a] = grid.nyquist(a);
  return {"R_" + std::to_string(axis + 1),
          [axis, nyq](std::span<const double> xi) -> cplx {
            double n2 = 0.0;
            for (std::size_t a = 0; a < xi.size(); ++a) {
              if (xi[a] == nyq[a]) return {0.0, 0.0};
              n2 += xi[a] * xi[a];
            }
            if (n2 == 0.0) return {0.0, 0.0};
            return cplx(0.0, 1.0) * (xi[axis] / std::sqrt(n2));
          }};
}

Multiplier product(const Multiplier& a, const Multiplier& b) {
  return {a.label + "*" + b.label,
          [sa = a.symbol, sb = b.symbol](std::span<const double> xi) { return sa(xi) * sb(xi); }};
}

}  // namespace dbu
