#pragma once

#include <complex>
#include <vector>

#include "dbulab/grid.hpp"

namespace dbu {

using cplx = std::complex<double>;

enum class Rep { space, frequency };

// Complex samples on a Grid, tagged with the active representation.
// Forward transform follows the convention  f^(xi) = int f(x) e^{-i xi.x} dx,
// inverse  f(x) = (2pi)^{-n} int f^(xi) e^{i xi.x} dxi, discretized so that the
// roundtrip is the identity to machine precision.
struct Field {
  Grid grid;
  std::vector<cplx> values;
  Rep rep = Rep::space;

  Field(Grid g, Rep r = Rep::space)
      : grid(std::move(g)), values(grid.size(), cplx(0.0, 0.0)), rep(r) {}
  Field(Grid g, std::vector<cplx> v, Rep r);

  std::size_t size() const { return values.size(); }
};

Field transform(const Field& f, Rep target);
// Convenience: return the field in the requested representation (no-op if
// already there).
Field in_rep(const Field& f, Rep target);

// Pointwise lattice norms. space_lp uses the trapezoidal (= midpoint, periodic)
// lattice sum; sup_norm is max |f|.
double space_lp_norm(const Field& f, double p);
double sup_norm(const Field& f);
double l2_norm(const Field& f);  // valid in either rep (Parseval)

// Deterministic pairwise summation used for all norm reductions.
double pairwise_sum(const std::vector<double>& v);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(cplx s, const Field& a);

}  // namespace dbu
