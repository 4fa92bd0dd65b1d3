#include "dbulab/gp_operators.hpp"

#include <cmath>

#include "dbulab/errors.hpp"
#include "dbulab/spectral.hpp"

namespace dbu {

double gp_symbol_A(double xi2) { return std::sqrt(xi2 * (xi2 + 2.0)); }

double gp_symbol_B(double xi2) { return std::sqrt(xi2 / (xi2 + 2.0)); }

double gp_symbol_r(double xi2) {
  if (xi2 == 0.0) return -1.0;
  const double d = gp_symbol_A(xi2) + xi2;
  return -2.0 * xi2 / (d * d);
}

double gp_symbol_a(double xi2) { return 1.0 + gp_symbol_r(xi2); }

cplx gp_symbol_kappa(double xi2, double t) {
  const double r = gp_symbol_r(xi2);
  return 2.0 * cplx(0.0, 1.0) * std::sin(0.5 * t * r) *
         std::exp(cplx(0.0, 0.5 * t * r));
}

namespace {
double xi2_of(std::span<const double> xi) {
  double n2 = 0.0;
  for (double x : xi) n2 += x * x;
  return n2;
}
}  // namespace

GpOperators gp_operators() {
  GpOperators ops;
  ops.A = {"A", [](std::span<const double> xi) -> cplx { return gp_symbol_A(xi2_of(xi)); }};
  ops.B = {"B", [](std::span<const double> xi) -> cplx { return gp_symbol_B(xi2_of(xi)); }};
  ops.B_inv = {"B^-1", [](std::span<const double> xi) -> cplx {
                 const double n2 = xi2_of(xi);
                 if (n2 == 0.0) return 0.0;  // zero-mode policy: mean projected upstream
                 return 1.0 / gp_symbol_B(n2);
               }};
  ops.b1 = {"b1", [](std::span<const double> xi) -> cplx {
              return gp_symbol_B(xi2_of(xi)) - 1.0;
            }};
  ops.b2 = {"b2", [](std::span<const double> xi) -> cplx {
              const double n2 = xi2_of(xi);
              if (n2 == 0.0) return 0.0;  // zero-mode policy
              return 1.0 / gp_symbol_B(n2) - 1.0;
            }};
  ops.r = {"r", [](std::span<const double> xi) -> cplx { return gp_symbol_r(xi2_of(xi)); }};
  ops.a = {"a", [](std::span<const double> xi) -> cplx { return gp_symbol_a(xi2_of(xi)); }};
  return ops;
}

Multiplier GpOperators::kappa(double t) const {
  return {"kappa", [t](std::span<const double> xi) -> cplx {
            return gp_symbol_kappa(xi2_of(xi), t);
          }};
}

UpsilonResult upsilon(const Field& f, bool forward) {
  if (f.rep != Rep::space) throw contract_error("upsilon: space representation expected");
  const std::size_t n = f.size();
  Field re_part(f.grid, Rep::space);
  for (std::size_t i = 0; i < n; ++i) re_part.values[i] = f.values[i].real();

  UpsilonResult out{Field(f.grid, Rep::space), 0.0};
  if (!forward) {
    std::vector<double> terms(n);
    for (std::size_t i = 0; i < n; ++i) terms[i] = re_part.values[i].real();
    const double mean = pairwise_sum(terms) / static_cast<double>(n);
    out.projected_mean = mean;
    for (std::size_t i = 0; i < n; ++i) re_part.values[i] -= mean;
  }

  const GpOperators ops = gp_operators();
  Field mapped = apply_multiplier(re_part, forward ? ops.B : ops.B_inv);
  for (std::size_t i = 0; i < n; ++i) {
    // B and B^{-1} have real even symbols, so the mapped real part stays real.
    out.field.values[i] = cplx(mapped.values[i].real(), f.values[i].imag());
  }
  return out;
}

}  // namespace dbu
