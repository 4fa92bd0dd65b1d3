#pragma once

#include <span>
#include <vector>

#include "dbulab/field.hpp"

namespace dbu {

enum class LinearKind {
  free_schrodinger,  // omega = |xi|^2
  nonelliptic,       // omega = sum_{i<=j} xi_i^2 - sum_{i>j} xi_i^2
  fractional,        // omega = |xi|^a, a in (0,1)
  fourth_order,      // omega = -(|xi|^4 + alpha |xi|^2)
  third_order,       // omega = -(alpha xi^2 + beta xi^3), n = 1
  gp_group,          // omega = sqrt(|xi|^2(|xi|^2+2))
};

struct LinearModel {
  LinearKind kind = LinearKind::free_schrodinger;
  int dim = 1;
  int j = 1;          // nonelliptic signature split
  double a = 0.5;     // fractional exponent
  double alpha = 0.0; // fourth/third-order second-order coefficient
  double beta = 1.0;  // third-order dispersion coefficient

  static LinearModel free_model(int dim) { return {LinearKind::free_schrodinger, dim}; }
};

void validate_linear_model(const LinearModel& model);

// Dispersion relation omega(xi); the evolution is u^(t) = e^{-i t omega} u0^.
double dispersion(const LinearModel& model, std::span<const double> xi);

// e^{-i t omega(xi)} on the grid's frequency lattice, FFT-index order.
std::vector<cplx> propagator_table(const LinearModel& model, const Grid& grid, double t);

Field evolve_linear(const LinearModel& model, const Field& u0, double t);

struct TimedField {
  double t = 0.0;
  Field field;
};

// Exact map between free and Stark (linear-potential) solutions:
// if u solves the free equation, v(x,t) = u(x + t^2 E, t) e^{-i t E.x - i t^3 |E|^2/3}
// solves i v_t + Lap v - (E.x) v = 0 with the same data. to_stark applies this
// map; !to_stark its inverse. Spatial shifts are spectral (shift theorem).
std::vector<TimedField> stark_transform(const std::vector<TimedField>& traj,
                                        std::span<const double> E, bool to_stark);

enum class HarmonicSign { attractive, repulsive };
enum class HarmonicMethod { mehler, lens };

// Evolution under i u_t + Lap u -+ omega^2 |x|^2 u = 0 (attractive -, repulsive +).
// mehler: direct quadrature against the oscillator kernel (frequency 2*omega);
// valid for |t| < pi/(2 omega) in the attractive case. lens: scaling/phase
// composition with the free propagator,
//   v(y,t) = cos(2wt)^{-n/2} u_free(y/cos(2wt), tan(2wt)/(2w)) e^{-i (w/2) tan(2wt) |y|^2}
// (cosh/tanh in the repulsive case, with the phase sign flipped).
Field harmonic_evolve(const Field& u0, double t, double omega, HarmonicSign sign,
                      HarmonicMethod method);

// Trigonometric-interpolant evaluation of a field at an arbitrary point
// (direct sum over the frequency lattice).
cplx evaluate_at(const Field& f, std::span<const double> x);

}  // namespace dbu
