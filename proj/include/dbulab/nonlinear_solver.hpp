#pragma once

#include <functional>
#include <vector>

#include "dbulab/field.hpp"
#include "dbulab/linear_propagators.hpp"

namespace dbu {

enum class ModelKind {
  nls,               // i u_t + Lap u + sign |u|^p u = 0 (Lap_H with hyperbolic_j > 0)
  gp,                // flat-background condensate flow, integrated in the v variable
  davey_stewartson,  // n = 2, cubic plus nonlocal R1 R1 (|u|^2) term
  fourth_nls,        // i u_t + alpha Lap u + Lap^2 u + lambda |u|^p u = 0
  third_nls,         // u_t + i alpha u_xx + beta u_xxx + i gamma |u|^2 u = 0, n = 1
  linear_potential,  // i u_t + Lap u - V(x,t) u = 0
};

struct ModelSpec {
  ModelKind kind = ModelKind::nls;
  int dim = 1;
  double p = 2.0;
  int sign = 1;         // nls: +1 focusing, -1 defocusing; ds: principal sign
  int hyperbolic_j = 0; // nls only: replace Lap by the signature-(j, n-j) operator
  double alpha = 1.0;   // ds cubic coefficient / higher-order second-order coefficient
  double beta = 1.0;    // ds nonlocal coefficient / third-order dispersion
  double lambda = 1.0;  // fourth-order nonlinear coefficient
  double gamma = 1.0;   // third-order cubic coefficient
  std::function<double(std::span<const double> x, double t)> potential;

  // Linear part of the flow where it is one of the public linear models (the
  // hyperbolic Davey-Stewartson principal part is handled internally).
  LinearModel linear_part() const;
};

void validate_model_spec(const ModelSpec& model);

// Exact linear factor of the model's evolution (identical to evolve_linear on
// the linear_part for every model, including the hyperbolic DS symbol).
Field model_linear_evolve(const ModelSpec& model, const Field& u0, double t);

struct Trajectory {
  ModelSpec model;
  std::vector<double> times;   // times[0] = 0
  std::vector<Field> fields;   // fields[0] = u0 (v0 for gp)
  double projected_mean_accum = 0.0;  // gp zero-mode bookkeeping
};

// Strang splitting with exact frequency-diagonal linear steps. Snapshots are
// interpolation-free: every requested time must be an integer multiple of dt.
// The gp flow integrates the v variable with linear step e^{-i dt A} and a
// midpoint-rule nonlinear substep.
Trajectory evolve(const ModelSpec& model, const Field& u0, double T, double dt,
                  const std::vector<double>& snapshot_times);

// Nonlocal Davey-Stewartson term R1 R1 (|u|^2) (zero mode set to 0).
Field ds_auxiliary(const Field& u);
// The potential phi with Lap phi = d/dx1 |u|^2 (zero mode 0), for residual checks.
Field ds_potential(const Field& u);

// Duhamel integral term I(.,t) = -+ i (u(.,t) - e^{i t L} u0), sign matching the
// model's nonlinearity, so that u = free +- i I; I(.,0) = 0.
std::vector<TimedField> duhamel_extract(const Trajectory& traj);

// gp: map a v-trajectory to psi = 1 + Y v per snapshot.
std::vector<TimedField> gp_change_of_variables(const Trajectory& traj_v);

// Ginzburg-Landau energy E(psi) = 1/2 int |grad psi|^2 + 1/4 int (1-|psi|^2)^2,
// evaluated from u = psi - 1.
double ginzburg_landau_energy(const Field& u);

// Y^{-1} F(u) two ways: through F(u) = u^2 + 2|u|^2 + |u|^2 u directly, and via
// the expansion B^{-1}(3 u1^2 + u2^2 + |u|^2 u1) + i u2 (2 u1 + |u|^2). Both
// share the zero-mode projection.
Field gp_nonlinearity_direct(const Field& u);
Field gp_nonlinearity_expanded(const Field& u);

}  // namespace dbu
