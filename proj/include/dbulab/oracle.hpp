#pragma once

#include <string>

#include "dbulab/initial_data.hpp"
#include "dbulab/linear_propagators.hpp"
#include "dbulab/nonlinear_solver.hpp"

namespace dbu {

struct OracleResult {
  cplx value{0.0, 0.0};
  double est_error = 0.0;
  std::string method;
};

// Free-group representation evaluated by direct oscillatory quadrature of
//   (4 i pi t)^{-1/2} int e^{i(x-y)^2/(4t)} u0(y) dy
// against the analytic datum (1D). At the chirp focus time 1/(4 alpha) the
// stationary-phase-free reduced form
//   (alpha/(i pi))^{1/2} e^{i alpha (x^2 - q^2)} int e^{-2 i alpha y (x-q)} a(y) dy
// is used instead. Panels follow the local phase rate of kernel plus chirp.
OracleResult kernel_point_eval(const LinearModel& model, const DataSpec& spec, const Grid& grid,
                               double x, double t);

enum class KernelOrder { fourth, third };

struct KernelSample {
  double x = 0.0, t = 0.0;
  cplx formula{0.0, 0.0};
  cplx quadrature{0.0, 0.0};
  double est_error = 0.0;
};

struct FundamentalSolutionReport {
  std::vector<KernelSample> samples;
  double max_abs_diff = 0.0;
  double slope_origin = 0.0;   // log-log slope of |Sigma_0(0,t)| in t (expected -1/4)
  double envelope_c = 0.0;     // fitted constant of the decay envelope
  bool envelope_holds = true;  // bound holds at all samples with 1.05 x fitted c
};

// Fourth-order kernel Sigma_alpha(x,t) = (1/2)(4t)^{-1/4} B(alpha sqrt(t), x/(4t)^{1/4})
// and third-order kernel
//   Lambda(x,t) = (3 t beta)^{-1/3} e^{i(2 t alpha^3/(27 beta^2) - alpha x/(3 beta))}
//                 Ai((x - t alpha^2/(3 beta)) / (3 t beta)^{1/3}),
// each checked against direct rotated-contour quadrature of its frequency
// integral at the given samples.
cplx fourth_order_kernel(double x, double t, double alpha);
cplx third_order_kernel(double x, double t, double alpha, double beta);
OracleResult fourth_order_kernel_quadrature(double x, double t, double alpha);
OracleResult third_order_kernel_quadrature(double x, double t, double alpha, double beta);

FundamentalSolutionReport fundamental_solution_check(KernelOrder order,
                                                     const std::vector<std::pair<double, double>>& samples,
                                                     double alpha = 0.0, double beta = 1.0);

// Duhamel integral at one probe point by kernel quadrature over the snapshot
// times, with the (t-s)^{-1/2} endpoint removed by s = t - tau^2. 1D, coarse
// trajectories only (cost guard).
OracleResult duhamel_quadrature(const Trajectory& traj, double x, double t);

// Free evolution of a gridded snapshot at one point by direct kernel
// quadrature (spectrally upsampled trapezoid); used by duhamel_quadrature and
// exposed for cross-checks.
OracleResult kernel_eval_gridded(const Field& data, double x, double t, int upsample = 8);

}  // namespace dbu
