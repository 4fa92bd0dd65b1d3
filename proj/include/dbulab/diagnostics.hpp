#pragma once

#include <optional>
#include <string>

#include "dbulab/initial_data.hpp"
#include "dbulab/nonlinear_solver.hpp"

namespace dbu {

struct PeakLevel {
  double L = 0.0;
  int N = 0;
  double peak = 0.0;                  // max |u| within the focus window at t*
  std::vector<double> peak_location;  // lattice argmax near the focus
  double off_focus_max = 0.0;         // max |u| outside the focus ball
  double law_value = 0.0;             // truncated-integral prediction
  std::vector<double> probe_values;   // |u| at fixed off-focus probes
};

struct PeakReport {
  std::vector<double> predicted_x;
  double predicted_t = 0.0;
  std::vector<PeakLevel> levels;
  double fitted_scale = 1.0;        // c in peak ~ c * law
  double fit_residual = 0.0;        // max relative deviation from the fitted law
  double off_focus_variation = 0.0; // max over probes of (max - min) across levels
  std::string growth_class;         // "log" | "power" | "inconclusive"
  double growth_r2 = 0.0;
  double power_exponent = 0.0;      // slope of the log-log fit
};

// Model under test: the exact linear flow, or a split-step nonlinear run with
// the given number of steps to the focus time.
struct PeakModel {
  LinearModel linear;
  std::optional<ModelSpec> nonlinear;
  long steps_to_focus = 256;
};

struct PeakGrowthOptions {
  std::vector<double> L_levels;
  std::vector<int> N_override;               // empty: chirp resolution rule
  double focus_radius_cells = 4.0;           // rho = 4 dx
  std::vector<double> probe_offsets = {1.0, 2.0, 5.0};
};

// For each half-length L: build the datum, evolve to the predicted focus time,
// record the focus peak, off-focus behavior, and the truncated-integral law
//   peak(L) ~ sum_lattice kappa(y) |u0(y)| dy,
// kappa the modulus of the relevant kernel profile at the focus. Fits both a
// log and a power growth model and reports the better-explained class.
PeakReport peak_growth(const PeakModel& model, const DataSpec& spec,
                       const PeakGrowthOptions& opts);

struct SmoothingReport {
  double s = 0.0;
  double gain = 0.5;
  std::vector<double> I_series;     // sup_{t<=T} ||I(t)||_{H^{s+gain}} per level
  std::vector<double> free_series;  // ||e^{itL} u0||_{H^{s+gain}} per level (conserved in t)
  double I_ratio = 0.0;             // max/min of the I series
  double free_growth = 0.0;         // finest/coarsest of the free series
  std::string verdict_I;            // "bounded" (ratio <= 2) or "divergent"
  std::string verdict_free;         // "divergent" (growth >= 4) or "bounded"
};

// Refinement-level smoothing comparison for Duhamel terms of the given
// trajectories (one per refinement level, coarsest first).
SmoothingReport smoothing_report(std::span<const Trajectory> levels, double s, double gain);

enum class GroupOrder { second, fourth };

// Admissibility of an exponent pair: second order checks 2/q = n/2 - n/p with
// the dimension-dependent p-range; fourth order checks 1/q = (n/4)(1/2 - 1/r).
bool admissible(double p_or_r, double q, GroupOrder order, int n);

// Mixed norm ( int_0^T ||u(t)||_{L^p}^q dt )^{1/q} by snapshot trapezoid
// quadrature, plus its ratio to ||u0||_{L^2}.
struct StrichartzResult {
  double mixed_norm = 0.0;
  double ratio_to_l2 = 0.0;
};
StrichartzResult strichartz_functional(std::span<const TimedField> traj, double p, double q,
                                       double T, GroupOrder order = GroupOrder::second);

struct MaximalResult {
  double maximal_norm = 0.0;          // || sup_{t<=T} |e^{itL}f| ||_{L^q}
  double local_smoothing_value = 0.0; // sup_{x_j} of the transverse L^2 mass of D^{1/2}_{x_j} e^{itL} f
  double ratio_to_hsigma = 0.0;
};
MaximalResult maximal_and_local_smoothing(const Field& f, double T, double q, double sigma,
                                          int t_samples = 256, int axis = 0);

}  // namespace dbu
