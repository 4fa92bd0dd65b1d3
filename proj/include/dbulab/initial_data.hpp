#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dbulab/field.hpp"

namespace dbu {

enum class DataFamily {
  elliptic_chirp,
  hyperbolic_chirp,
  amplitude_chirp,
  pearcey_profile,
  airy_profile,
  gp_profile,
  superposition,
  perturbed,
};

enum class WindowKind { none, raised_cosine };

struct Window {
  WindowKind kind = WindowKind::raised_cosine;
  double fraction = 0.1;  // tapered share of each half-axis
};

struct Perturbation {
  double amplitude = 0.0;
  std::vector<double> center;
  double width = 1.0;
};

// One focusing datum. alpha is the chirp rate of the quadratic phase (chirp
// families). kernel_alpha/beta parametrize the fourth- and third-order kernel
// profiles; beta defaults to 3^{-2/3} so the airy profile focuses at t = 1.
struct DataSpec {
  DataFamily family = DataFamily::elliptic_chirp;
  double alpha = 1.0;
  std::vector<double> q;
  double m = 0.5;
  double delta = 1.0;
  Window window;
  int j = 0;  // hyperbolic signature split; 0 means j = n (elliptic degeneracy)
  double kernel_alpha = 0.0;
  double beta = 0.4807498567691361;  // 3^{-2/3}
  std::optional<Perturbation> perturb;
  std::vector<DataSpec> components;  // superposition only
};

struct Focus {
  std::vector<double> x_star;
  double t_star = 0.0;
};

struct BuiltData {
  Field field;
  std::vector<Focus> foci;
};

// Family-specific parameter validation (m-ranges, chirp rate, dimensions).
void validate_data_spec(const DataSpec& spec, int dim);

// Pointwise profile value delta * profile(y) * window(y).
cplx data_point(const DataSpec& spec, const Grid& grid, std::span<const double> y);
double window_value(const Window& w, const Grid& grid, std::span<const double> y);

// Sample the datum on the grid and attach the predicted space-time foci.
BuiltData build(const DataSpec& spec, const Grid& grid, bool enforce_nyquist = true);
BuiltData superpose(const std::vector<DataSpec>& specs, const Grid& grid,
                    bool enforce_nyquist = true);

struct GpInitial {
  Field psi0;
  Field v0;
  std::vector<Focus> foci;
};
// psi0 = 1 + B Re v0 + i Im v0 from the chirp datum v0.
GpInitial gp_initial(const DataSpec& spec, const Grid& grid);

// Chirp resolution rule: smallest per-axis power of two with
// xi_max >= 2 alpha L_edge + 16, where L_edge is the midpoint of the window
// taper (the chirp's instantaneous frequency at the edge of live data).
double required_xi_max(const DataSpec& spec, double extent);
std::vector<int> auto_points(const DataSpec& spec, const std::vector<double>& extents);

}  // namespace dbu
