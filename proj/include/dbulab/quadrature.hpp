#pragma once

#include <complex>
#include <functional>

namespace dbu::quad {

struct Result {
  std::size_t evals = 0;
  std::complex<double> value{0.0, 0.0};
  double est_error = 0.0;
  double abs_integral = 0.0;  // integral of |f|, for cancellation floors
  double max_abs = 0.0;
  bool converged = true;
};

// Adaptive Simpson with Richardson correction, absolute tolerance.
Result adaptive(const std::function<std::complex<double>(double)>& f, double a, double b,
                double abs_tol, int max_depth = 30);

// Same, but with the interval pre-split at the given interior breakpoints
// (useful for oscillatory integrands with known phase scales).
Result adaptive_panels(const std::function<std::complex<double>(double)>& f,
                       const std::vector<double>& breakpoints, double abs_tol,
                       int max_depth = 30);

}  // namespace dbu::quad
