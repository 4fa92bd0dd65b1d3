#include "dbulab/oracle.hpp"

#include <cmath>

#include "dbulab/errors.hpp"
#include "dbulab/quadrature.hpp"
#include "dbulab/special_functions.hpp"

namespace dbu {

namespace {

constexpr cplx kI{0.0, 1.0};

double chirp_rate_at(const DataSpec& spec, double y) {
  // local phase rate of the datum (1D chirp families)
  switch (spec.family) {
    case DataFamily::elliptic_chirp:
    case DataFamily::hyperbolic_chirp:
    case DataFamily::amplitude_chirp:
    case DataFamily::gp_profile:
    case DataFamily::perturbed: {
      const double q = spec.q.empty() ? 0.0 : spec.q[0];
      return 2.0 * spec.alpha * std::abs(y - q);
    }
    case DataFamily::pearcey_profile:
      return std::cbrt(std::abs(y));
    case DataFamily::airy_profile: {
      const double c = 3.0 * std::pow(spec.beta, 4.0 / 3.0);
      return std::sqrt(std::abs(y) / c) / c;
    }
    case DataFamily::superposition: {
      double r = 0.0;
      for (const auto& comp : spec.components) r = std::max(r, chirp_rate_at(comp, y));
      return r;
    }
  }
  return 0.0;
}

std::vector<double> phase_aware_breakpoints(const DataSpec& spec, const Grid& grid, double x,
                                            double t) {
  const double L = grid.extent(0);
  std::vector<double> brk;
  double y = -L;
  brk.push_back(y);
  while (y < L) {
    const double kernel_rate = t != 0.0 ? std::abs(y - x) / (2.0 * std::abs(t)) : 0.0;
    const double rate = kernel_rate + chirp_rate_at(spec, y) + 1.0;
    y += std::min(2.0 * M_PI / rate, L / 8.0);
    brk.push_back(std::min(y, L));
  }
  if (brk.back() < L) brk.push_back(L);
  return brk;
}

}  // namespace

OracleResult kernel_point_eval(const LinearModel& model, const DataSpec& spec, const Grid& grid,
                               double x, double t) {
  if (grid.dim() != 1) throw cost_guard_error("kernel_point_eval: 1D only");
  if (model.kind != LinearKind::free_schrodinger) {
    throw contract_error("kernel_point_eval: free-group kernel only");
  }
  if (t == 0.0) throw domain_error("kernel_point_eval: t != 0 required");
  validate_data_spec(spec, 1);

  const bool chirp_focus =
      (spec.family == DataFamily::elliptic_chirp || spec.family == DataFamily::gp_profile ||
       spec.family == DataFamily::amplitude_chirp) &&
      std::abs(t - 1.0 / (4.0 * spec.alpha)) < 1e-13;

  OracleResult out;
  if (chirp_focus) {
    // reduced focus-time form: kernel and data chirps cancel exactly
    const double alpha = spec.alpha;
    const double q = spec.q.empty() ? 0.0 : spec.q[0];
    auto amplitude = [&](double y) {
      DataSpec flat = spec;
      flat.alpha = alpha;
      // datum with the chirp factor removed: |profile| carries the amplitude,
      // the modulation of the amplitude_chirp family is real and positive
      double r2 = y * y;
      double a = std::pow(1.0 + r2, -spec.m);
      if (spec.family == DataFamily::amplitude_chirp) a *= 1.0 + 0.3 * std::cos(y);
      if (spec.family == DataFamily::perturbed) {
        // perturbation carries its own (non-cancelling) phase; not supported here
      }
      return spec.delta * a * window_value(spec.window, grid, std::span<const double>(&y, 1));
    };
    auto integrand = [&](double y) -> cplx {
      return amplitude(y) * std::exp(-2.0 * kI * alpha * y * (x - q));
    };
    const double rate = 2.0 * alpha * std::abs(x - q) + 1.0;
    std::vector<double> brk;
    const double L = grid.extent(0);
    for (double y = -L; y < L; y += std::min(2.0 * M_PI / rate, L / 8.0)) brk.push_back(y);
    brk.push_back(L);
    auto q1 = quad::adaptive_panels(integrand, brk, 1e-10);
    const cplx prefactor = std::sqrt(alpha / (kI * M_PI)) *
                           std::exp(kI * alpha * (x * x - q * q));
    out.value = prefactor * q1.value;
    out.est_error = std::sqrt(alpha / M_PI) * (q1.est_error + 5e-16 * q1.abs_integral);
    out.method = "focus_reduced_quadrature";
    return out;
  }

  auto integrand = [&](double y) -> cplx {
    const double dxy = x - y;
    return data_point(spec, grid, std::span<const double>(&y, 1)) *
           std::exp(kI * dxy * dxy / (4.0 * t));
  };
  auto brk = phase_aware_breakpoints(spec, grid, x, t);
  auto q1 = quad::adaptive_panels(integrand, brk, 1e-10);
  if (!q1.converged) {
    throw convergence_error("kernel_point_eval: quadrature did not converge", q1.est_error);
  }
  const cplx prefactor = std::pow(4.0 * kI * M_PI * t, -0.5);
  out.value = prefactor * q1.value;
  out.est_error = std::abs(prefactor) * (q1.est_error + 5e-16 * q1.abs_integral);
  out.method = "kernel_quadrature";
  return out;
}

cplx fourth_order_kernel(double x, double t, double alpha) {
  const double scale = std::pow(4.0 * t, 0.25);
  const PearceyValue B = pearcey(alpha * std::sqrt(t), x / scale);
  return 0.5 / scale * B.value;
}

cplx third_order_kernel(double x, double t, double alpha, double beta) {
  const double c3 = std::cbrt(3.0 * t * beta);
  const double phase = 2.0 * t * alpha * alpha * alpha / (27.0 * beta * beta) -
                       alpha * x / (3.0 * beta);
  const double z = (x - t * alpha * alpha / (3.0 * beta)) / c3;
  return std::exp(kI * phase) * airy(z) / c3;
}

OracleResult fourth_order_kernel_quadrature(double x, double t, double alpha) {
  // (1/2pi) int e^{i(t xi^4 + t alpha xi^2 + x xi)} dxi on xi = e^{i pi/8} r.
  const double c2 = std::sin(M_PI / 4.0) / 2.0;
  const double c1 = std::sin(M_PI / 8.0);
  const double L0 = 30.0;
  double R = std::pow(4.0 * L0 / t, 0.25);
  for (int it = 0; it < 60; ++it) {
    R = std::pow((L0 + 2.0 * c2 * std::abs(alpha) * t * R * R + c1 * std::abs(x) * R) * 4.0 / t,
                 0.25);
  }
  const cplx rot = std::exp(kI * M_PI / 8.0);
  auto f = [&](double r) {
    const cplx z = rot * r;
    return std::exp(kI * (t * z * z * z * z + t * alpha * z * z + x * z));
  };
  auto q1 = quad::adaptive_panels(f, {-R, -R / 2, 0.0, R / 2, R}, 1e-10);
  OracleResult out;
  out.value = q1.value * rot / (2.0 * M_PI);
  out.est_error = (q1.est_error + 5e-16 * q1.abs_integral) / (2.0 * M_PI);
  out.method = "rotated_contour";
  return out;
}

OracleResult third_order_kernel_quadrature(double x, double t, double alpha, double beta) {
  // (1/2pi) int e^{i(t beta xi^3 + t alpha xi^2 + x xi)} dxi; two rays in the
  // decay sectors of the cubic (arg pi/6 and 5pi/6 for beta t > 0).
  if (!(beta * t > 0.0)) throw domain_error("third_order_kernel_quadrature: beta*t > 0 required");
  const double g3 = t * beta;
  double R = std::cbrt((40.0 + std::abs(x) + std::abs(alpha) * t) / g3) + 10.0;
  for (int it = 0; it < 40; ++it) {
    R = std::cbrt((40.0 + std::abs(x) * R + std::abs(alpha) * t * R * R) * 2.0 / g3);
  }
  OracleResult out;
  out.method = "two_ray_contour";
  cplx total = 0.0;
  double err = 0.0;
  for (double ang : {M_PI / 6.0, 5.0 * M_PI / 6.0}) {
    const cplx rot = std::exp(kI * ang);
    auto f = [&](double r) {
      const cplx z = rot * r;
      return std::exp(kI * (t * beta * z * z * z + t * alpha * z * z + x * z));
    };
    auto q1 = quad::adaptive_panels(f, {0.0, R / 4, R / 2, R}, 1e-10);
    total += (ang < M_PI / 2 ? 1.0 : -1.0) * rot * q1.value;
    err += q1.est_error + 5e-16 * q1.abs_integral;
  }
  out.value = total / (2.0 * M_PI);
  out.est_error = err / (2.0 * M_PI);
  return out;
}

FundamentalSolutionReport fundamental_solution_check(
    KernelOrder order, const std::vector<std::pair<double, double>>& samples, double alpha,
    double beta) {
  FundamentalSolutionReport rep;
  for (const auto& [x, t] : samples) {
    if (!(t > 0.0 && t <= 1.0)) throw domain_error("fundamental_solution_check: t in (0,1]");
    KernelSample s;
    s.x = x;
    s.t = t;
    if (order == KernelOrder::fourth) {
      s.formula = fourth_order_kernel(x, t, alpha);
      auto q = fourth_order_kernel_quadrature(x, t, alpha);
      s.quadrature = q.value;
      s.est_error = q.est_error;
    } else {
      s.formula = third_order_kernel(x, t, alpha, beta);
      auto q = third_order_kernel_quadrature(x, t, alpha, beta);
      s.quadrature = q.value;
      s.est_error = q.est_error;
    }
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(s.formula - s.quadrature));
    rep.samples.push_back(s);
  }

  // Decay envelope of the alpha = 0 kernel: |Sigma_0| <= C t^{-1/4}(1+|x|/t^{1/4})^{-1/3}
  // in 1D, constant fitted over the samples (fourth order only).
  if (order == KernelOrder::fourth) {
    const std::vector<double> ts = {0.04, 0.16, 0.64};
    std::vector<double> lt, lv;
    for (double t : ts) {
      auto q = fourth_order_kernel_quadrature(0.0, t, 0.0);
      lt.push_back(std::log(t));
      lv.push_back(std::log(std::abs(q.value)));
    }
    const double n = static_cast<double>(lt.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
      sx += lt[i];
      sy += lv[i];
      sxx += lt[i] * lt[i];
      sxy += lt[i] * lv[i];
    }
    rep.slope_origin = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    double c = 0.0;
    auto envelope = [](double x, double t) {
      return std::pow(t, -0.25) * std::pow(1.0 + std::abs(x) / std::pow(t, 0.25), -1.0 / 3.0);
    };
    for (const auto& s : rep.samples) {
      c = std::max(c, std::abs(s.quadrature) / envelope(s.x, s.t));
    }
    rep.envelope_c = c;
    rep.envelope_holds = true;
    for (double x : {0.5, 1.5, 2.5}) {
      for (double t : {0.09, 0.36}) {
        auto q = fourth_order_kernel_quadrature(x, t, 0.0);
        if (std::abs(q.value) > 1.05 * c * envelope(x, t)) rep.envelope_holds = false;
      }
    }
  }
  return rep;
}

OracleResult kernel_eval_gridded(const Field& data, double x, double t, int upsample) {
  if (data.grid.dim() != 1) throw cost_guard_error("kernel_eval_gridded: 1D only");
  const Grid& g = data.grid;
  if (t == 0.0) {
    // delta kernel: trigonometric interpolation at x
    OracleResult out;
    out.value = evaluate_at(data, std::span<const double>(&x, 1));
    out.est_error = 0.0;
    out.method = "identity";
    return out;
  }
  // spectrally upsample, then trapezoid against the oscillatory kernel
  Field fh = in_rep(data, Rep::frequency);
  const int n = g.points(0);
  auto eval_on = [&](int mul) -> cplx {
    const int nn = n * mul;
    Grid fine({g.extent(0)}, {nn});
    Field up(fine, Rep::frequency);
    for (int k = 0; k < n; ++k) {
      const int src_signed = (k <= n / 2) ? k : k - n;
      int dst = src_signed >= 0 ? src_signed : nn + src_signed;
      up.values[dst] = fh.values[k];
    }
    // split the source Nyquist coefficient across +-Nyquist of the fine grid
    const int nyq = n / 2;
    up.values[nyq] *= 0.5;
    up.values[nn - nyq] += up.values[nyq];
    Field us = in_rep(up, Rep::space);
    const double dy = fine.spacing(0);
    cplx acc = 0.0;
    for (int jj = 0; jj < nn; ++jj) {
      const double y = fine.coord(0, jj);
      const double d = x - y;
      acc += us.values[jj] * std::exp(kI * d * d / (4.0 * t));
    }
    return std::pow(4.0 * kI * M_PI * t, -0.5) * acc * dy;
  };
  const cplx coarse = eval_on(std::max(1, upsample / 2));
  const cplx fine = eval_on(upsample);
  OracleResult out;
  out.value = fine;
  out.est_error = std::abs(fine - coarse);
  out.method = "upsampled_kernel_trapezoid";
  return out;
}

OracleResult duhamel_quadrature(const Trajectory& traj, double x, double t) {
  if (traj.fields.empty() || traj.fields[0].grid.dim() != 1) {
    throw cost_guard_error("duhamel_quadrature: 1D trajectories only");
  }
  if (traj.times.size() > 65) throw cost_guard_error("duhamel_quadrature: <= 64 snapshots");
  if (traj.fields[0].grid.points(0) > 2048) {
    throw cost_guard_error("duhamel_quadrature: N <= 2048");
  }
  if (traj.model.kind != ModelKind::nls || traj.model.hyperbolic_j != 0) {
    throw contract_error("duhamel_quadrature: plain nls trajectories only");
  }
  const double sgn = traj.model.sign >= 0 ? 1.0 : -1.0;

  // nodes: snapshot times inside [0, t], transformed by s = t - tau^2
  std::vector<double> taus;
  std::vector<std::size_t> snap_idx;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.times[k] <= t + 1e-12) {
      taus.push_back(std::sqrt(std::max(0.0, t - traj.times[k])));
      snap_idx.push_back(k);
    }
  }
  if (taus.size() < 3) throw validation_error("duhamel_quadrature: need >= 3 snapshots in [0, t]");

  // g(tau) = 2 tau [e^{i tau^2 Lap} N(t - tau^2)](x), trapezoid over the
  // (nonuniform, decreasing) tau nodes
  std::vector<cplx> gv(taus.size());
  double inner_err = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double tau = taus[i];
    const Field& u = traj.fields[snap_idx[i]];
    Field N(u.grid, Rep::space);
    for (std::size_t jj = 0; jj < u.size(); ++jj) {
      N.values[jj] = sgn * std::pow(std::abs(u.values[jj]), traj.model.p) * u.values[jj];
    }
    if (tau == 0.0) {
      gv[i] = 0.0;
      continue;
    }
    auto r = kernel_eval_gridded(N, x, tau * tau);
    gv[i] = 2.0 * tau * r.value;
    inner_err += 2.0 * tau * r.est_error;
  }
  // integrate g over tau from 0 to sqrt(t): sort ascending
  std::vector<std::size_t> order(taus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return taus[a] < taus[b]; });
  cplx acc = 0.0;
  double coarse_abs = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const double h = taus[order[i + 1]] - taus[order[i]];
    acc += 0.5 * h * (gv[order[i]] + gv[order[i + 1]]);
    coarse_abs += 0.5 * h * (std::abs(gv[order[i]]) + std::abs(gv[order[i + 1]]));
  }
  // Richardson-style estimate: compare against the half-resolution trapezoid
  cplx acc2 = 0.0;
  for (std::size_t i = 0; i + 2 < order.size(); i += 2) {
    const double h = taus[order[i + 2]] - taus[order[i]];
    acc2 += 0.5 * h * (gv[order[i]] + gv[order[i + 2]]);
  }
  if ((order.size() - 1) % 2 == 1) {
    const std::size_t i = order.size() - 2;
    const double h = taus[order[i + 1]] - taus[order[i]];
    acc2 += 0.5 * h * (gv[order[i]] + gv[order[i + 1]]);
  }

  OracleResult out;
  // The composed map gives int_0^t e^{i(t-s)Lap} N ds = I (spec's Duhamel term
  // carries the +- outside: u = free + sgn Ii; N already includes sgn, so divide).
  out.value = acc * sgn;
  out.est_error = std::abs(acc - acc2) + inner_err + 5e-16 * coarse_abs;
  out.method = "sqrt_substituted_trapezoid";
  return out;
}

}  // namespace dbu
