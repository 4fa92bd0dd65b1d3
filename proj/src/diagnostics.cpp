#include "dbulab/diagnostics.hpp"

#include <cmath>

#include "dbulab/errors.hpp"
#include "dbulab/spectral.hpp"
#include "dbulab/special_functions.hpp"

namespace dbu {

namespace {

// Modulus of the focusing kernel profile against which the datum integrates at
// the focus; the truncated-integral law is sum kappa(y) |u0(y)| dy.
double kernel_profile_modulus(const DataSpec& spec, int dim, std::span<const double> y) {
  switch (spec.family) {
    case DataFamily::elliptic_chirp:
    case DataFamily::hyperbolic_chirp:
    case DataFamily::amplitude_chirp:
    case DataFamily::gp_profile:
    case DataFamily::perturbed:
      return std::pow(spec.alpha / M_PI, dim / 2.0);
    case DataFamily::pearcey_profile:
      return 0.5 * std::abs(pearcey(spec.kernel_alpha * 0.5, -y[0]).value);
    case DataFamily::airy_profile: {
      const double c = 3.0 * std::pow(spec.beta, 4.0 / 3.0);
      return std::abs(airy(-y[0] / c)) / c;
    }
    case DataFamily::superposition:
      throw validation_error("peak_growth: pass a single component, not a superposition");
  }
  return 0.0;
}

struct LinFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinFit f;
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = f.slope * x[i] + f.intercept;
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace

PeakReport peak_growth(const PeakModel& model, const DataSpec& spec,
                       const PeakGrowthOptions& opts) {
  if (opts.L_levels.size() < 2) throw validation_error("peak_growth: need >= 2 levels");
  for (std::size_t i = 1; i < opts.L_levels.size(); ++i) {
    if (opts.L_levels[i] <= opts.L_levels[i - 1]) {
      throw validation_error("peak_growth: L levels must increase");
    }
  }
  const int dim = model.linear.dim;

  PeakReport rep;
  for (std::size_t lev = 0; lev < opts.L_levels.size(); ++lev) {
    const double L = opts.L_levels[lev];
    std::vector<double> extents(dim, L);
    std::vector<int> pts = opts.N_override.empty()
                               ? auto_points(spec, extents)
                               : std::vector<int>(dim, opts.N_override[lev]);
    Grid grid(extents, pts);
    BuiltData data = build(spec, grid);
    if (data.foci.empty()) throw validation_error("peak_growth: datum has no predicted focus");
    const Focus& focus = data.foci[0];
    if (rep.levels.empty()) {
      rep.predicted_x = focus.x_star;
      rep.predicted_t = focus.t_star;
    }

    Field ut(grid, Rep::space);
    if (model.nonlinear) {
      ModelSpec nl = *model.nonlinear;
      nl.dim = dim;
      const double dt = focus.t_star / static_cast<double>(model.steps_to_focus);
      Trajectory traj = evolve(nl, data.field, focus.t_star, dt, {focus.t_star});
      ut = traj.fields.back();
    } else {
      ut = evolve_linear(model.linear, data.field, focus.t_star);
    }

    PeakLevel level;
    level.L = L;
    level.N = pts[0];
    const double rho = opts.focus_radius_cells * grid.spacing(0);

    // peak inside the focus ball, maximum outside it
    std::array<int, kMaxDim> idx{};
    std::array<double, kMaxDim> x{};
    for (int a = 0; a < dim; ++a) x[a] = grid.coord(a, 0);
    level.peak_location.assign(dim, 0.0);
    for (std::size_t flat = 0; flat < ut.size(); ++flat) {
      double dist2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double d = x[a] - focus.x_star[a];
        dist2 += d * d;
      }
      const double v = std::abs(ut.values[flat]);
      if (dist2 <= rho * rho) {
        if (v > level.peak) {
          level.peak = v;
          for (int a = 0; a < dim; ++a) level.peak_location[a] = x[a];
        }
      } else {
        level.off_focus_max = std::max(level.off_focus_max, v);
      }
      for (int a = dim - 1; a >= 0; --a) {
        if (++idx[a] < grid.points(a)) {
          x[a] = grid.coord(a, idx[a]);
          break;
        }
        idx[a] = 0;
        x[a] = grid.coord(a, 0);
      }
    }

    // off-focus probes along axis 0
    for (double off : opts.probe_offsets) {
      std::array<double, kMaxDim> probe{};
      for (int a = 0; a < dim; ++a) probe[a] = focus.x_star[a];
      probe[0] += off;
      // nearest lattice point
      std::size_t flat = 0;
      for (int a = 0; a < dim; ++a) {
        int k = static_cast<int>(std::lround((probe[a] + L) / grid.spacing(a)));
        k = std::clamp(k, 0, grid.points(a) - 1);
        flat += static_cast<std::size_t>(k) * grid.stride(a);
      }
      level.probe_values.push_back(std::abs(ut.values[flat]));
    }

    // truncated-integral law on this level's lattice
    {
      std::vector<double> terms(data.field.size());
      std::array<int, kMaxDim> id2{};
      std::array<double, kMaxDim> y{};
      for (int a = 0; a < dim; ++a) y[a] = grid.coord(a, 0);
      for (std::size_t flat = 0; flat < data.field.size(); ++flat) {
        terms[flat] = kernel_profile_modulus(spec, dim, std::span<const double>(y.data(), dim)) *
                      std::abs(data.field.values[flat]);
        for (int a = dim - 1; a >= 0; --a) {
          if (++id2[a] < grid.points(a)) {
            y[a] = grid.coord(a, id2[a]);
            break;
          }
          id2[a] = 0;
          y[a] = grid.coord(a, 0);
        }
      }
      level.law_value = pairwise_sum(terms) * grid.cell_volume();
    }
    rep.levels.push_back(std::move(level));
  }

  // scale fit peak ~ c * law
  {
    double num = 0.0, den = 0.0;
    for (const auto& lv : rep.levels) {
      num += lv.peak * lv.law_value;
      den += lv.law_value * lv.law_value;
    }
    rep.fitted_scale = den > 0 ? num / den : 0.0;
    for (const auto& lv : rep.levels) {
      rep.fit_residual = std::max(
          rep.fit_residual, std::abs(lv.peak - rep.fitted_scale * lv.law_value) /
                                std::max(lv.peak, 1e-300));
    }
  }

  // probe stability across levels
  if (!rep.levels.empty() && !rep.levels[0].probe_values.empty()) {
    for (std::size_t p = 0; p < rep.levels[0].probe_values.size(); ++p) {
      double lo = 1e300, hi = -1e300;
      for (const auto& lv : rep.levels) {
        lo = std::min(lo, lv.probe_values[p]);
        hi = std::max(hi, lv.probe_values[p]);
      }
      rep.off_focus_variation = std::max(rep.off_focus_variation, hi - lo);
    }
  }

  // growth classification: peak against log(L_eff) vs log-log
  {
    bool monotone = true;
    for (std::size_t i = 1; i < rep.levels.size(); ++i) {
      if (rep.levels[i].peak <= rep.levels[i - 1].peak) monotone = false;
    }
    std::vector<double> lx, py, ly;
    for (const auto& lv : rep.levels) {
      const double frac =
          spec.window.kind == WindowKind::none ? 0.0 : spec.window.fraction;
      lx.push_back(std::log((1.0 - frac) * lv.L));
      py.push_back(lv.peak);
      ly.push_back(std::log(lv.peak));
    }
    if (!monotone) {
      rep.growth_class = "inconclusive";
    } else {
      const LinFit log_model = linear_fit(lx, py);   // peak ~ a + b log L
      const LinFit pow_model = linear_fit(lx, ly);   // log peak ~ a + b log L
      if (log_model.r2 >= pow_model.r2) {
        rep.growth_class = "log";
        rep.growth_r2 = log_model.r2;
      } else {
        rep.growth_class = "power";
        rep.growth_r2 = pow_model.r2;
      }
      rep.power_exponent = pow_model.slope;
    }
  }
  return rep;
}

SmoothingReport smoothing_report(std::span<const Trajectory> levels, double s, double gain) {
  if (levels.empty()) throw validation_error("smoothing_report: no levels");
  SmoothingReport rep;
  rep.s = s;
  rep.gain = gain;
  const double sigma = s + gain;
  for (const auto& traj : levels) {
    auto I = duhamel_extract(traj);
    double sup = 0.0;
    for (const auto& tf : I) sup = std::max(sup, sobolev_norm(tf.field, sigma));
    rep.I_series.push_back(sup);
    rep.free_series.push_back(sobolev_norm(traj.fields[0], sigma));
  }
  double lo = 1e300, hi = 0.0;
  for (double v : rep.I_series) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  rep.I_ratio = lo > 0 ? hi / lo : 0.0;
  rep.free_growth = rep.free_series.front() > 0
                        ? rep.free_series.back() / rep.free_series.front()
                        : 0.0;
  rep.verdict_I = rep.I_ratio <= 2.0 ? "bounded" : "divergent";
  rep.verdict_free = rep.free_growth >= 4.0 ? "divergent" : "bounded";
  return rep;
}

bool admissible(double p_or_r, double q, GroupOrder order, int n) {
  if (!(p_or_r > 0.0) || !(q > 0.0)) throw validation_error("admissible: positive entries");
  const bool p_inf = std::isinf(p_or_r);
  if (order == GroupOrder::second) {
    if (n >= 3) {
      if (p_inf || p_or_r < 2.0 || p_or_r >= 2.0 * n / (n - 2.0)) return false;
    } else if (n == 2) {
      if (p_inf || p_or_r < 2.0) return false;
    } else {
      if (!p_inf && p_or_r < 2.0) return false;
    }
    const double lhs = 2.0 / q;
    const double rhs = n / 2.0 - (p_inf ? 0.0 : n / p_or_r);
    return std::abs(lhs - rhs) < 1e-12;
  }
  // fourth order: 1/q = (n/4)(1/2 - 1/r)
  if (n >= 3) {
    if (p_inf || p_or_r < 2.0 || p_or_r > 2.0 * n / (n - 2.0)) return false;
  } else if (n == 2) {
    if (p_inf || p_or_r < 2.0) return false;
  } else {
    if (!p_inf && p_or_r < 2.0) return false;
  }
  const double lhs = 1.0 / q;
  const double rhs = (n / 4.0) * (0.5 - (p_inf ? 0.0 : 1.0 / p_or_r));
  return std::abs(lhs - rhs) < 1e-12;
}

StrichartzResult strichartz_functional(std::span<const TimedField> traj, double p, double q,
                                       double T, GroupOrder order) {
  if (traj.empty()) throw validation_error("strichartz_functional: empty trajectory");
  const int n = traj[0].field.grid.dim();
  if (!admissible(p, q, order, n)) {
    throw validation_error("strichartz_functional: inadmissible exponent pair");
  }
  // trapezoid in t over snapshots <= T
  std::vector<double> ts, vals;
  for (const auto& tf : traj) {
    if (tf.t <= T + 1e-12) {
      ts.push_back(tf.t);
      vals.push_back(std::pow(space_lp_norm(in_rep(tf.field, Rep::space), p), q));
    }
  }
  if (ts.size() < 2) throw validation_error("strichartz_functional: need >= 2 snapshots in [0,T]");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    acc += 0.5 * (ts[i + 1] - ts[i]) * (vals[i] + vals[i + 1]);
  }
  StrichartzResult out;
  out.mixed_norm = std::pow(acc, 1.0 / q);
  const double l2 = l2_norm(traj[0].field);
  out.ratio_to_l2 = l2 > 0 ? out.mixed_norm / l2 : 0.0;
  return out;
}

MaximalResult maximal_and_local_smoothing(const Field& f, double T, double q, double sigma,
                                          int t_samples, int axis) {
  const int n = f.grid.dim();
  if (t_samples < 64) throw validation_error("maximal: >= 64 time samples required");
  // Regime check for the maximal estimate
  bool regime_ok;
  if (n == 1) {
    regime_ok = (q > 2.0 && sigma >= std::max(1.0 / q, 0.5 - 1.0 / q)) ||
                (q == 2.0 && sigma > 0.5);
  } else {
    const double qc = 2.0 + 4.0 / (n + 1.0);
    regime_ok = (q > qc && sigma > n * (0.5 - 1.0 / q)) ||
                (q >= 2.0 && q <= qc && sigma > 3.0 / q - 0.5);
  }
  if (!regime_ok) {
    throw validation_error(
        "maximal_and_local_smoothing: (q, sigma) outside the maximal-estimate regime");
  }

  const LinearModel lin = LinearModel::free_model(n);
  const Field f0 = in_rep(f, Rep::space);
  std::vector<double> smax(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) smax[i] = std::abs(f0.values[i]);

  // local smoothing accumulator: time-trapezoid of |D^{1/2}_{xj} u(t)|^2
  Field d0 = frac_derivative(f0, 0.5, axis, DerivKind::homogeneous);
  std::vector<double> ls_accum(f.size(), 0.0);
  std::vector<double> prev(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) prev[i] = std::norm(d0.values[i]);

  const double dt = T > 0 ? T / t_samples : 0.0;
  for (int k = 1; k <= t_samples && T > 0; ++k) {
    Field ut = evolve_linear(lin, f0, k * dt);
    for (std::size_t i = 0; i < f.size(); ++i) {
      smax[i] = std::max(smax[i], std::abs(ut.values[i]));
    }
    Field dut = frac_derivative(ut, 0.5, axis, DerivKind::homogeneous);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double cur = std::norm(dut.values[i]);
      ls_accum[i] += 0.5 * dt * (prev[i] + cur);
      prev[i] = cur;
    }
  }

  MaximalResult out;
  {
    Field smax_field(f.grid, Rep::space);
    for (std::size_t i = 0; i < f.size(); ++i) smax_field.values[i] = smax[i];
    out.maximal_norm = std::isinf(q) ? sup_norm(smax_field) : space_lp_norm(smax_field, q);
  }
  {
    // sup over x_axis of the transverse integral of the time-accumulated mass
    const Grid& g = f.grid;
    std::vector<double> per_slice(g.points(axis), 0.0);
    std::array<int, kMaxDim> idx{};
    double transverse_cell = 1.0;
    for (int a = 0; a < n; ++a) {
      if (a != axis) transverse_cell *= g.spacing(a);
    }
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
      per_slice[idx[axis]] += ls_accum[flat] * transverse_cell;
      for (int a = n - 1; a >= 0; --a) {
        if (++idx[a] < g.points(a)) break;
        idx[a] = 0;
      }
    }
    double mx = 0.0;
    for (double v : per_slice) mx = std::max(mx, v);
    out.local_smoothing_value = mx;
  }
  const double hs = sobolev_norm(f0, sigma);
  out.ratio_to_hsigma = hs > 0 ? out.maximal_norm / hs : 0.0;
  return out;
}

}  // namespace dbu
