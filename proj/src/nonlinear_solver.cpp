#include "dbulab/nonlinear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dbulab/errors.hpp"
#include "dbulab/gp_operators.hpp"
#include "dbulab/multiplier.hpp"
#include "dbulab/spectral.hpp"

namespace dbu {

LinearModel ModelSpec::linear_part() const {
  LinearModel lin;
  lin.dim = dim;
  switch (kind) {
    case ModelKind::nls:
      if (hyperbolic_j > 0 && hyperbolic_j < dim) {
        lin.kind = LinearKind::nonelliptic;
        lin.j = hyperbolic_j;
      } else {
        lin.kind = LinearKind::free_schrodinger;
      }
      break;
    case ModelKind::linear_potential:
      lin.kind = LinearKind::free_schrodinger;
      break;
    case ModelKind::gp:
      lin.kind = LinearKind::gp_group;
      break;
    case ModelKind::davey_stewartson:
      if (sign < 0) {
        throw contract_error(
            "linear_part: hyperbolic davey-stewartson principal part is internal "
            "(use model_linear_evolve)");
      }
      lin.kind = LinearKind::free_schrodinger;
      break;
    case ModelKind::fourth_nls:
      // i u_t + alpha Lap u + Lap^2 u = 0 matches the fourth-order linear model
      // with its second-order coefficient negated.
      lin.kind = LinearKind::fourth_order;
      lin.alpha = -alpha;
      break;
    case ModelKind::third_nls:
      lin.kind = LinearKind::third_order;
      lin.alpha = alpha;
      lin.beta = beta;
      break;
  }
  return lin;
}

void validate_model_spec(const ModelSpec& model) {
  if (model.dim < 1 || model.dim > kMaxDim) throw validation_error("model: dim in [1,3]");
  switch (model.kind) {
    case ModelKind::nls:
      if (!(model.p > 0.0)) throw validation_error("model: nls power p > 0 required");
      if (model.hyperbolic_j < 0 || model.hyperbolic_j > model.dim) {
        throw validation_error("model: nls hyperbolic split j in [0, n]");
      }
      break;
    case ModelKind::davey_stewartson:
      if (model.dim != 2) throw validation_error("model: davey-stewartson is two-dimensional");
      break;
    case ModelKind::third_nls:
      if (model.dim != 1) throw validation_error("model: third-order nls is one-dimensional");
      break;
    case ModelKind::linear_potential:
      if (!model.potential) throw validation_error("model: potential callback required");
      break;
    default:
      break;
  }
  if (model.kind != ModelKind::linear_potential && model.dim > 2) {
    throw cost_guard_error("model: nonlinear runs restricted to n <= 2");
  }
}

namespace {

std::vector<cplx> model_linear_table(const ModelSpec& model, const Grid& grid, double t) {
  if (model.kind == ModelKind::davey_stewartson && model.sign < 0) {
    // i u_t - u_x1x1 + u_x2x2 : omega = xi2^2 - xi1^2, the time-reversed
    // signature-(1,1) symbol.
    LinearModel m;
    m.kind = LinearKind::nonelliptic;
    m.dim = 2;
    m.j = 1;
    return propagator_table(m, grid, -t);
  }
  return propagator_table(model.linear_part(), grid, t);
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> coords_flat(const Grid& g) {
  const int d = g.dim();
  std::vector<double> out(g.size() * d);
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> x{};
  for (int a = 0; a < d; ++a) x[a] = g.coord(a, 0);
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    for (int a = 0; a < d; ++a) out[flat * d + a] = x[a];
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g.points(a)) {
        x[a] = g.coord(a, idx[a]);
        break;
      }
      idx[a] = 0;
      x[a] = g.coord(a, 0);
    }
  }
  return out;
}

struct GpWork {
  std::vector<cplx> b_table;
  std::vector<cplx> binv_table;
  double* projected_accum = nullptr;

  Field ups(const Field& v) const {
    Field re(v.grid, Rep::space);
    for (std::size_t i = 0; i < v.size(); ++i) re.values[i] = v.values[i].real();
    apply_table_inplace(re, b_table);
    Field out(v.grid, Rep::space);
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.values[i] = cplx(re.values[i].real(), v.values[i].imag());
    }
    return out;
  }

  Field ups_inv(const Field& f) const {
    Field re(f.grid, Rep::space);
    std::vector<double> terms(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) terms[i] = f.values[i].real();
    const double mean = pairwise_sum(terms) / static_cast<double>(f.size());
    if (projected_accum) *projected_accum += std::abs(mean);
    for (std::size_t i = 0; i < f.size(); ++i) re.values[i] = f.values[i].real() - mean;
    apply_table_inplace(re, binv_table);
    Field out(f.grid, Rep::space);
    for (std::size_t i = 0; i < f.size(); ++i) {
      out.values[i] = cplx(re.values[i].real(), f.values[i].imag());
    }
    return out;
  }

  // v' = -i Y^{-1} F(Y v), F(u) = u^2 + 2|u|^2 + |u|^2 u
  Field rhs(const Field& v) const {
    Field u = ups(v);
    Field F(u.grid, Rep::space);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const cplx ui = u.values[i];
      const double m2 = std::norm(ui);
      F.values[i] = ui * ui + 2.0 * m2 + m2 * ui;
    }
    Field g = ups_inv(F);
    for (auto& x : g.values) x *= cplx(0.0, -1.0);
    return g;
  }
};

}  // namespace

Field model_linear_evolve(const ModelSpec& model, const Field& u0, double t) {
  Field u = in_rep(u0, Rep::space);
  apply_table_inplace(u, model_linear_table(model, u.grid, t));
  return u;
}

Field ds_auxiliary(const Field& u) {
  if (u.grid.dim() != 2) throw contract_error("ds_auxiliary: 2D fields only");
  Field mod2(u.grid, Rep::space);
  const Field us = in_rep(u, Rep::space);
  for (std::size_t i = 0; i < u.size(); ++i) mod2.values[i] = std::norm(us.values[i]);
  const Multiplier r1 = riesz(u.grid, 0);
  Field out = apply_multiplier(apply_multiplier(mod2, r1), r1);
  for (auto& v : out.values) v = v.real();  // real by symmetry; drop roundoff dust
  return out;
}

Field ds_potential(const Field& u) {
  if (u.grid.dim() != 2) throw contract_error("ds_potential: 2D fields only");
  Field mod2(u.grid, Rep::space);
  const Field us = in_rep(u, Rep::space);
  for (std::size_t i = 0; i < u.size(); ++i) mod2.values[i] = std::norm(us.values[i]);
  Multiplier inv_lap_dx1{"dx1 (-Lap)^{-1}", [](std::span<const double> xi) -> cplx {
                           double n2 = 0.0;
                           for (double x : xi) n2 += x * x;
                           if (n2 == 0.0) return 0.0;
                           return cplx(0.0, -xi[0] / n2);
                         }};
  return apply_multiplier(mod2, inv_lap_dx1);
}

Trajectory evolve(const ModelSpec& model, const Field& u0, double T, double dt,
                  const std::vector<double>& snapshot_times) {
  validate_model_spec(model);
  if (!(dt > 0.0)) throw validation_error("evolve: dt > 0 required");
  if (model.dim != u0.grid.dim()) throw contract_error("evolve: model/grid dim mismatch");

  const long nsteps = std::lround(T / dt);
  if (nsteps < 1 || std::abs(nsteps * dt - T) > 1e-9 * std::max(1.0, T)) {
    throw validation_error("evolve: dt must divide T");
  }
  std::vector<long> snap_steps;
  for (double ts : snapshot_times) {
    const long k = std::lround(ts / dt);
    if (std::abs(k * dt - ts) > 1e-9 * std::max(1.0, std::abs(ts)) || k < 0 || k > nsteps) {
      std::ostringstream os;
      os << "evolve: snapshot time " << ts << " is not a multiple of dt within [0, T]";
      throw validation_error(os.str());
    }
    if (k > 0) snap_steps.push_back(k);
  }
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

  if (static_cast<double>(u0.grid.size()) * static_cast<double>(nsteps) > 2.5e9) {
    throw cost_guard_error("evolve: grid points x steps exceeds the cost budget");
  }

  Trajectory traj;
  traj.model = model;
  Field u = in_rep(u0, Rep::space);
  traj.times.push_back(0.0);
  traj.fields.push_back(u);

  const std::vector<cplx> lin_table = model_linear_table(model, u.grid, dt);

  GpWork gp;
  if (model.kind == ModelKind::gp) {
    const GpOperators ops = gp_operators();
    gp.b_table = symbol_table(u.grid, ops.B);
    gp.binv_table = symbol_table(u.grid, ops.B_inv);
    gp.projected_accum = &traj.projected_mean_accum;
  }

  std::vector<double> xs;
  if (model.kind == ModelKind::linear_potential) xs = coords_flat(u.grid);

  auto nonlinear_half = [&](Field& w, double t_mid) {
    const double h = dt / 2.0;
    switch (model.kind) {
      case ModelKind::nls: {
        const double s = model.sign >= 0 ? 1.0 : -1.0;
        for (auto& v : w.values) {
          v *= std::exp(cplx(0.0, s * h * std::pow(std::abs(v), model.p)));
        }
        break;
      }
      case ModelKind::fourth_nls: {
        for (auto& v : w.values) {
          v *= std::exp(cplx(0.0, model.lambda * h * std::pow(std::abs(v), model.p)));
        }
        break;
      }
      case ModelKind::third_nls: {
        for (auto& v : w.values) v *= std::exp(cplx(0.0, -model.gamma * h * std::norm(v)));
        break;
      }
      case ModelKind::linear_potential: {
        const int d = model.dim;
        for (std::size_t i = 0; i < w.size(); ++i) {
          const double V = model.potential(std::span<const double>(&xs[i * d], d), t_mid);
          w.values[i] *= std::exp(cplx(0.0, -h * V));
        }
        break;
      }
      case ModelKind::davey_stewartson: {
        // nonlocal coefficient frozen over the substep
        Field nl = ds_auxiliary(w);
        for (std::size_t i = 0; i < w.size(); ++i) {
          const double V = model.alpha * std::norm(w.values[i]) - model.beta * nl.values[i].real();
          w.values[i] *= std::exp(cplx(0.0, -h * V));
        }
        break;
      }
      case ModelKind::gp: {
        Field k1 = gp.rhs(w);
        Field mid = w;
        for (std::size_t i = 0; i < mid.size(); ++i) mid.values[i] += (h / 2.0) * k1.values[i];
        Field k2 = gp.rhs(mid);
        for (std::size_t i = 0; i < w.size(); ++i) w.values[i] += h * k2.values[i];
        break;
      }
    }
  };

  std::size_t next_snap = 0;
  for (long step = 0; step < nsteps; ++step) {
    const double t_mid = (step + 0.5) * dt;
    nonlinear_half(u, t_mid);
    apply_table_inplace(u, lin_table);
    nonlinear_half(u, t_mid);
    if (max_abs(u) > 1e6) {
      throw divergence_error("evolve: amplitude overflow guard tripped (max |u| > 1e6)");
    }
    if (next_snap < snap_steps.size() && snap_steps[next_snap] == step + 1) {
      traj.times.push_back((step + 1) * dt);
      traj.fields.push_back(u);
      ++next_snap;
    }
  }
  return traj;
}

std::vector<TimedField> duhamel_extract(const Trajectory& traj) {
  double sgn = 1.0;
  switch (traj.model.kind) {
    case ModelKind::nls:
      sgn = traj.model.sign >= 0 ? 1.0 : -1.0;
      break;
    case ModelKind::fourth_nls:
      sgn = traj.model.lambda >= 0 ? 1.0 : -1.0;
      break;
    case ModelKind::third_nls:
      sgn = traj.model.gamma >= 0 ? -1.0 : 1.0;
      break;
    default:
      break;
  }
  std::vector<TimedField> out;
  out.reserve(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    Field I = traj.fields[k] - model_linear_evolve(traj.model, traj.fields[0], traj.times[k]);
    // u = free + sgn i I  =>  I = -sgn i (u - free)
    for (auto& v : I.values) v *= cplx(0.0, -sgn);
    out.push_back({traj.times[k], std::move(I)});
  }
  return out;
}

std::vector<TimedField> gp_change_of_variables(const Trajectory& traj_v) {
  if (traj_v.model.kind != ModelKind::gp) {
    throw contract_error("gp_change_of_variables: gp trajectory expected");
  }
  std::vector<TimedField> out;
  out.reserve(traj_v.times.size());
  for (std::size_t k = 0; k < traj_v.times.size(); ++k) {
    Field u = upsilon(traj_v.fields[k], /*forward=*/true).field;
    for (auto& v : u.values) v += 1.0;
    out.push_back({traj_v.times[k], std::move(u)});
  }
  return out;
}

double ginzburg_landau_energy(const Field& u) {
  const Field us = in_rep(u, Rep::space);
  const Grid& g = us.grid;
  Field uh = in_rep(us, Rep::frequency);
  const int d = g.dim();
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> xi{};
  for (int a = 0; a < d; ++a) xi[a] = g.freq(a, 0);
  std::vector<double> grad_terms(uh.size());
  for (std::size_t flat = 0; flat < uh.size(); ++flat) {
    double n2 = 0.0;
    for (int a = 0; a < d; ++a) n2 += xi[a] * xi[a];
    grad_terms[flat] = n2 * std::norm(uh.values[flat]);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g.points(a)) {
        xi[a] = g.freq(a, idx[a]);
        break;
      }
      idx[a] = 0;
      xi[a] = g.freq(a, 0);
    }
  }
  const double grad2 = pairwise_sum(grad_terms) / g.box_volume();
  std::vector<double> quart(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    const cplx v = us.values[i];
    const double w = 2.0 * v.real() + std::norm(v);  // |psi|^2 - 1
    quart[i] = w * w;
  }
  return 0.5 * grad2 + 0.25 * pairwise_sum(quart) * g.cell_volume();
}

Field gp_nonlinearity_direct(const Field& u) {
  Field F(u.grid, Rep::space);
  const Field us = in_rep(u, Rep::space);
  for (std::size_t i = 0; i < us.size(); ++i) {
    const cplx ui = us.values[i];
    const double m2 = std::norm(ui);
    F.values[i] = ui * ui + 2.0 * m2 + m2 * ui;
  }
  return upsilon(F, /*forward=*/false).field;
}

Field gp_nonlinearity_expanded(const Field& u) {
  const Field us = in_rep(u, Rep::space);
  Field re(u.grid, Rep::space);
  std::vector<double> im_part(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double u1 = us.values[i].real();
    const double u2 = us.values[i].imag();
    const double m2 = u1 * u1 + u2 * u2;
    re.values[i] = 3.0 * u1 * u1 + u2 * u2 + m2 * u1;
    im_part[i] = u2 * (2.0 * u1 + m2);
  }
  Field mapped = upsilon(re, /*forward=*/false).field;
  Field out(u.grid, Rep::space);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] = cplx(mapped.values[i].real(), im_part[i]);
  }
  return out;
}

}  // namespace dbu
