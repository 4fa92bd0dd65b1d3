#include "dbulab/linear_propagators.hpp"

#include <cmath>

#include "dbulab/errors.hpp"
#include "dbulab/gp_operators.hpp"
#include "dbulab/spectral.hpp"

namespace dbu {

void validate_linear_model(const LinearModel& model) {
  if (model.dim < 1 || model.dim > kMaxDim) throw validation_error("linear model: dim in [1,3]");
  switch (model.kind) {
    case LinearKind::nonelliptic:
      if (model.j < 1 || model.j > model.dim) {
        throw validation_error("linear model: nonelliptic split j in [1, n]");
      }
      break;
    case LinearKind::fractional:
      if (!(model.a > 0.0 && model.a < 1.0)) {
        throw validation_error("linear model: fractional exponent a in (0,1)");
      }
      break;
    case LinearKind::third_order:
      if (model.dim != 1) throw validation_error("linear model: third order is one-dimensional");
      if (model.beta == 0.0) throw validation_error("linear model: third order needs beta != 0");
      break;
    default:
      break;
  }
}

double dispersion(const LinearModel& model, std::span<const double> xi) {
  double n2 = 0.0;
  for (double x : xi) n2 += x * x;
  switch (model.kind) {
    case LinearKind::free_schrodinger:
      return n2;
    case LinearKind::nonelliptic: {
      double w = 0.0;
      for (std::size_t a = 0; a < xi.size(); ++a) {
        w += (static_cast<int>(a) < model.j ? 1.0 : -1.0) * xi[a] * xi[a];
      }
      return w;
    }
    case LinearKind::fractional:
      return std::pow(n2, model.a / 2.0);
    case LinearKind::fourth_order:
      return -(n2 * n2 + model.alpha * n2);
    case LinearKind::third_order: {
      const double x = xi[0];
      return -(model.alpha * x * x + model.beta * x * x * x);
    }
    case LinearKind::gp_group:
      return gp_symbol_A(n2);
  }
  return 0.0;
}

std::vector<cplx> propagator_table(const LinearModel& model, const Grid& grid, double t) {
  const int d = grid.dim();
  std::vector<cplx> table(grid.size());
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> xi{};
  for (int a = 0; a < d; ++a) xi[a] = grid.freq(a, 0);
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    const double w = dispersion(model, std::span<const double>(xi.data(), d));
    table[flat] = std::exp(cplx(0.0, -t * w));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < grid.points(a)) {
        xi[a] = grid.freq(a, idx[a]);
        break;
      }
      idx[a] = 0;
      xi[a] = grid.freq(a, 0);
    }
  }
  return table;
}

Field evolve_linear(const LinearModel& model, const Field& u0, double t) {
  validate_linear_model(model);
  if (model.dim != u0.grid.dim()) throw contract_error("evolve_linear: model/grid dim mismatch");
  Field u = in_rep(u0, Rep::space);
  apply_table_inplace(u, propagator_table(model, u.grid, t));
  return u;
}

namespace {

Field spectral_shift(const Field& f, std::span<const double> shift) {
  // f(x + shift) via the shift theorem.
  Field fh = in_rep(f, Rep::frequency);
  const Grid& g = fh.grid;
  const int d = g.dim();
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> xi{};
  for (int a = 0; a < d; ++a) xi[a] = g.freq(a, 0);
  for (std::size_t flat = 0; flat < fh.size(); ++flat) {
    double phase = 0.0;
    for (int a = 0; a < d; ++a) phase += xi[a] * shift[a];
    fh.values[flat] *= std::exp(cplx(0.0, phase));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g.points(a)) {
        xi[a] = g.freq(a, idx[a]);
        break;
      }
      idx[a] = 0;
      xi[a] = g.freq(a, 0);
    }
  }
  return in_rep(fh, Rep::space);
}

}  // namespace

std::vector<TimedField> stark_transform(const std::vector<TimedField>& traj,
                                        std::span<const double> E, bool to_stark) {
  std::vector<TimedField> out;
  out.reserve(traj.size());
  for (const auto& tf : traj) {
    const Grid& g = tf.field.grid;
    const int d = g.dim();
    if (static_cast<int>(E.size()) != d) throw contract_error("stark_transform: E/grid dim mismatch");
    const double t = tf.t;
    double e2 = 0.0;
    std::array<double, kMaxDim> shift{};
    for (int a = 0; a < d; ++a) {
      e2 += E[a] * E[a];
      shift[a] = (to_stark ? 1.0 : -1.0) * t * t * E[a];
      if (std::abs(shift[a]) >= g.extent(a)) {
        throw validation_error("stark_transform: shift t^2 E exceeds half the domain");
      }
    }
    Field shifted = spectral_shift(in_rep(tf.field, Rep::space),
                                   std::span<const double>(shift.data(), d));
    // phase e^{-i(t E.x + t^3 |E|^2/3)} in the free->Stark direction; in the
    // inverse direction the phase is evaluated at the pre-shift argument.
    Field result(g, Rep::space);
    std::array<int, kMaxDim> idx{};
    std::array<double, kMaxDim> x{};
    for (int a = 0; a < d; ++a) x[a] = g.coord(a, 0);
    for (std::size_t flat = 0; flat < result.size(); ++flat) {
      double ex = 0.0;
      for (int a = 0; a < d; ++a) ex += E[a] * x[a];
      const double phase = -(t * ex + t * t * t * e2 / 3.0);
      result.values[flat] =
          shifted.values[flat] * std::exp(cplx(0.0, to_stark ? phase : -phase));
      for (int a = d - 1; a >= 0; --a) {
        if (++idx[a] < g.points(a)) {
          x[a] = g.coord(a, idx[a]);
          break;
        }
        idx[a] = 0;
        x[a] = g.coord(a, 0);
      }
    }
    out.push_back({t, std::move(result)});
  }
  return out;
}

cplx evaluate_at(const Field& f, std::span<const double> x) {
  if (f.rep != Rep::frequency) {
    const Field fh = transform(f, Rep::frequency);
    return evaluate_at(fh, x);
  }
  const Field& fh = f;
  const Grid& g = fh.grid;
  const int d = g.dim();
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> xi{};
  for (int a = 0; a < d; ++a) xi[a] = g.freq(a, 0);
  cplx acc = 0.0;
  for (std::size_t flat = 0; flat < fh.size(); ++flat) {
    double phase = 0.0;
    for (int a = 0; a < d; ++a) phase += xi[a] * x[a];
    acc += fh.values[flat] * std::exp(cplx(0.0, phase));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g.points(a)) {
        xi[a] = g.freq(a, idx[a]);
        break;
      }
      idx[a] = 0;
      xi[a] = g.freq(a, 0);
    }
  }
  return acc / g.box_volume();
}

namespace {

// Direct oscillator-kernel quadrature, one axis at a time is not separable in
// cost here; restricted to 1D lattices of moderate size.
Field mehler_evolve(const Field& u0, double t, double omega, HarmonicSign sign) {
  const Grid& g = u0.grid;
  if (g.dim() != 1) throw cost_guard_error("harmonic_evolve(mehler): 1D grids only");
  if (g.points(0) > 8192) throw cost_guard_error("harmonic_evolve(mehler): N <= 8192");
  const int n = g.points(0);
  const double dx = g.spacing(0);
  const bool attractive = sign == HarmonicSign::attractive;
  const double s = attractive ? std::sin(2.0 * omega * t) : std::sinh(2.0 * omega * t);
  const double c = attractive ? std::cos(2.0 * omega * t) : std::cosh(2.0 * omega * t);
  if (attractive && std::abs(s) < 1e-3) {
    throw domain_error("harmonic_evolve(mehler): too close to a caustic (|sin 2wt| < 1e-3)");
  }
  if (!attractive && std::abs(s) < 1e-12) {
    throw domain_error("harmonic_evolve(mehler): t too small in the repulsive kernel");
  }
  const double sgn_t = t >= 0 ? 1.0 : -1.0;
  const cplx amp = std::exp(cplx(0.0, -sgn_t * M_PI / 4.0)) *
                   std::sqrt(std::abs(omega / (2.0 * M_PI * s)));
  const Field us = in_rep(u0, Rep::space);
  Field out(g, Rep::space);
  for (int i = 0; i < n; ++i) {
    const double x = g.coord(0, i);
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double y = g.coord(0, k);
      const double phase = omega / s * (0.5 * (x * x + y * y) * c - x * y);
      acc += us.values[k] * std::exp(cplx(0.0, phase));
    }
    out.values[i] = amp * acc * dx;
  }
  return out;
}

Field lens_evolve(const Field& u0, double t, double omega, HarmonicSign sign) {
  const Grid& g = u0.grid;
  if (g.dim() != 1) throw cost_guard_error("harmonic_evolve(lens): 1D grids only");
  if (g.points(0) > 8192) throw cost_guard_error("harmonic_evolve(lens): N <= 8192");
  const bool attractive = sign == HarmonicSign::attractive;
  const double w2t = 2.0 * omega * t;
  if (attractive && std::abs(std::cos(w2t)) < 1e-3) {
    throw domain_error("harmonic_evolve(lens): too close to the lens caustic");
  }
  const double c = attractive ? std::cos(w2t) : std::cosh(w2t);
  const double tn = attractive ? std::tan(w2t) : std::tanh(w2t);
  const double t_free = tn / (2.0 * omega);
  const double chirp = (attractive ? -1.0 : 1.0) * 0.5 * omega * tn;

  Field freed = evolve_linear(LinearModel::free_model(1), u0, t_free);
  Field freq = in_rep(freed, Rep::frequency);
  Field out(g, Rep::space);
  const int n = g.points(0);
  for (int i = 0; i < n; ++i) {
    const double y = g.coord(0, i);
    const double stretched = y / c;
    const cplx val = evaluate_at(freq, std::span<const double>(&stretched, 1));
    out.values[i] = std::pow(std::abs(c), -0.5) * val * std::exp(cplx(0.0, chirp * y * y));
  }
  return out;
}

}  // namespace

Field harmonic_evolve(const Field& u0, double t, double omega, HarmonicSign sign,
                      HarmonicMethod method) {
  if (!(omega > 0.0)) throw validation_error("harmonic_evolve: omega > 0 required");
  if (sign == HarmonicSign::attractive && !(std::abs(t) < M_PI / (2.0 * omega))) {
    throw domain_error("harmonic_evolve: attractive kernel valid for |t| < pi/(2 omega)");
  }
  if (t == 0.0) return in_rep(u0, Rep::space);
  return method == HarmonicMethod::mehler ? mehler_evolve(u0, t, omega, sign)
                                          : lens_evolve(u0, t, omega, sign);
}

}  // namespace dbu
