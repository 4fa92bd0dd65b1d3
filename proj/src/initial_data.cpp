#include "dbulab/initial_data.hpp"

#include <cmath>
#include <sstream>

#include "dbulab/errors.hpp"
#include "dbulab/gp_operators.hpp"
#include "dbulab/special_functions.hpp"

namespace dbu {

namespace {

bool is_chirp(DataFamily f) {
  return f == DataFamily::elliptic_chirp || f == DataFamily::hyperbolic_chirp ||
         f == DataFamily::amplitude_chirp || f == DataFamily::gp_profile ||
         f == DataFamily::perturbed;
}

int split_j(const DataSpec& spec, int dim) { return spec.j == 0 ? dim : spec.j; }

// Phase center with flipped tail signs; the hyperbolic chirp focuses there.
std::vector<double> flipped_focus(const DataSpec& spec, int dim) {
  std::vector<double> qt(dim, 0.0);
  const int j = split_j(spec, dim);
  for (int a = 0; a < dim; ++a) {
    const double qa = a < static_cast<int>(spec.q.size()) ? spec.q[a] : 0.0;
    qt[a] = (a < j) ? qa : -qa;
  }
  return qt;
}

std::vector<double> padded_q(const DataSpec& spec, int dim) {
  std::vector<double> q(dim, 0.0);
  for (int a = 0; a < dim && a < static_cast<int>(spec.q.size()); ++a) q[a] = spec.q[a];
  return q;
}

}  // namespace

void validate_data_spec(const DataSpec& spec, int dim) {
  if (!(spec.delta > 0.0)) throw validation_error("data: delta > 0 required");
  const double m = spec.m;
  switch (spec.family) {
    case DataFamily::elliptic_chirp:
    case DataFamily::hyperbolic_chirp:
    case DataFamily::amplitude_chirp:
    case DataFamily::gp_profile:
    case DataFamily::perturbed: {
      if (!(spec.alpha > 0.0)) throw validation_error("data: chirp rate alpha > 0 required");
      if (!(m > dim / 4.0 && m <= dim / 2.0)) {
        std::ostringstream os;
        os << "data: chirp decay exponent must satisfy n/4 < m <= n/2, i.e. " << dim / 4.0
           << " < m <= " << dim / 2.0 << " for n = " << dim;
        throw validation_error(os.str());
      }
      if (spec.family == DataFamily::hyperbolic_chirp) {
        const int j = split_j(spec, dim);
        if (j < 1 || j > dim) throw validation_error("data: hyperbolic split j in [1, n]");
      }
      break;
    }
    case DataFamily::pearcey_profile:
      if (dim != 1) throw validation_error("data: pearcey profile is one-dimensional");
      if (!(m > 1.0 / 12.0 && m <= 1.0 / 6.0)) {
        throw validation_error("data: pearcey profile requires 1/12 < m <= 1/6");
      }
      break;
    case DataFamily::airy_profile:
      if (dim != 1) throw validation_error("data: airy profile is one-dimensional");
      if (!(m > 1.0 / 8.0 && m <= 1.0 / 4.0)) {
        throw validation_error("data: airy profile requires 1/8 < m <= 1/4");
      }
      if (!(spec.beta > 0.0)) throw validation_error("data: airy profile requires beta > 0");
      break;
    case DataFamily::superposition:
      if (spec.components.empty()) {
        throw validation_error("data: superposition needs at least one component");
      }
      for (const auto& c : spec.components) validate_data_spec(c, dim);
      break;
  }
}

double window_value(const Window& w, const Grid& grid, std::span<const double> y) {
  if (w.kind == WindowKind::none) return 1.0;
  double v = 1.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const double L = grid.extent(a);
    const double inner = (1.0 - w.fraction) * L;
    const double ay = std::abs(y[a]);
    if (ay <= inner) continue;
    if (ay >= L) return 0.0;
    v *= 0.5 * (1.0 + std::cos(M_PI * (ay - inner) / (w.fraction * L)));
  }
  return v;
}

namespace {

cplx profile_point(const DataSpec& spec, int dim, std::span<const double> y) {
  switch (spec.family) {
    case DataFamily::elliptic_chirp:
    case DataFamily::gp_profile: {
      const auto q = padded_q(spec, dim);
      double r2q = 0.0, r2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        r2q += (y[a] - q[a]) * (y[a] - q[a]);
        r2 += y[a] * y[a];
      }
      return std::exp(cplx(0.0, -spec.alpha * r2q)) * std::pow(1.0 + r2, -spec.m);
    }
    case DataFamily::perturbed: {
      DataSpec base = spec;
      base.family = DataFamily::elliptic_chirp;
      cplx v = profile_point(base, dim, y);
      if (spec.perturb) {
        double r2 = 0.0;
        for (int a = 0; a < dim; ++a) {
          const double c = a < static_cast<int>(spec.perturb->center.size())
                               ? spec.perturb->center[a]
                               : 0.0;
          r2 += (y[a] - c) * (y[a] - c);
        }
        v += spec.perturb->amplitude * std::exp(-r2 / (spec.perturb->width * spec.perturb->width));
      }
      return v;
    }
    case DataFamily::hyperbolic_chirp: {
      const auto qt = flipped_focus(spec, dim);
      const int j = split_j(spec, dim);
      double quad = 0.0, r2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double z = y[a] - qt[a];
        quad += (a < j) ? z * z : -z * z;
        r2 += y[a] * y[a];
      }
      return std::exp(cplx(0.0, -spec.alpha * quad)) * std::pow(1.0 + r2, -spec.m);
    }
    case DataFamily::amplitude_chirp: {
      const auto q = padded_q(spec, dim);
      double r2q = 0.0, r2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        r2q += (y[a] - q[a]) * (y[a] - q[a]);
        r2 += y[a] * y[a];
      }
      // Non-radial bounded modulation; keeps the L^2-but-not-L^1 amplitude class.
      const double amp = std::pow(1.0 + r2, -spec.m) * (1.0 + 0.3 * std::cos(y[0]));
      return std::exp(cplx(0.0, -spec.alpha * r2q)) * amp;
    }
    case DataFamily::pearcey_profile: {
      // conj(B(kernel_alpha/2 scaling, -x)); the conjugate phase is what makes
      // the fourth-order kernel refocus the datum at (0, 1/4).
      const PearceyValue B = pearcey(spec.kernel_alpha * 0.5, -y[0]);
      return std::conj(B.value) * std::pow(1.0 + y[0] * y[0], -spec.m);
    }
    case DataFamily::airy_profile: {
      const double c = 3.0 * std::pow(spec.beta, 4.0 / 3.0);
      const double z = (spec.kernel_alpha * spec.kernel_alpha - y[0]) / c;
      return airy(z) * std::pow(1.0 + y[0] * y[0], -spec.m);
    }
    case DataFamily::superposition:
      throw contract_error("profile_point: superposition handled by data_point");
  }
  return 0.0;
}

}  // namespace

cplx data_point(const DataSpec& spec, const Grid& grid, std::span<const double> y) {
  if (spec.family == DataFamily::superposition) {
    cplx v = 0.0;
    for (const auto& c : spec.components) v += data_point(c, grid, y);
    return v;
  }
  return spec.delta * profile_point(spec, grid.dim(), y) * window_value(spec.window, grid, y);
}

double required_xi_max(const DataSpec& spec, double extent) {
  const double frac = spec.window.kind == WindowKind::none ? 0.0 : spec.window.fraction;
  const double edge = (1.0 - 0.5 * frac) * extent;
  if (is_chirp(spec.family)) return 2.0 * spec.alpha * edge + 16.0;
  if (spec.family == DataFamily::pearcey_profile) return std::cbrt(edge) + 16.0;
  if (spec.family == DataFamily::airy_profile) {
    const double c = 3.0 * std::pow(spec.beta, 4.0 / 3.0);
    return std::sqrt(edge / c) / std::cbrt(c) + 16.0;
  }
  if (spec.family == DataFamily::superposition) {
    double m = 0.0;
    for (const auto& c : spec.components) m = std::max(m, required_xi_max(c, extent));
    return m;
  }
  return 16.0;
}

std::vector<int> auto_points(const DataSpec& spec, const std::vector<double>& extents) {
  std::vector<int> pts;
  for (double L : extents) {
    const double need = required_xi_max(spec, L) * L * 2.0 / M_PI;
    int n = 8;
    while (n < need) n *= 2;
    pts.push_back(n);
  }
  return pts;
}

namespace {

std::vector<Focus> predicted_foci(const DataSpec& spec, int dim) {
  switch (spec.family) {
    case DataFamily::elliptic_chirp:
    case DataFamily::amplitude_chirp:
    case DataFamily::gp_profile:
    case DataFamily::perturbed:
      return {{padded_q(spec, dim), 1.0 / (4.0 * spec.alpha)}};
    case DataFamily::hyperbolic_chirp:
      return {{flipped_focus(spec, dim), 1.0 / (4.0 * spec.alpha)}};
    case DataFamily::pearcey_profile:
      return {{std::vector<double>(dim, 0.0), 0.25}};
    case DataFamily::airy_profile:
      // third-order kernel alignment: (3 t beta)^{1/3} = 3 beta^{4/3}
      return {{std::vector<double>(dim, 0.0), 9.0 * spec.beta * spec.beta * spec.beta}};
    case DataFamily::superposition: {
      std::vector<Focus> all;
      for (const auto& c : spec.components) {
        auto f = predicted_foci(c, dim);
        all.insert(all.end(), f.begin(), f.end());
      }
      return all;
    }
  }
  return {};
}

void check_nyquist(const DataSpec& spec, const Grid& grid) {
  for (int a = 0; a < grid.dim(); ++a) {
    const double need = required_xi_max(spec, grid.extent(a));
    if (grid.nyquist(a) < need) {
      const double n_need = need * grid.extent(a) * 2.0 / M_PI;
      int n = 8;
      while (n < n_need) n *= 2;
      std::ostringstream os;
      os << "data: grid under-resolves the chirp on axis " << a + 1 << " (xi_max "
         << grid.nyquist(a) << " < required " << need << "); need N >= " << n;
      throw validation_error(os.str());
    }
  }
}

}  // namespace

BuiltData build(const DataSpec& spec, const Grid& grid, bool enforce_nyquist) {
  validate_data_spec(spec, grid.dim());
  if (enforce_nyquist) check_nyquist(spec, grid);
  Field f(grid, Rep::space);
  const int d = grid.dim();
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> y{};
  for (int a = 0; a < d; ++a) y[a] = grid.coord(a, 0);
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    f.values[flat] = data_point(spec, grid, std::span<const double>(y.data(), d));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < grid.points(a)) {
        y[a] = grid.coord(a, idx[a]);
        break;
      }
      idx[a] = 0;
      y[a] = grid.coord(a, 0);
    }
  }
  return {std::move(f), predicted_foci(spec, d)};
}

BuiltData superpose(const std::vector<DataSpec>& specs, const Grid& grid, bool enforce_nyquist) {
  if (specs.empty()) throw validation_error("superpose: empty spec list");
  BuiltData out = build(specs[0], grid, enforce_nyquist);
  for (std::size_t i = 1; i < specs.size(); ++i) {
    BuiltData next = build(specs[i], grid, enforce_nyquist);
    for (std::size_t k = 0; k < out.field.size(); ++k) out.field.values[k] += next.field.values[k];
    out.foci.insert(out.foci.end(), next.foci.begin(), next.foci.end());
  }
  return out;
}

GpInitial gp_initial(const DataSpec& spec, const Grid& grid) {
  if (!is_chirp(spec.family)) {
    throw validation_error("gp_initial: spec must be a chirp family (v0 role)");
  }
  BuiltData v0 = build(spec, grid);
  Field u0 = upsilon(v0.field, /*forward=*/true).field;  // B is bounded, no zero-mode issue
  Field psi0 = u0;
  for (auto& v : psi0.values) v += 1.0;
  const double deviation = l2_norm(u0);
  if (!std::isfinite(deviation)) throw domain_error("gp_initial: psi0 - 1 not square-summable");
  return {std::move(psi0), std::move(v0.field), std::move(v0.foci)};
}

}  // namespace dbu
