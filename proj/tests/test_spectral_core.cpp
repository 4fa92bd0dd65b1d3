#include <doctest.h>

#include <cmath>

#include "dbulab/errors.hpp"
#include "dbulab/gp_operators.hpp"
#include "dbulab/initial_data.hpp"
#include "dbulab/multiplier.hpp"
#include "dbulab/spectral.hpp"

using namespace dbu;

namespace {

Field gaussian_field(const Grid& g, double width = 1.0) {
  Field f(g, Rep::space);
  for (int i = 0; i < g.points(0); ++i) {
    const double x = g.coord(0, i);
    f.values[i] = std::exp(-x * x / (width * width));
  }
  return f;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

Field dbu_datum(double L, int N, double alpha = 4.0, double m = 0.5) {
  Grid g({L}, {N});
  DataSpec spec;
  spec.family = DataFamily::elliptic_chirp;
  spec.alpha = alpha;
  spec.m = m;
  spec.q = {0.0};
  return build(spec, g).field;
}

}  // namespace

TEST_CASE("transform roundtrip is the identity") {
  Grid g({12.0, 7.0}, {32, 16});
  Field f(g, Rep::space);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.values[i] = cplx(std::sin(0.37 * i), std::cos(0.11 * i * i));
  }
  Field back = transform(transform(f, Rep::frequency), Rep::space);
  CHECK(max_abs_diff(f, back) < 1e-12 * sup_norm(f));
  CHECK_THROWS_AS(transform(f, Rep::space), contract_error);
}

TEST_CASE("constant field concentrates on the zero mode") {
  Grid g({5.0}, {64});
  Field f(g, Rep::space);
  for (auto& v : f.values) v = 1.0;
  Field fh = transform(f, Rep::frequency);
  CHECK(std::abs(fh.values[0] - cplx(10.0, 0.0)) < 1e-12);  // integral of 1 over [-5,5)
  for (std::size_t k = 1; k < fh.size(); ++k) CHECK(std::abs(fh.values[k]) < 1e-11);
}

TEST_CASE("gaussian transform matches sqrt(pi) e^{-xi^2/4}") {
  Grid g({20.0}, {1024});
  Field f = gaussian_field(g);
  Field fh = transform(f, Rep::frequency);
  for (int k = 0; k < g.points(0); ++k) {
    const double xi = g.freq(0, k);
    const double exact = std::sqrt(M_PI) * std::exp(-xi * xi / 4.0);
    CHECK(std::abs(fh.values[k] - exact) < 1e-10);
  }
}

TEST_CASE("parseval holds to 1e-12") {
  Grid g({9.0}, {256});
  Field f(g, Rep::space);
  for (int i = 0; i < 256; ++i) {
    const double x = g.coord(0, i);
    f.values[i] = cplx(std::exp(-x * x), 0.4 * std::exp(-2.0 * (x - 1) * (x - 1)));
  }
  const double a = l2_norm(f);
  const double b = l2_norm(transform(f, Rep::frequency));
  CHECK(std::abs(a - b) < 1e-12 * a);
}

TEST_CASE("multiplier basics: identity, finiteness error, composition") {
  Grid g({10.0}, {128});
  Field f = gaussian_field(g);
  Field same = apply_multiplier(f, identity_multiplier());
  CHECK(max_abs_diff(f, same) < 1e-13);

  Multiplier bad{"1/xi", [](std::span<const double> xi) -> cplx { return 1.0 / xi[0]; }};
  CHECK_THROWS_AS(apply_multiplier(f, bad), domain_error);

  Multiplier m1{"exp", [](std::span<const double> xi) -> cplx {
                  return std::exp(cplx(0.0, 0.05 * xi[0] * xi[0]));
                }};
  Multiplier m2{"decay", [](std::span<const double> xi) -> cplx {
                  return 1.0 / (1.0 + xi[0] * xi[0]);
                }};
  Field lhs = apply_multiplier(apply_multiplier(f, m2), m1);
  Field rhs = apply_multiplier(f, product(m1, m2));
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("hilbert transform squares to -1 on zero-mean band-limited fields") {
  Grid g({10.0}, {256});
  Field f(g, Rep::space);
  for (int i = 0; i < 256; ++i) {
    const double x = g.coord(0, i);
    f.values[i] = std::sin(M_PI * x / 10.0 * 3.0) + 0.3 * std::cos(M_PI * x / 10.0 * 7.0);
  }
  const Multiplier h = hilbert(g, 0);
  Field hh = apply_multiplier(apply_multiplier(f, h), h);
  Field neg = cplx(-1.0, 0.0) * f;
  CHECK(max_abs_diff(hh, neg) < 1e-12);
}

TEST_CASE("riesz composition equals the -xi1^2/|xi|^2 multiplier in 2D") {
  Grid g({6.0, 6.0}, {32, 32});
  Field f(g, Rep::space);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = std::sin(0.17 * i) + 0.2;
  const Multiplier r1 = riesz(g, 0);
  Field two_step = apply_multiplier(apply_multiplier(f, r1), r1);
  std::array<double, 2> nyq{g.nyquist(0), g.nyquist(1)};
  Multiplier direct{"-xi1^2/|xi|^2", [nyq](std::span<const double> xi) -> cplx {
                      if (xi[0] == nyq[0] || xi[1] == nyq[1]) return 0.0;
                      const double n2 = xi[0] * xi[0] + xi[1] * xi[1];
                      if (n2 == 0.0) return 0.0;
                      return -xi[0] * xi[0] / n2;
                    }};
  Field one_step = apply_multiplier(f, direct);
  CHECK(max_abs_diff(two_step, one_step) < 1e-12);
}

TEST_CASE("fractional derivatives: identity, semigroup, plane wave") {
  Grid g({16.0}, {512});
  Field f = gaussian_field(g);
  CHECK(max_abs_diff(frac_derivative(f, 0.0), f) < 1e-13);

  Field half_twice = frac_derivative(frac_derivative(f, 0.5), 0.5);
  Field one = frac_derivative(f, 1.0);
  CHECK(max_abs_diff(half_twice, one) < 1e-12);

  CHECK_THROWS_AS(frac_derivative(f, -0.1), domain_error);

  // windowed plane wave: D^1 acts as |k| in the window interior
  const double k = 32.0 * M_PI / 16.0;
  Field w(g, Rep::space);
  for (int i = 0; i < 512; ++i) {
    const double x = g.coord(0, i);
    const double env = std::exp(-std::pow(x / 9.0, 8.0));
    w.values[i] = env * std::exp(cplx(0.0, k * x));
  }
  Field dw = frac_derivative(w, 1.0);
  for (int i = 0; i < 512; ++i) {
    const double x = g.coord(0, i);
    if (std::abs(x) < 4.0) {
      CHECK(std::abs(dw.values[i] - k * w.values[i]) < 1e-3 * k);
    }
  }

  // bessel variants: J^0 = id and J^s_j^ ignores the named axis
  CHECK(max_abs_diff(frac_derivative(f, 0.0, std::nullopt, DerivKind::bessel), f) < 1e-13);
  Grid g2({6.0, 6.0}, {16, 16});
  Field h(g2, Rep::space);
  for (std::size_t i = 0; i < h.size(); ++i) h.values[i] = std::cos(0.21 * i);
  Field jhat = frac_derivative(h, 2.0, 0, DerivKind::bessel_all_but);
  Multiplier ref{"1+xi2^2", [](std::span<const double> xi) -> cplx {
                   return 1.0 + xi[1] * xi[1];
                 }};
  CHECK(max_abs_diff(jhat, apply_multiplier(h, ref)) < 1e-12);
}

TEST_CASE("sobolev norm: s = 0 is L2, monotone in s") {
  Grid g({10.0}, {256});
  Field f = gaussian_field(g);
  CHECK(std::abs(sobolev_norm(f, 0.0) - l2_norm(f)) < 1e-12);
  double prev = sobolev_norm(f, 0.0);
  for (double s : {0.3, 0.7, 1.2, 2.0}) {
    const double cur = sobolev_norm(f, s);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("dbu datum: H^0.4 saturates under refinement, H^0.6 keeps growing") {
  // m = 1/2 datum lies in H^s exactly for s < 1/2
  const std::vector<std::pair<double, int>> levels = {{20.0, 2048}, {40.0, 8192}, {80.0, 32768}};
  std::vector<double> n04, n06;
  for (auto [L, N] : levels) {
    Field u = dbu_datum(L, N);
    n04.push_back(sobolev_norm(u, 0.4));
    n06.push_back(sobolev_norm(u, 0.6));
  }
  const double last04 = n04[2] / n04[1];
  const double last06 = n06[2] / n06[1];
  CHECK(last04 < 1.07);
  CHECK(last06 > 1.10);
  CHECK(n06[2] / n06[0] > 1.25);
  CHECK(n04[2] / n04[0] < 1.20);
}

TEST_CASE("square function: zero data, symmetry, cost guard") {
  Grid g({10.0}, {128});
  Field z(g, Rep::space);
  Field dz = square_function_oracle(z, 0.5);
  for (const auto& v : dz.values) CHECK(std::abs(v) == 0.0);

  Field bump = gaussian_field(g);
  Field db = square_function_oracle(bump, 0.5);
  for (int i = 1; i < 64; ++i) {
    CHECK(std::abs(db.values[i].real() - db.values[128 - i].real()) < 1e-10);
  }
  CHECK(db.values[64].real() > 0.0);

  Grid too_big({10.0}, {8192});
  Field fb(too_big, Rep::space);
  CHECK_THROWS_AS(square_function_oracle(fb, 0.5), cost_guard_error);
}

TEST_CASE("square-function / homogeneous-derivative ratio is a stable constant") {
  const double s = 0.5;
  auto ratio_for = [&](const Grid& g, int which) {
    Field f(g, Rep::space);
    for (int i = 0; i < g.points(0); ++i) {
      const double x = g.coord(0, i);
      switch (which) {
        case 0: f.values[i] = std::exp(-x * x); break;
        case 1: f.values[i] = std::exp(-2.0 * (x - 1) * (x - 1)); break;
        case 2: f.values[i] = 1.0 / std::cosh(x); break;
        case 3: f.values[i] = std::exp(-x * x * x * x); break;
        default: f.values[i] = std::exp(-x * x) * std::cos(2.0 * x); break;
      }
    }
    const double a = l2_norm(square_function_oracle(f, s));
    const double b = l2_norm(frac_derivative(f, s));
    return a / b;
  };
  Grid g({10.0}, {256});
  double lo = 1e300, hi = 0.0;
  for (int which = 0; which < 5; ++which) {
    const double r = ratio_for(g, which);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 1.04);  // constant to +-2% across the family

  // grid independence of the constant (+-5%)
  Grid g2({14.0}, {512});
  const double r_ref = ratio_for(g, 0);
  const double r_alt = ratio_for(g2, 0);
  CHECK(std::abs(r_alt - r_ref) / r_ref < 0.05);
}

TEST_CASE("gp operator family identities") {
  CHECK(gp_symbol_r(0.0) == -1.0);
  CHECK(gp_symbol_a(0.0) == 0.0);
  CHECK(gp_symbol_A(0.0) == 0.0);
  CHECK(std::abs(gp_symbol_A(1.0) - std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(gp_symbol_B(2.0) - 1.0 / std::sqrt(2.0)) < 1e-15);

  Grid g({25.0}, {2048});
  for (int k = 0; k < g.points(0); ++k) {
    const double xi = g.freq(0, k);
    const double xi2 = xi * xi;
    CHECK(std::abs(gp_symbol_A(xi2) - (2.0 + xi2) * gp_symbol_B(xi2)) <
          1e-12 * std::max(1.0, gp_symbol_A(xi2)));
    if (xi2 > 0.0) {
      const double b1 = gp_symbol_B(xi2) - 1.0;
      const double b2 = 1.0 / gp_symbol_B(xi2) - 1.0;
      CHECK(std::abs((1.0 + b1) * (1.0 + b2) - 1.0) < 1e-12);
      CHECK(std::abs(b1) * (2.0 + xi2) < 2.0 + 1e-12);
      CHECK(std::abs(b2) * std::abs(xi) * std::sqrt(2.0 + xi2) < 2.0 + 1e-12);
    }
    if (std::abs(xi) >= 10.0) {
      CHECK(std::abs(gp_symbol_r(xi2)) * xi2 < 0.6);
    }
    for (double t : {0.1, 0.25, 1.0}) {
      const cplx lhs = std::exp(cplx(0.0, t * gp_symbol_A(xi2)));
      const cplx rhs = std::exp(cplx(0.0, t)) * std::exp(cplx(0.0, t * xi2)) *
                       (1.0 + gp_symbol_kappa(xi2, t));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("upsilon maps: inverse pair, imaginary identity, real-linearity witness") {
  Grid g({10.0}, {256});
  Field f(g, Rep::space);
  for (int i = 0; i < 256; ++i) {
    const double x = g.coord(0, i);
    f.values[i] = cplx(std::exp(-x * x) * std::cos(x), 0.5 * std::exp(-x * x / 2.0));
  }
  double mean = 0.0;
  for (const auto& v : f.values) mean += v.real();
  mean /= 256.0;
  for (auto& v : f.values) v -= mean;

  Field roundtrip = upsilon(upsilon(f, false).field, true).field;
  CHECK(max_abs_diff(roundtrip, f) < 1e-10 * std::max(1.0, sup_norm(f)));

  Field imag_only(g, Rep::space);
  for (int i = 0; i < 256; ++i) imag_only.values[i] = cplx(0.0, std::sin(0.4 * i));
  CHECK(max_abs_diff(upsilon(imag_only, true).field, imag_only) < 1e-13);

  Field fi = cplx(0.0, 1.0) * f;
  Field lhs = upsilon(fi, true).field;
  Field rhs = cplx(0.0, 1.0) * upsilon(f, true).field;
  CHECK(max_abs_diff(lhs, rhs) > 1e-3);  // R-linear, not C-linear
}
