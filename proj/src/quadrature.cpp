#include "dbulab/quadrature.hpp"

#include <cmath>
#include <vector>

namespace dbu::quad {

namespace {

using cplx = std::complex<double>;

struct Ctx {
  const std::function<cplx(double)>* f;
  Result* out;
  std::size_t evals = 0;
  std::size_t eval_budget = 24'000'000;
};

void simpson_rec(Ctx& ctx, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                 int depth) {
  const double m = 0.5 * (a + b);
  const double h = b - a;
  const cplx flm = (*ctx.f)(0.5 * (a + m));
  const cplx frm = (*ctx.f)(0.5 * (m + b));
  ctx.evals += 2;
  ctx.out->max_abs = std::max({ctx.out->max_abs, std::abs(flm), std::abs(frm)});
  const cplx left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const cplx right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const cplx delta = left + right - whole;
  const double local_abs = (h / 12.0) * (std::abs(fa) + 4.0 * std::abs(flm) +
                                         2.0 * std::abs(fm) + 4.0 * std::abs(frm) + std::abs(fb));
  // refinement can't beat the rounding floor of the panel sum
  const double floor = 4e-16 * local_abs;
  const bool budget_out = ctx.evals > ctx.eval_budget;
  if (depth <= 0 || budget_out || std::abs(delta) <= std::max(15.0 * tol, floor)) {
    ctx.out->value += left + right + delta / 15.0;
    ctx.out->est_error += std::abs(delta) / 15.0 + floor;
    ctx.out->abs_integral += local_abs;
    if ((depth <= 0 || budget_out) && std::abs(delta) > std::max(15.0 * tol, floor)) {
      ctx.out->converged = false;
    }
    return;
  }
  simpson_rec(ctx, a, m, fa, flm, fm, left, tol / 2.0, depth - 1);
  simpson_rec(ctx, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

void run_interval(const std::function<cplx(double)>& f, double a, double b, double tol,
                  int max_depth, Result& out) {
  const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  out.max_abs = std::max({out.max_abs, std::abs(fa), std::abs(fb), std::abs(fm)});
  const cplx whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  Ctx ctx{&f, &out};
  ctx.evals = out.evals;
  simpson_rec(ctx, a, b, fa, fm, fb, whole, tol, max_depth);
  out.evals = ctx.evals;
}

}  // namespace

Result adaptive(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                int max_depth) {
  Result out;
  run_interval(f, a, b, abs_tol, std::min(max_depth, 24), out);
  return out;
}

Result adaptive_panels(const std::function<cplx(double)>& f,
                       const std::vector<double>& breakpoints, double abs_tol, int max_depth) {
  Result out;
  if (breakpoints.size() < 2) return out;
  const double tol_each = abs_tol / static_cast<double>(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    run_interval(f, breakpoints[i], breakpoints[i + 1], tol_each, std::min(max_depth, 24), out);
  }
  return out;
}

}  // namespace dbu::quad
