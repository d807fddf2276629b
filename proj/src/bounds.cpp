#include "piezobeam/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "piezobeam/certificates.hpp"
#include "source_terms.hpp"

namespace piezobeam {

LowerBoundParams LowerBoundParams::from_model(const PhysicalParams& ph,
                                              const SourceModel& src, const Grid& g) {
  LowerBoundParams lb;
  lb.m = std::min({ph.alpha1(), ph.beta, 1.0});
  lb.Cp = poincare_constant(g);
  lb.d = src.d;
  lb.beta = src.beta_growth;
  lb.r = *std::max_element(lb.beta.begin(), lb.beta.end());
  double biggest = 0.0;
  for (double b : lb.beta) biggest = std::max(biggest, std::pow(lb.Cp, b));
  lb.A = lb.d * lb.d * biggest;
  return lb;
}

double psi(const Grid& g, const StateVector& s, const SourceModel& src) {
  return integrate(g, detail::source_fields(src, s.v, s.p).potential);
}

namespace {

// Recursive adaptive Simpson with the standard |S2-S1|/15 acceptance test;
// accumulates the accepted panels' error estimates.
double adaptive_simpson(const std::function<double(double)>& f, double a, double fa,
                        double b, double fb, double fm, double whole, double tol,
                        int depth, double& err) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1, err) +
         adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1, err);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, double& err) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, 48, err);
}

}  // namespace

LowerBoundReport lower_bound_Tstar(double psi0, const LowerBoundParams& lb) {
  if (psi0 < 0.0)
    throw std::invalid_argument("lower_bound_Tstar: psi0 must be nonnegative");
  LowerBoundReport rep;
  rep.psi0 = psi0;
  rep.T_star = std::numeric_limits<double>::infinity();
  if (!(lb.A > 0.0 && lb.r > 1.0 && psi0 > 0.0)) return rep;

  const double two_m = 2.0 / lb.m;
  const double lead = lb.A * std::pow(two_m, lb.r);
  const auto denom = [&](double y) {
    double powers = 0.0;
    for (double b : lb.beta) powers += std::pow(y, b);
    return two_m * y + lead * powers;
  };

  const double Y = std::max(10.0 * psi0, 10.0);
  double err = 0.0;
  const double finite_part = integrate_adaptive(
      [&](double y) { return 1.0 / denom(y); }, psi0, Y, 1e-13, err);

  // Tail: u = y^(1-r)/(r-1) maps [Y, inf) onto (0, U]; the integrand
  // y^r / denom(y) is evaluated through s = 1/y so y -> inf costs no
  // overflow, and it extends continuously to u = 0.
  const double r = lb.r;
  const double U = std::pow(Y, 1.0 - r) / (r - 1.0);
  const auto tail_integrand = [&](double u) {
    const double s = std::pow((r - 1.0) * u, 1.0 / (r - 1.0));
    double powers = 0.0;
    for (double b : lb.beta) powers += std::pow(s, r - b);
    return 1.0 / (two_m * std::pow(s, r - 1.0) + lead * powers);
  };
  const double tail = integrate_adaptive(tail_integrand, 0.0, U, 1e-13, err);

  rep.T_star = finite_part + tail;
  rep.finite = std::isfinite(rep.T_star);
  rep.quadrature_error = err;
  return rep;
}

double psi_ode_residual(const TimeSeries& series, const LowerBoundParams& lb) {
  const auto& s = series.samples;
  if (s.size() < 3) return 0.0;
  const double two_m = 2.0 / lb.m;
  const double lead = lb.A * std::pow(two_m, lb.r);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double dpsi =
        deriv3(s[i - 1].t, s[i].t, s[i + 1].t, s[i - 1].source_integral,
               s[i].source_integral, s[i + 1].source_integral);
    double powers = 0.0;
    for (double b : lb.beta) powers += std::pow(s[i].source_integral, b);
    const double bound = two_m * s[i].source_integral + lead * powers;
    worst = std::max(worst, (dpsi - bound) / std::max(std::abs(bound), 1.0));
  }
  return worst;
}

double coercivity_margin(const TimeSeries& series, const LowerBoundParams& lb) {
  double worst = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const Sample& m : series.samples) {
    if (!(m.energy <= 0.0)) continue;
    const double quad = lb.m * (m.grad_v + m.grad_combo + m.kinetic);
    const double twopsi = 2.0 * m.source_integral;
    worst = std::max(worst, (quad - twopsi) / std::max(twopsi, 1.0));
    any = true;
  }
  return any ? worst : 0.0;
}

}  // namespace piezobeam
