#pragma once

#include "piezobeam/integrator.hpp"

#include <array>

namespace piezobeam {

// Constants of the scalar growth inequality satisfied by
// psi(t) = integral of the source potential along any trajectory whose
// energy starts nonpositive:
//   psi' <= (2/m)*psi + A*(2/m)^r * sum_i psi^(beta_i).
struct LowerBoundParams {
  double m = 1.0;   ///< min(alpha1, beta, 1)
  double Cp = 1.0;  ///< Poincare constant (2L/pi)^2
  double d = 0.0;   ///< growth envelope constant of the source
  double A = 0.0;   ///< d^2 * max_i Cp^beta_i
  double r = 1.0;   ///< max_i beta_i
  std::array<double, 4> beta{1.0, 1.0, 1.0, 1.0};

  static LowerBoundParams from_model(const PhysicalParams& ph, const SourceModel& src,
                                     const Grid& g);
};

// psi = integral of the source potential over the grid.
double psi(const Grid& g, const StateVector& s, const SourceModel& src);

struct LowerBoundReport {
  double psi0 = 0.0;
  double T_star = 0.0;  ///< +inf when the ODE cannot reach infinity in finite time
  bool finite = false;
  double quadrature_error = 0.0;  ///< accumulated adaptive error estimate
};

// T_star = integral from psi0 to infinity of dy / ((2/m)y + A(2/m)^r sum y^beta_i):
// no solution of the growth inequality reaches infinity before T_star, so
// T_star is a lower bound on any blow-up time. Finite iff r > 1, A > 0 and
// psi0 > 0. Finite part on [psi0, Y], Y = max(10*psi0, 10), by adaptive
// Simpson; the tail is mapped onto a finite interval by u = y^(1-r)/(r-1)
// and integrated the same way.
LowerBoundReport lower_bound_Tstar(double psi0, const LowerBoundParams& lb);

// Max over interior samples of psi' - ((2/m)psi + A(2/m)^r sum psi^beta_i),
// normalized by max(|bound|, 1); psi' by three-point differences. Nonpositive
// when the growth inequality holds along the sampled run.
double psi_ode_residual(const TimeSeries& series, const LowerBoundParams& lb);

// Max over samples with E <= 0 of
//   m*(grad_v + grad_combo + kinetic) - 2*psi, normalized by max(2*psi, 1):
// nonpositive when the coercivity bound tying the quadratic part to the
// potential holds along the run.
double coercivity_margin(const TimeSeries& series, const LowerBoundParams& lb);

}  // namespace piezobeam
