#pragma once

#include "piezobeam/integrator.hpp"

#include <optional>
#include <string>

namespace piezobeam {

struct EnergySample {
  double t = 0.0;
  double E = 0.0;
  double dissipation = 0.0;
  double source_integral = 0.0;
};

EnergySample energy(const Grid& g, const StateVector& s, const PhysicalParams& ph,
                    const SourceModel& src, double t = 0.0);

// Max over interior samples of |dE/dt - dissipation|, dE/dt by three-point
// differences on the (possibly nonuniform) sample times.
double dissipation_residual(const TimeSeries& series);

// Scalar data the concavity certificate needs from a run's initial state.
struct CertificateInputs {
  double eta = 0.0;          ///< pairing exponent of the source
  double E0 = 0.0;           ///< initial energy (must be negative)
  double cross0 = 0.0;       ///< integral of v0*v1 + p0*p1
  double L0_rate = 0.0;      ///< integral of lambda1*v0^2 + lambda2*p0^2
  double mass0 = 0.0;        ///< (|v0|^2 + |p0|^2)/2
  double lambda_cert = 1.0;  ///< auxiliary constant in the cross-term bound

  static CertificateInputs from_series(const TimeSeries& series, const SourceModel& src);
};

// Certificate of finite-time blow-up built on the auxiliary functional
//   F(t) = (|v|^2 + |p|^2)/2 + L(t)/2 + b*(t + t0)^2/2,
//   L(t) = running integral of (lambda1*|v|^2 + lambda2*|p|^2)
//          + (T_horizon - t)*L0_rate,
// whose negative power G = F^(-sigma) is concave when the parameters below
// are admissible; G then hits zero no later than t_m = F(0)/(sigma*F'(0)).
struct CertificateParams {
  double epsilon = 0.0;
  double sigma = 0.0;
  double lambda_cert = 1.0;
  double k = 0.0;  ///< eta - 4*lambda_cert*(sigma+1)*(1+1/epsilon), must be positive
  double b = 0.0;
  double t0 = 0.0;
  double T_horizon = 0.0;
};

struct CertificateChoice {
  std::optional<CertificateParams> params;
  std::string binding_constraint;  ///< named reason when infeasible
  bool feasible() const { return params.has_value(); }
};

// k written as eta - c - c*sigma with c = 4*lambda_cert*(1+1/epsilon); this
// grouping keeps k exact for rational inputs like sigma = 1/6.
double certificate_k(double eta, double lambda_cert, double epsilon, double sigma);

// Admissible sigma interval for a given epsilon is (0, (eta-2*eps)/(2*(1+eps))).
double sigma_upper_bound(double eta, double epsilon);

// Assembles the full certificate for fixed (epsilon, sigma): requires k > 0,
// sets b to half the admissible maximum -k*E0/(2*(sigma+1)*(1+1/epsilon)),
// t0 = max(1, -2*cross0/b) when cross0 < 0 else 1, and solves the horizon
// fixed point T >= t_m(T), feasible iff sigma*F'(0) > L0_rate/2.
CertificateChoice assemble_certificate(const CertificateInputs& in, double epsilon,
                                       double sigma);

// Deterministic grid search over admissible (epsilon, sigma) maximizing k
// among candidates whose whole certificate assembles.
CertificateChoice select_parameters(const CertificateInputs& in, int grid_points = 64);

// Sampled certificate functionals. F'' is reconstructed from exact sampled
// ingredients (accelerations, kinetic term, damping cross term), not by
// differencing.
struct CertificateSeries {
  std::vector<double> t, L, F, Fprime, Fsecond, G, Gprime;
};

CertificateSeries F_of_t(const TimeSeries& series, const CertificateParams& cp);

struct CertificateReport {
  CertificateParams params;
  double F0 = 0.0;
  double Fprime0 = 0.0;
  double t_m = 0.0;
  bool feasible = false;
  bool horizon_consistent = false;  ///< t_m <= T_horizon
};

CertificateReport upper_bound_tm(const CertificateParams& cp, double F0, double Fprime0);
CertificateReport upper_bound_tm(const TimeSeries& series, const CertificateParams& cp);

// Pointwise verification of the concavity chain along a run with E(0) < 0.
// All margins are worst (most violating) values, normalized by each sample's
// own scale; flags pass when the margin stays above -1e-5. That tolerance
// absorbs the RK4 conservation drift accumulated during a 10%-paced blow-up
// approach (measured near 2e-6 of the local scale on the scalar analogue).
struct ConcavityFlags {
  bool accel_bound_ok = false;  ///< second-moment lower bound on v*v_tt + p*p_tt
  bool cross_bound_ok = false;  ///< upper bound on F'^2
  bool gap_nonneg_ok = false;   ///< F*F'' - (sigma+1)*F'^2 >= 0
  bool g_concave_ok = false;    ///< sampled G has nonpositive curvature
  double accel_margin = 0.0;
  double cross_margin = 0.0;
  double gap_margin = 0.0;
  double g_curvature = 0.0;  ///< largest sampled curvature of G
  bool all_ok() const { return accel_bound_ok && cross_bound_ok && gap_nonneg_ok && g_concave_ok; }
};

ConcavityFlags check_inequalities(const TimeSeries& series, const CertificateSeries& cs,
                                  const PhysicalParams& ph, const SourceModel& src,
                                  const CertificateParams& cp);

// Three-point first and second derivative weights on nonuniform abscissae;
// shared by the sampled-series checks.
double deriv3(double tl, double tc, double tr, double fl, double fc, double fr);
double deriv3_second(double tl, double tc, double tr, double fl, double fc, double fr);

}  // namespace piezobeam
