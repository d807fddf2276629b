#pragma once

#include "piezobeam/integrator.hpp"

#include <Eigen/Dense>

#include <vector>

namespace piezobeam {

// Discrete eigenvalue of -dxx on the sine family: 2(1-cos(k*dx))/dx^2.
double discrete_mode_eigenvalue(const Grid& g, double k);

// One sine mode of the linear (null-source) system. Amplitudes are ordered
// (v, p, vt, pt); the generator is
//   [ 0        0        1        0 ]
//   [ 0        0        0        1 ]
//   [ -alpha*ksq   gamma*beta*ksq  -lambda1   0 ]
//   [ gamma*beta*ksq   -beta*ksq   0   -lambda2 ]
// with ksq = k^2 for the continuum mode or the discrete eigenvalue for the
// semidiscrete one.
struct ModalSystem {
  double k = 0.0;
  double ksq = 0.0;
  Eigen::Matrix4d generator = Eigen::Matrix4d::Zero();

  static ModalSystem continuum(const PhysicalParams& ph, const Grid& g, int mode);
  static ModalSystem semidiscrete(const PhysicalParams& ph, const Grid& g, int mode);

  // Exact-in-time evolution by the dense matrix exponential.
  Eigen::Vector4d evolve(const Eigen::Vector4d& amplitudes, double t) const;

  // Quadratic invariant of the undamped generator, field-normalized:
  // (L/4)*(alpha1*ksq*v^2 + beta*ksq*(gamma*v - p)^2 + vt^2 + pt^2).
  double energy(const PhysicalParams& ph, const Grid& g,
                const Eigen::Vector4d& amplitudes) const;
};

// Closed-form standing wave amplitude*cos(sqrt(alpha)*k*t)*sin(k*x) in v,
// zero p. Valid only for gamma = 0, lambda1 = lambda2 = 0, null source;
// anything else is refused.
StateVector analytic_mode(const Grid& g, const PhysicalParams& ph, const SourceModel& src,
                          int mode, double amplitude, double t);

struct ModalAmplitude {
  int mode = 1;
  Eigen::Vector4d state = Eigen::Vector4d::Zero();  ///< (v, p, vt, pt)
};

// Superposition of exactly evolved continuum modes on the grid. Refused for
// nonlinear sources.
StateVector modal_reference(const Grid& g, const PhysicalParams& ph, const SourceModel& src,
                            const std::vector<ModalAmplitude>& modes, double t);

// Same superposition with the semidiscrete eigenvalues: the exact solution
// of the spatially discretized linear system, isolating time-stepping error.
StateVector modal_reference_semidiscrete(const Grid& g, const PhysicalParams& ph,
                                         const SourceModel& src,
                                         const std::vector<ModalAmplitude>& modes, double t);

struct RichardsonResult {
  double order = 0.0;
  double extrapolated = 0.0;
  bool degenerate = false;  ///< differences too small to estimate an order
};

// Order from errors against a known-exact reference at two resolutions.
RichardsonResult richardson_order_from_exact(double err_coarse, double err_fine,
                                             double refinement = 2.0);

// Order and extrapolated value from an observable at three resolutions
// (coarse, medium, fine), refinement ratio fixed.
RichardsonResult richardson_three_level(double coarse, double medium, double fine,
                                        double refinement = 2.0);

// Extrapolation of a fine-level observable assuming a known order.
double richardson_extrapolate(double coarse, double fine, double order,
                              double refinement = 2.0);

}  // namespace piezobeam
