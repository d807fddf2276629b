#include "piezobeam/verification.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace piezobeam {

double discrete_mode_eigenvalue(const Grid& g, double k) {
  return 2.0 * (1.0 - std::cos(k * g.dx)) / (g.dx * g.dx);
}

namespace {

ModalSystem build_modal(const PhysicalParams& ph, const Grid& g, int mode,
                        bool semidiscrete) {
  ModalSystem sys;
  sys.k = mode_wavenumber(g, mode);
  sys.ksq = semidiscrete ? discrete_mode_eigenvalue(g, sys.k) : sys.k * sys.k;
  const double gb = ph.gamma * ph.beta;
  Eigen::Matrix4d& A = sys.generator;
  A(0, 2) = 1.0;
  A(1, 3) = 1.0;
  A(2, 0) = -ph.alpha * sys.ksq;
  A(2, 1) = gb * sys.ksq;
  A(2, 2) = -ph.lambda1;
  A(3, 0) = gb * sys.ksq;
  A(3, 1) = -ph.beta * sys.ksq;
  A(3, 3) = -ph.lambda2;
  return sys;
}

StateVector superpose(const Grid& g, const PhysicalParams& ph, const SourceModel& src,
                      const std::vector<ModalAmplitude>& modes, double t,
                      bool semidiscrete) {
  if (src.kind != SourceKind::Null)
    throw std::invalid_argument(
        "modal_reference: only the linear (null-source) system has a modal solution");
  StateVector out = StateVector::zero(g);
  for (const ModalAmplitude& m : modes) {
    const ModalSystem sys = build_modal(ph, g, m.mode, semidiscrete);
    const Eigen::Vector4d amp = sys.evolve(m.state, t);
    const Field shape = (sys.k * g.coordinates()).sin();
    out.v += amp(0) * shape;
    out.p += amp(1) * shape;
    out.vt += amp(2) * shape;
    out.pt += amp(3) * shape;
  }
  return out;
}

}  // namespace

ModalSystem ModalSystem::continuum(const PhysicalParams& ph, const Grid& g, int mode) {
  return build_modal(ph, g, mode, false);
}

ModalSystem ModalSystem::semidiscrete(const PhysicalParams& ph, const Grid& g,
                                      int mode) {
  return build_modal(ph, g, mode, true);
}

Eigen::Vector4d ModalSystem::evolve(const Eigen::Vector4d& amplitudes, double t) const {
  const Eigen::Matrix4d propagator = (generator * t).exp();
  return propagator * amplitudes;
}

double ModalSystem::energy(const PhysicalParams& ph, const Grid& g,
                           const Eigen::Vector4d& amp) const {
  const double combo = ph.gamma * amp(0) - amp(1);
  return 0.25 * g.length *
         (ph.alpha1() * ksq * amp(0) * amp(0) + ph.beta * ksq * combo * combo +
          amp(2) * amp(2) + amp(3) * amp(3));
}

StateVector analytic_mode(const Grid& g, const PhysicalParams& ph, const SourceModel& src,
                          int mode, double amplitude, double t) {
  if (ph.gamma != 0.0)
    throw std::invalid_argument("analytic_mode: needs gamma = 0 (uncoupled fields)");
  if (ph.lambda1 != 0.0 || ph.lambda2 != 0.0)
    throw std::invalid_argument("analytic_mode: needs zero damping");
  if (src.kind != SourceKind::Null)
    throw std::invalid_argument("analytic_mode: needs the null source");
  const double k = mode_wavenumber(g, mode);
  const double omega = std::sqrt(ph.alpha) * k;
  const Field shape = (k * g.coordinates()).sin();
  StateVector s = StateVector::zero(g);
  s.v = amplitude * std::cos(omega * t) * shape;
  s.vt = -amplitude * omega * std::sin(omega * t) * shape;
  return s;
}

StateVector modal_reference(const Grid& g, const PhysicalParams& ph, const SourceModel& src,
                            const std::vector<ModalAmplitude>& modes, double t) {
  return superpose(g, ph, src, modes, t, false);
}

StateVector modal_reference_semidiscrete(const Grid& g, const PhysicalParams& ph,
                                         const SourceModel& src,
                                         const std::vector<ModalAmplitude>& modes,
                                         double t) {
  return superpose(g, ph, src, modes, t, true);
}

RichardsonResult richardson_order_from_exact(double err_coarse, double err_fine,
                                             double refinement) {
  RichardsonResult r;
  if (!std::isfinite(err_coarse) || !std::isfinite(err_fine) || err_fine <= 0.0 ||
      err_coarse <= err_fine) {
    r.degenerate = true;
    return r;
  }
  r.order = std::log(err_coarse / err_fine) / std::log(refinement);
  return r;
}

RichardsonResult richardson_three_level(double coarse, double medium, double fine,
                                        double refinement) {
  RichardsonResult r;
  const double d1 = coarse - medium;
  const double d2 = medium - fine;
  const double scale =
      std::max({std::abs(coarse), std::abs(medium), std::abs(fine), 1.0});
  if (!std::isfinite(d1) || !std::isfinite(d2) || std::abs(d2) <= 1e-14 * scale) {
    r.degenerate = true;
    return r;
  }
  const double ratio = d1 / d2;
  if (!(ratio > 1.0)) {
    r.degenerate = true;
    return r;
  }
  r.order = std::log(ratio) / std::log(refinement);
  r.extrapolated = fine + (fine - medium) / (ratio - 1.0);
  return r;
}

double richardson_extrapolate(double coarse, double fine, double order,
                              double refinement) {
  const double gain = std::pow(refinement, order) - 1.0;
  return fine + (fine - coarse) / gain;
}

}  // namespace piezobeam
