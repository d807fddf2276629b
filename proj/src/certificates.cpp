#include "piezobeam/certificates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "source_terms.hpp"

namespace piezobeam {

EnergySample energy(const Grid& g, const StateVector& s, const PhysicalParams& ph,
                    const SourceModel& src, double t) {
  EnergySample e;
  e.t = t;
  const double gv = grad_norm_sq(g, s.v);
  const double gc = grad_norm_sq(g, ph.gamma * s.v - s.p);
  const double kin = l2_norm_sq(g, s.vt) + l2_norm_sq(g, s.pt);
  const detail::SourceFields f = detail::source_fields(src, s.v, s.p);
  e.source_integral = integrate(g, f.potential);
  e.E = 0.5 * (ph.alpha1() * gv + ph.beta * gc + kin) - e.source_integral;
  e.dissipation =
      -ph.lambda1 * l2_norm_sq(g, s.vt) - ph.lambda2 * l2_norm_sq(g, s.pt);
  return e;
}

double deriv3(double tl, double tc, double tr, double fl, double fc, double fr) {
  const double h1 = tc - tl;
  const double h2 = tr - tc;
  return -h2 / (h1 * (h1 + h2)) * fl + (h2 - h1) / (h1 * h2) * fc +
         h1 / (h2 * (h1 + h2)) * fr;
}

double deriv3_second(double tl, double tc, double tr, double fl, double fc,
                     double fr) {
  const double h1 = tc - tl;
  const double h2 = tr - tc;
  return 2.0 * (fl / (h1 * (h1 + h2)) - fc / (h1 * h2) + fr / (h2 * (h1 + h2)));
}

double dissipation_residual(const TimeSeries& series) {
  const auto& s = series.samples;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double dE = deriv3(s[i - 1].t, s[i].t, s[i + 1].t, s[i - 1].energy,
                             s[i].energy, s[i + 1].energy);
    worst = std::max(worst, std::abs(dE - s[i].dissipation));
  }
  return worst;
}

CertificateInputs CertificateInputs::from_series(const TimeSeries& series,
                                                 const SourceModel& src) {
  if (series.samples.empty())
    throw std::invalid_argument("from_series: empty series");
  const Sample& s0 = series.samples.front();
  CertificateInputs in;
  in.eta = src.eta;
  in.E0 = s0.energy;
  in.cross0 = s0.cross;
  in.L0_rate = s0.damp_mass;
  in.mass0 = 0.5 * (s0.mass_v + s0.mass_p);
  return in;
}

double certificate_k(double eta, double lambda_cert, double epsilon, double sigma) {
  const double c = 4.0 * lambda_cert * (1.0 + 1.0 / epsilon);
  return eta - c - c * sigma;
}

double sigma_upper_bound(double eta, double epsilon) {
  return (eta - 2.0 * epsilon) / (2.0 * (1.0 + epsilon));
}

CertificateChoice assemble_certificate(const CertificateInputs& in, double epsilon,
                                       double sigma) {
  CertificateChoice out;
  if (!(in.E0 < 0.0)) {
    out.binding_constraint = "negative_energy";
    return out;
  }
  if (!(epsilon > 0.0 && epsilon < 0.5 * in.eta)) {
    out.binding_constraint = "epsilon_range";
    return out;
  }
  if (!(sigma > 0.0 && sigma < sigma_upper_bound(in.eta, epsilon))) {
    out.binding_constraint = "sigma_range";
    return out;
  }
  const double k = certificate_k(in.eta, in.lambda_cert, epsilon, sigma);
  if (!(k > 0.0)) {
    out.binding_constraint = "k_positive";
    return out;
  }
  const double half_c = 2.0 * in.lambda_cert * (1.0 + 1.0 / epsilon);
  const double b_max = k * (-in.E0) / (half_c * (sigma + 1.0));
  const double b = 0.5 * b_max;
  const double t0 = in.cross0 < 0.0 ? std::max(1.0, -2.0 * in.cross0 / b) : 1.0;
  const double fprime0 = in.cross0 + b * t0;
  const double horizon_rate = sigma * fprime0 - 0.5 * in.L0_rate;
  if (!(horizon_rate > 0.0)) {
    out.binding_constraint = "horizon_fixed_point";
    return out;
  }
  const double t_min = (in.mass0 + 0.5 * b * t0 * t0) / horizon_rate;
  CertificateParams cp;
  cp.epsilon = epsilon;
  cp.sigma = sigma;
  cp.lambda_cert = in.lambda_cert;
  cp.k = k;
  cp.b = b;
  cp.t0 = t0;
  cp.T_horizon = t_min * (1.0 + 1e-6);
  out.params = cp;
  return out;
}

CertificateChoice select_parameters(const CertificateInputs& in, int grid_points) {
  CertificateChoice best;
  if (!(in.E0 < 0.0)) {
    best.binding_constraint = "negative_energy";
    return best;
  }
  bool any_k_positive = false;
  const int n = std::max(grid_points, 2);
  for (int i = 1; i <= n; ++i) {
    const double epsilon = 0.5 * in.eta * double(i) / double(n + 1);
    const double sigma_max = sigma_upper_bound(in.eta, epsilon);
    if (!(sigma_max > 0.0)) continue;
    for (int j = 1; j <= n; ++j) {
      const double sigma = sigma_max * double(j) / double(n + 1);
      if (certificate_k(in.eta, in.lambda_cert, epsilon, sigma) > 0.0)
        any_k_positive = true;
      CertificateChoice cand = assemble_certificate(in, epsilon, sigma);
      if (!cand.feasible()) continue;
      if (!best.feasible() || cand.params->k > best.params->k) best = cand;
    }
  }
  if (!best.feasible())
    best.binding_constraint = any_k_positive ? "horizon_fixed_point" : "k_positive";
  return best;
}

CertificateSeries F_of_t(const TimeSeries& series, const CertificateParams& cp) {
  CertificateSeries cs;
  const auto& s = series.samples;
  if (s.empty()) return cs;
  const double L0_rate = s.front().damp_mass;
  const std::size_t n = s.size();
  cs.t.resize(n);
  cs.L.resize(n);
  cs.F.resize(n);
  cs.Fprime.resize(n);
  cs.Fsecond.resize(n);
  cs.G.resize(n);
  cs.Gprime.resize(n);
  double cum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& m = s[i];
    if (i > 0)
      cum += 0.5 * (m.damp_mass + s[i - 1].damp_mass) * (m.t - s[i - 1].t);
    const double shifted = m.t + cp.t0;
    const double L = cum + (cp.T_horizon - m.t) * L0_rate;
    const double F =
        0.5 * (m.mass_v + m.mass_p) + 0.5 * L + 0.5 * cp.b * shifted * shifted;
    if (F < 0.0)
      throw std::domain_error("F_of_t: functional turned negative at t = " +
                              std::to_string(m.t));
    cs.t[i] = m.t;
    cs.L[i] = L;
    cs.F[i] = F;
    cs.Fprime[i] = m.cross + 0.5 * (m.damp_mass - L0_rate) + cp.b * shifted;
    cs.Fsecond[i] = m.accel_cross + m.kinetic + m.damp_cross + cp.b;
    cs.G[i] = std::pow(F, -cp.sigma);
    cs.Gprime[i] = cs.Fprime[i] == 0.0
                       ? 0.0
                       : -cp.sigma * std::pow(F, -cp.sigma - 1.0) * cs.Fprime[i];
  }
  return cs;
}

CertificateReport upper_bound_tm(const CertificateParams& cp, double F0,
                                 double Fprime0) {
  CertificateReport rep;
  rep.params = cp;
  rep.F0 = F0;
  rep.Fprime0 = Fprime0;
  rep.feasible = F0 > 0.0 && Fprime0 > 0.0 && cp.sigma > 0.0;
  rep.t_m = rep.feasible ? F0 / (cp.sigma * Fprime0)
                         : std::numeric_limits<double>::infinity();
  rep.horizon_consistent = rep.feasible && rep.t_m <= cp.T_horizon;
  return rep;
}

CertificateReport upper_bound_tm(const TimeSeries& series, const CertificateParams& cp) {
  if (series.samples.empty())
    throw std::invalid_argument("upper_bound_tm: empty series");
  const Sample& s0 = series.samples.front();
  const double F0 = 0.5 * (s0.mass_v + s0.mass_p) + 0.5 * cp.T_horizon * s0.damp_mass +
                    0.5 * cp.b * cp.t0 * cp.t0;
  const double Fprime0 = s0.cross + cp.b * cp.t0;
  return upper_bound_tm(cp, F0, Fprime0);
}

ConcavityFlags check_inequalities(const TimeSeries& series, const CertificateSeries& cs,
                                  const PhysicalParams& ph, const SourceModel& src,
                                  const CertificateParams& cp) {
  const auto& s = series.samples;
  if (s.empty() || cs.t.size() != s.size())
    throw std::invalid_argument("check_inequalities: series/certificate mismatch");
  const double E0 = s.front().energy;
  if (!(E0 < 0.0))
    throw std::invalid_argument("check_inequalities: requires negative initial energy");

  const double eta = src.eta;
  const double a1 = ph.alpha1();
  ConcavityFlags out;
  double accel_margin = std::numeric_limits<double>::infinity();
  double cross_margin = std::numeric_limits<double>::infinity();
  double gap_margin = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < s.size(); ++i) {
    const Sample& m = s[i];
    const double F = cs.F[i];
    const double Fp = cs.Fprime[i];
    const double Fpp = cs.Fsecond[i];

    const double second_moment = a1 * m.grad_v + ph.beta * m.grad_combo;
    const double accel_rhs = (0.5 * eta - 1.0) * second_moment +
                             (0.5 * eta + 1.0) * m.kinetic + eta * (-E0) + cp.b;
    const double accel_scale = std::max(1.0, std::abs(Fpp) + std::abs(accel_rhs));
    accel_margin = std::min(accel_margin, (Fpp - accel_rhs) / accel_scale);

    const double dissipated = E0 - m.energy;
    const double cross_rhs = 2.0 * F * (m.kinetic + dissipated + cp.b);
    const double cross_scale = std::max(1.0, Fp * Fp + std::abs(cross_rhs));
    cross_margin = std::min(cross_margin, (cross_rhs - Fp * Fp) / cross_scale);

    const double gap = F * Fpp - (cp.sigma + 1.0) * Fp * Fp;
    const double gap_scale =
        std::max(1.0, F * std::abs(Fpp) + (cp.sigma + 1.0) * Fp * Fp);
    gap_margin = std::min(gap_margin, gap / gap_scale);
  }

  // Sampled curvature of G, second differences normalized by the local value
  // so clustered samples near blow-up do not amplify roundoff.
  double curvature = -std::numeric_limits<double>::infinity();
  bool have_curvature = false;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double gl = cs.G[i - 1], gc = cs.G[i], gr = cs.G[i + 1];
    if (!(std::isfinite(gl) && std::isfinite(gc) && std::isfinite(gr))) continue;
    const double h1 = cs.t[i] - cs.t[i - 1];
    const double h2 = cs.t[i + 1] - cs.t[i];
    if (!(h1 > 0.0 && h2 > 0.0)) continue;
    const double c = deriv3_second(cs.t[i - 1], cs.t[i], cs.t[i + 1], gl, gc, gr);
    const double scale = std::max(std::abs(gl) + std::abs(gc) + std::abs(gr), 1e-300);
    curvature = std::max(curvature, c * h1 * h2 / scale);
    have_curvature = true;
  }
  if (!have_curvature) curvature = 0.0;

  out.accel_margin = accel_margin;
  out.cross_margin = cross_margin;
  out.gap_margin = gap_margin;
  out.g_curvature = curvature;
  const double tol = 1e-5;
  out.accel_bound_ok = accel_margin >= -tol;
  out.cross_bound_ok = cross_margin >= -tol;
  out.gap_nonneg_ok = gap_margin >= -tol;
  out.g_concave_ok = curvature <= tol;
  return out;
}

}  // namespace piezobeam
