#include "piezobeam/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace piezobeam {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void RunReport::add_check(const std::string& name, bool pass) {
  checks.emplace_back(name, pass ? "pass" : "FAIL");
}

void write_csv(std::ostream& os, const TimeSeries& series, const CertificateSeries* cs,
               double sigma, int stride) {
  os << "t,E,diss_residual,linf_v,linf_p,l2_v,l2_p,F,Fprime,G,psi\n";
  const auto& s = series.samples;
  if (s.empty()) return;
  CertificateSeries conventional;
  if (cs == nullptr) {
    CertificateParams conv;
    conv.sigma = sigma;
    conv.b = 0.0;
    conv.t0 = 0.0;
    conv.T_horizon = s.back().t;
    conventional = F_of_t(series, conv);
    cs = &conventional;
  }
  if (stride < 1) stride = 1;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(stride) != 0 && i != n - 1) continue;
    const Sample& m = s[i];
    // Residual of dE/dt = dissipation at this sample; undefined at the ends.
    double resid = 0.0;
    if (i > 0 && i + 1 < n)
      resid = deriv3(s[i - 1].t, m.t, s[i + 1].t, s[i - 1].energy, m.energy,
                     s[i + 1].energy) -
              m.dissipation;
    os << format_number(m.t) << ',' << format_number(m.energy) << ','
       << format_number(resid) << ',' << format_number(m.linf_v) << ','
       << format_number(m.linf_p) << ',' << format_number(std::sqrt(m.mass_v)) << ','
       << format_number(std::sqrt(m.mass_p)) << ',' << format_number(cs->F[i]) << ','
       << format_number(cs->Fprime[i]) << ',' << format_number(cs->G[i]) << ','
       << format_number(m.source_integral) << '\n';
  }
}

void write_report(std::ostream& os, const RunReport& rep) {
  os << "run report\n";
  os << "t_final = " << format_number(rep.t_final) << "\n";
  os << "steps_accepted = " << rep.steps_accepted << "\n";
  os << "steps_rejected = " << rep.steps_rejected << "\n";
  if (rep.blowup) {
    os << "blowup: trigger = " << trigger_name(rep.blowup->trigger)
       << ", t_blow = " << format_number(rep.blowup->t_blow)
       << ", final_linf = " << format_number(rep.blowup->final_linf) << "\n";
  } else {
    os << "blowup: none\n";
  }
  if (rep.certificate) {
    const CertificateReport& c = *rep.certificate;
    os << "certificate:\n";
    os << "  epsilon = " << format_number(c.params.epsilon) << "\n";
    os << "  sigma = " << format_number(c.params.sigma) << "\n";
    os << "  k = " << format_number(c.params.k) << "\n";
    os << "  b = " << format_number(c.params.b) << "\n";
    os << "  t0 = " << format_number(c.params.t0) << "\n";
    os << "  T_horizon = " << format_number(c.params.T_horizon) << "\n";
    os << "  F0 = " << format_number(c.F0) << "\n";
    os << "  Fprime0 = " << format_number(c.Fprime0) << "\n";
    os << "  t_m = " << format_number(c.t_m) << "\n";
    os << "  feasible = " << (c.feasible ? "yes" : "no") << "\n";
    os << "  horizon_consistent = " << (c.horizon_consistent ? "yes" : "no") << "\n";
  }
  if (!rep.binding_constraint.empty())
    os << "certificate infeasible: binding constraint = " << rep.binding_constraint
       << "\n";
  if (rep.lower_bound) {
    const LowerBoundReport& lb = *rep.lower_bound;
    os << "lower bound:\n";
    os << "  psi0 = " << format_number(lb.psi0) << "\n";
    os << "  T_star = " << format_number(lb.T_star) << "\n";
    os << "  finite = " << (lb.finite ? "yes" : "no") << "\n";
    os << "  quadrature_error = " << format_number(lb.quadrature_error) << "\n";
  }
  if (!rep.checks.empty()) {
    os << "checks:\n";
    for (const auto& [name, verdict] : rep.checks)
      os << "  " << name << ": " << verdict << "\n";
  }
  if (!rep.timings.empty()) {
    os << "timings:\n";
    for (const auto& [name, sec] : rep.timings)
      os << "  " << name << " = " << format_number(sec) << " s\n";
  }
  if (!rep.config_echo.empty()) {
    os << "config:\n";
    for (const auto& [key, value] : rep.config_echo)
      os << "  " << key << " = " << value << "\n";
  }
}

}  // namespace piezobeam
