#pragma once

#include "piezobeam/bounds.hpp"
#include "piezobeam/certificates.hpp"
#include "piezobeam/config.hpp"
#include "piezobeam/integrator.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace piezobeam {

// 17-significant-digit decimal rendering used by every numeric output.
std::string format_number(double x);

struct RunReport {
  std::vector<std::pair<std::string, std::string>> config_echo;
  double t_final = 0.0;
  long steps_accepted = 0;
  long steps_rejected = 0;
  std::optional<BlowupEvent> blowup;
  std::optional<CertificateReport> certificate;
  std::string binding_constraint;  ///< set when no certificate assembles
  std::optional<LowerBoundReport> lower_bound;
  std::vector<std::pair<std::string, std::string>> checks;  ///< every executed check, pass/fail
  std::vector<std::pair<std::string, double>> timings;      ///< wall-clock seconds per phase

  void add_check(const std::string& name, bool pass);
};

// CSV schema (fixed order): t, E, diss_residual, linf_v, linf_p, l2_v, l2_p,
// F, Fprime, G, psi. One row per retained sample, LF line ends, numbers via
// format_number. Without a certificate the F family uses the documented
// convention b = 0, t0 = 0, T = t_end, sigma = 1.
void write_csv(std::ostream& os, const TimeSeries& series, const CertificateSeries* cs,
               double sigma, int stride);

void write_report(std::ostream& os, const RunReport& report);

}  // namespace piezobeam
