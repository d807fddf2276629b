#pragma once

#include "piezobeam/report.hpp"

#include <optional>
#include <string>

namespace piezobeam {

// Shared pipelines behind the CLI subcommands; each returns the artifacts it
// computed plus a filled RunReport, leaving file layout to the caller.

struct SimulateOutcome {
  RunResult run;
  RunReport report;
};

SimulateOutcome run_simulate(const FullConfig& cfg);

struct CertifyOutcome {
  RunResult run;
  RunReport report;
  std::optional<CertificateParams> certificate;
  CertificateSeries cseries;  ///< empty when infeasible
};

CertifyOutcome run_certify(const FullConfig& cfg);

struct LowerBoundOutcome {
  RunReport report;
  LowerBoundReport bound;
  std::optional<RunResult> run;  ///< present with with_simulation
};

LowerBoundOutcome run_lowerbound(const FullConfig& cfg, bool with_simulation);

struct ConvergenceOutcome {
  RunReport report;
  std::string table;  ///< human-readable level table
};

// Self-convergence study (or exact-reference study when the configured
// problem is a single undamped, uncoupled sine mode with null source) over
// `levels` grid refinements starting from the configured N.
ConvergenceOutcome run_convergence(const FullConfig& cfg, int levels);

// Cartesian sweep over the grid lists; each point writes
// <outdir>/point_XXX/{series.csv,report.txt}, plus a summary table.
// Points are evaluated concurrently; outputs are assembled in index order.
int run_sweep(const FullConfig& base, const SweepGrid& grid, const std::string& outdir);

// Writes series.csv and report.txt under dir (created if needed).
void write_outputs(const std::string& dir, const RunReport& report, const TimeSeries* series,
                   const CertificateSeries* cs, double sigma, int stride);

}  // namespace piezobeam
