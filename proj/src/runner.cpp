#include "piezobeam/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "piezobeam/verification.hpp"

namespace piezobeam {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fill_run_summary(RunReport& rep, const FullConfig& cfg, const RunResult& run) {
  rep.config_echo = cfg.echo;
  rep.t_final = run.t;
  rep.steps_accepted = run.accepted;
  rep.steps_rejected = run.rejected;
  rep.blowup = run.blowup;
}

// Sanity checks every stepping pipeline reports: sampled scalars stay finite,
// and the energy never rises by more than the step controller's conservation
// drift (1e-5 of the local scale, same allowance as the certificate flags).
void add_series_checks(RunReport& rep, const TimeSeries& series) {
  bool finite = true;
  bool nonincreasing = true;
  const auto& s = series.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Sample& m = s[i];
    if (!std::isfinite(m.energy) || !std::isfinite(m.mass_v) ||
        !std::isfinite(m.mass_p) || !std::isfinite(m.kinetic) ||
        !std::isfinite(m.source_integral))
      finite = false;
    if (i > 0) {
      const double scale = std::max(
          {1.0, std::abs(s[i - 1].energy), 2.0 * s[i - 1].source_integral});
      if (m.energy - s[i - 1].energy > 1e-5 * scale) nonincreasing = false;
    }
  }
  rep.add_check("samples_finite", finite);
  rep.add_check("energy_nonincreasing", nonincreasing);
}

double l2_error_v(const Grid& g, const StateVector& a, const StateVector& b) {
  return std::sqrt(l2_norm_sq(g, a.v - b.v));
}

// Coarse-node restriction of a field computed on a grid refined 2^gap times.
Field restrict_field(const Grid& coarse, const Field& fine, int gap) {
  const int factor = 1 << gap;
  Field out(coarse.nodes());
  for (int j = 0; j < coarse.nodes(); ++j) out(j) = fine(j * factor);
  return out;
}

}  // namespace

SimulateOutcome run_simulate(const FullConfig& cfg) {
  SimulateOutcome out;
  const auto t0 = Clock::now();
  const StateVector init = realize(cfg.grid, cfg.initial);
  out.run = run(cfg.grid, init, cfg.physics, cfg.source, cfg.time);
  fill_run_summary(out.report, cfg, out.run);
  add_series_checks(out.report, out.run.series);
  out.report.timings.emplace_back("simulate", seconds_since(t0));
  return out;
}

CertifyOutcome run_certify(const FullConfig& cfg) {
  CertifyOutcome out;
  SimulateOutcome sim = run_simulate(cfg);
  out.run = std::move(sim.run);
  out.report = std::move(sim.report);

  const auto t0 = Clock::now();
  const CertificateInputs in = CertificateInputs::from_series(out.run.series, cfg.source);
  const CertificateChoice choice = select_parameters(in);
  if (!choice.feasible()) {
    out.report.binding_constraint = choice.binding_constraint;
    out.report.add_check("certificate_feasible", false);
    out.report.timings.emplace_back("certify", seconds_since(t0));
    return out;
  }
  const CertificateParams& cp = *choice.params;
  out.certificate = cp;
  out.cseries = F_of_t(out.run.series, cp);
  const CertificateReport cr = upper_bound_tm(out.run.series, cp);
  out.report.certificate = cr;
  out.report.add_check("certificate_feasible", true);
  out.report.add_check("horizon_consistent", cr.horizon_consistent);

  const ConcavityFlags flags =
      check_inequalities(out.run.series, out.cseries, cfg.physics, cfg.source, cp);
  out.report.add_check("accel_bound", flags.accel_bound_ok);
  out.report.add_check("cross_bound", flags.cross_bound_ok);
  out.report.add_check("gap_nonnegative", flags.gap_nonneg_ok);
  out.report.add_check("g_concave", flags.g_concave_ok);
  if (out.run.blowup)
    out.report.add_check("t_blow_le_t_m", out.run.blowup->t_blow <= cr.t_m);
  out.report.timings.emplace_back("certify", seconds_since(t0));
  return out;
}

LowerBoundOutcome run_lowerbound(const FullConfig& cfg, bool with_simulation) {
  LowerBoundOutcome out;
  if (with_simulation) {
    SimulateOutcome sim = run_simulate(cfg);
    out.report = std::move(sim.report);
    out.run = std::move(sim.run);
  } else {
    out.report.config_echo = cfg.echo;
  }

  const auto t0 = Clock::now();
  const LowerBoundParams lb =
      LowerBoundParams::from_model(cfg.physics, cfg.source, cfg.grid);
  const StateVector init = realize(cfg.grid, cfg.initial);
  const double psi0 = psi(cfg.grid, init, cfg.source);
  out.bound = lower_bound_Tstar(psi0, lb);
  out.report.lower_bound = out.bound;
  if (out.bound.finite)
    out.report.add_check("quadrature_converged", out.bound.quadrature_error <= 1e-8);
  if (out.run) {
    const TimeSeries& series = out.run->series;
    out.report.add_check("coercivity", coercivity_margin(series, lb) <= 1e-6);
    out.report.add_check("psi_ode_bound", psi_ode_residual(series, lb) <= 1e-6);
    if (out.run->blowup && out.bound.finite)
      out.report.add_check("t_blow_ge_T_star",
                           out.run->blowup->t_blow >= out.bound.T_star);
  }
  out.report.timings.emplace_back("lowerbound", seconds_since(t0));
  return out;
}

ConvergenceOutcome run_convergence(const FullConfig& cfg, int levels) {
  if (levels < 2)
    throw std::invalid_argument("convergence: needs at least 2 levels");
  ConvergenceOutcome out;
  out.report.config_echo = cfg.echo;
  const auto t0 = Clock::now();

  const bool exact_available =
      cfg.source.kind == SourceKind::Null && cfg.physics.gamma == 0.0 &&
      cfg.physics.lambda1 == 0.0 && cfg.physics.lambda2 == 0.0 &&
      cfg.initial.v0.kind == FieldSpec::Kind::SineMode &&
      cfg.initial.v1.kind == FieldSpec::Kind::Zero &&
      cfg.initial.p0.kind == FieldSpec::Kind::Zero &&
      cfg.initial.p1.kind == FieldSpec::Kind::Zero;

  std::vector<Grid> grids;
  std::vector<RunResult> runs;
  bool all_blowup = true;
  bool none_blowup = true;
  for (int l = 0; l < levels; ++l) {
    const Grid g = Grid::make(cfg.grid.length, cfg.grid.cells << l);
    const StateVector init = realize(g, cfg.initial);
    runs.push_back(run(g, init, cfg.physics, cfg.source, cfg.time));
    grids.push_back(g);
    if (runs.back().blowup)
      none_blowup = false;
    else
      all_blowup = false;
  }

  std::ostringstream table;
  if (all_blowup) {
    // Nonlinear blow-up study: the observable is t_blow.
    table << "level  N  t_blow\n";
    std::vector<double> tb;
    for (int l = 0; l < levels; ++l) {
      tb.push_back(runs[l].blowup->t_blow);
      table << l << "  " << grids[l].cells << "  " << format_number(tb.back()) << "\n";
    }
    const double gap =
        std::abs(tb[levels - 1] - tb[levels - 2]) / std::abs(tb[levels - 1]);
    table << "relative gap (last two levels) = " << format_number(gap) << "\n";
    out.report.add_check("t_blow_self_consistent", gap < 0.05);
    if (levels >= 3) {
      const auto rich =
          richardson_three_level(tb[levels - 3], tb[levels - 2], tb[levels - 1]);
      if (!rich.degenerate) {
        table << "order = " << format_number(rich.order)
              << ", extrapolated t_blow = " << format_number(rich.extrapolated) << "\n";
      } else {
        table << "order = degenerate (differences at noise level)\n";
      }
    }
  } else if (none_blowup && exact_available) {
    // Error against the closed-form standing wave at t_end.
    table << "level  N  l2_error  order\n";
    std::vector<double> errs;
    for (int l = 0; l < levels; ++l) {
      const StateVector ref =
          analytic_mode(grids[l], cfg.physics, cfg.source, cfg.initial.v0.mode,
                        cfg.initial.v0.amplitude, runs[l].t);
      errs.push_back(l2_error_v(grids[l], runs[l].state, ref));
      table << l << "  " << grids[l].cells << "  " << format_number(errs.back());
      if (l > 0) {
        const auto rich = richardson_order_from_exact(errs[l - 1], errs[l]);
        table << "  " << (rich.degenerate ? "degenerate" : format_number(rich.order));
        if (l == levels - 1 && !rich.degenerate)
          out.report.add_check("spatial_order_near_2",
                               rich.order > 1.5 && rich.order < 2.5);
      }
      table << "\n";
    }
  } else if (none_blowup) {
    // Self-convergence: compare each level against the next on shared nodes.
    table << "levels  N_coarse  N_fine  l2_gap  order\n";
    std::vector<double> gaps;
    for (int l = 0; l + 1 < levels; ++l) {
      const Field fine_on_coarse = restrict_field(grids[l], runs[l + 1].state.v, 1);
      gaps.push_back(std::sqrt(l2_norm_sq(grids[l], runs[l].state.v - fine_on_coarse)));
      table << l << "/" << l + 1 << "  " << grids[l].cells << "  " << grids[l + 1].cells
            << "  " << format_number(gaps.back());
      if (l > 0) {
        const auto rich = richardson_order_from_exact(gaps[l - 1], gaps[l]);
        table << "  " << (rich.degenerate ? "degenerate" : format_number(rich.order));
        if (l == levels - 2 && !rich.degenerate)
          out.report.add_check("spatial_order_near_2",
                               rich.order > 1.5 && rich.order < 2.5);
      }
      table << "\n";
    }
  } else {
    table << "levels disagree on blow-up; no convergence order is defined\n";
    out.report.add_check("levels_consistent", false);
  }

  out.table = table.str();
  out.report.timings.emplace_back("convergence", seconds_since(t0));
  return out;
}

namespace {

struct SweepPoint {
  int index = 0;
  double a = 0.0, eta = 0.0, lambda1 = 0.0, lambda2 = 0.0;
};

struct SweepResult {
  RunReport report;
  std::optional<TimeSeries> series;
  std::optional<CertificateSeries> cseries;
  double sigma = 1.0;
  std::string failure;
  std::optional<double> t_blow, t_m, T_star;
};

SweepResult evaluate_point(const FullConfig& base, const SweepPoint& pt) {
  SweepResult res;
  try {
    FullConfig cfg = base;
    cfg.physics.lambda1 = pt.lambda1;
    cfg.physics.lambda2 = pt.lambda2;
    if (cfg.source.kind == SourceKind::PowerDifference)
      cfg.source = SourceModel::power_difference(pt.a, pt.eta);
    const Validation check = validate_params(cfg.physics, cfg.source);
    if (!check.ok()) {
      res.failure = check.joined();
      return res;
    }
    for (auto& [key, value] : cfg.echo) {
      if (key == "source.a") value = format_number(cfg.source.a);
      else if (key == "source.eta") value = format_number(cfg.source.eta);
      else if (key == "physics.lambda1") value = format_number(cfg.physics.lambda1);
      else if (key == "physics.lambda2") value = format_number(cfg.physics.lambda2);
    }

    CertifyOutcome cert = run_certify(cfg);
    const LowerBoundParams lb =
        LowerBoundParams::from_model(cfg.physics, cfg.source, cfg.grid);
    const double psi0 = psi(cfg.grid, realize(cfg.grid, cfg.initial), cfg.source);
    const LowerBoundReport bound = lower_bound_Tstar(psi0, lb);
    cert.report.lower_bound = bound;

    if (cert.run.blowup) res.t_blow = cert.run.blowup->t_blow;
    if (cert.report.certificate && cert.report.certificate->feasible)
      res.t_m = cert.report.certificate->t_m;
    res.T_star = bound.T_star;
    if (cert.certificate) res.sigma = cert.certificate->sigma;
    res.series = std::move(cert.run.series);
    if (!cert.cseries.t.empty()) res.cseries = std::move(cert.cseries);
    res.report = std::move(cert.report);
  } catch (const std::exception& e) {
    res.failure = e.what();
  }
  return res;
}

std::string point_dir_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "point_%03d", index);
  return buf;
}

std::string opt_num(const std::optional<double>& x) {
  return x ? format_number(*x) : "-";
}

}  // namespace

int run_sweep(const FullConfig& base, const SweepGrid& grid, const std::string& outdir) {
  if (base.source.kind == SourceKind::Null && (!grid.a.empty() || !grid.eta.empty()))
    throw ConfigError(
        "sweep: sweeping a or eta needs a power_difference source in the base config");

  const std::vector<double> as =
      grid.a.empty() ? std::vector<double>{base.source.a} : grid.a;
  const std::vector<double> etas =
      grid.eta.empty() ? std::vector<double>{base.source.eta} : grid.eta;
  const std::vector<double> l1s =
      grid.lambda1.empty() ? std::vector<double>{base.physics.lambda1} : grid.lambda1;
  const std::vector<double> l2s =
      grid.lambda2.empty() ? std::vector<double>{base.physics.lambda2} : grid.lambda2;

  std::vector<SweepPoint> points;
  for (double a : as)
    for (double eta : etas)
      for (double l1 : l1s)
        for (double l2 : l2s)
          points.push_back({static_cast<int>(points.size()), a, eta, l1, l2});

  std::vector<std::future<SweepResult>> futures;
  futures.reserve(points.size());
  for (const SweepPoint& pt : points)
    futures.push_back(
        std::async(std::launch::async, [&base, pt] { return evaluate_point(base, pt); }));

  std::filesystem::create_directories(outdir);
  std::ofstream summary(std::filesystem::path(outdir) / "summary.txt", std::ios::binary);
  summary << "point  a  eta  lambda1  lambda2  outcome  t_blow  t_m  T_star\n";
  int failures = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    SweepResult res = futures[i].get();
    const SweepPoint& pt = points[i];
    const std::string name = point_dir_name(pt.index);
    std::string outcome;
    if (!res.failure.empty()) {
      ++failures;
      outcome = "error: " + res.failure;
    } else {
      outcome = res.t_blow ? "blowup" : "completed";
      write_outputs((std::filesystem::path(outdir) / name).string(), res.report,
                    res.series ? &*res.series : nullptr,
                    res.cseries ? &*res.cseries : nullptr, res.sigma,
                    base.output.stride);
    }
    summary << name << "  " << format_number(pt.a) << "  " << format_number(pt.eta)
            << "  " << format_number(pt.lambda1) << "  " << format_number(pt.lambda2)
            << "  " << outcome << "  " << opt_num(res.t_blow) << "  "
            << opt_num(res.t_m) << "  " << opt_num(res.T_star) << "\n";
  }
  return failures;
}

void write_outputs(const std::string& dir, const RunReport& report,
                   const TimeSeries* series, const CertificateSeries* cs, double sigma,
                   int stride) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream rep(std::filesystem::path(dir) / "report.txt", std::ios::binary);
    if (!rep) throw std::runtime_error("cannot write report.txt under '" + dir + "'");
    write_report(rep, report);
  }
  if (series) {
    std::ofstream csv(std::filesystem::path(dir) / "series.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write series.csv under '" + dir + "'");
    write_csv(csv, *series, cs, sigma, stride);
  }
}

}  // namespace piezobeam
