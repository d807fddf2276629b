#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "piezobeam/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Coupled piezoelectric beam laboratory: adaptive simulation, blow-up "
      "certificates (upper bound t_m) and lifespan lower bounds (T_star)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::string grid_path;
  bool with_sim = false;
  int levels = 3;

  CLI::App* simulate =
      app.add_subcommand("simulate", "step the system and write the sampled series");
  CLI::App* certify = app.add_subcommand(
      "certify", "simulate, then assemble and verify the blow-up certificate");
  CLI::App* lowerbound =
      app.add_subcommand("lowerbound", "compute the lower bound T_star on blow-up time");
  CLI::App* convergence =
      app.add_subcommand("convergence", "grid-refinement convergence study");
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");

  for (CLI::App* sub : {simulate, certify, lowerbound, convergence, sweep}) {
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", out_override,
                    "output directory (defaults to the config's output.dir)");
  }
  lowerbound->add_flag("--simulate", with_sim,
                       "also run the simulation and check t_blow >= T_star");
  convergence->add_option("--levels", levels, "number of refinement levels (>= 2)");
  sweep->add_option("--grid", grid_path, "sweep grid file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  using namespace piezobeam;
  try {
    const FullConfig cfg = parse_config(config_path);
    const std::string dir = out_override.empty() ? cfg.output.dir : out_override;

    if (simulate->parsed()) {
      SimulateOutcome out = run_simulate(cfg);
      write_outputs(dir, out.report, &out.run.series, nullptr, 1.0, cfg.output.stride);
      if (out.run.blowup)
        std::cout << "blow-up detected: trigger = "
                  << trigger_name(out.run.blowup->trigger)
                  << ", t_blow = " << format_number(out.run.blowup->t_blow) << "\n";
      else
        std::cout << "completed to t = " << format_number(out.run.t) << "\n";
      return 0;
    }

    if (certify->parsed()) {
      CertifyOutcome out = run_certify(cfg);
      const CertificateSeries* cs = out.certificate ? &out.cseries : nullptr;
      const double sigma = out.certificate ? out.certificate->sigma : 1.0;
      write_outputs(dir, out.report, &out.run.series, cs, sigma, cfg.output.stride);
      if (!out.certificate) {
        std::cout << "certificate infeasible: binding constraint = "
                  << out.report.binding_constraint << "\n";
        return 3;
      }
      std::cout << "certificate feasible: t_m = "
                << format_number(out.report.certificate->t_m) << "\n";
      return 0;
    }

    if (lowerbound->parsed()) {
      LowerBoundOutcome out = run_lowerbound(cfg, with_sim);
      write_outputs(dir, out.report, out.run ? &out.run->series : nullptr, nullptr, 1.0,
                    cfg.output.stride);
      std::cout << "T_star = " << format_number(out.bound.T_star) << "\n";
      return 0;
    }

    if (convergence->parsed()) {
      ConvergenceOutcome out = run_convergence(cfg, levels);
      write_outputs(dir, out.report, nullptr, nullptr, 1.0, cfg.output.stride);
      std::ofstream tbl(std::filesystem::path(dir) / "convergence.txt",
                        std::ios::binary);
      tbl << out.table;
      std::cout << out.table;
      return 0;
    }

    const SweepGrid sg = parse_sweep_grid(grid_path);
    const int failed = run_sweep(cfg, sg, dir);
    if (failed > 0)
      std::cout << failed << " sweep point(s) failed; see the summary\n";
    std::cout << "sweep summary written to " << dir << "/summary.txt\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
