#pragma once

#include "piezobeam/grid.hpp"
#include "piezobeam/model.hpp"

#include <optional>
#include <vector>

namespace piezobeam {

struct StateVector {
  Field v, p, vt, pt;

  static StateVector zero(const Grid& g);
};

bool all_finite(const StateVector& s);
double state_linf(const StateVector& s);

StateVector realize(const Grid& g, const InitialData& init);

// Semidiscrete right side; derivatives at the pinned node are forced to zero.
StateVector rhs(const Grid& g, const StateVector& s, const PhysicalParams& ph,
                const SourceModel& src);

StateVector step_rk4(const Grid& g, const StateVector& s, const PhysicalParams& ph,
                     const SourceModel& src, double dt);

// Fastest characteristic speed: sqrt of the largest eigenvalue of the
// principal-part matrix [[alpha, -gamma*beta], [-gamma*beta, beta]].
double max_wave_speed(const PhysicalParams& ph);

// Scalar diagnostics of one state, all via grid quadratures.
struct Sample {
  double t = 0.0;
  double energy = 0.0;           ///< E = (alpha1*|v_x|^2 + beta*|g v_x - p_x|^2 + |vt|^2 + |pt|^2)/2 - psi
  double dissipation = 0.0;      ///< -lambda1*|vt|^2 - lambda2*|pt|^2
  double source_integral = 0.0;  ///< psi = integral of the potential
  double mass_v = 0.0;           ///< |v|^2
  double mass_p = 0.0;           ///< |p|^2
  double grad_v = 0.0;           ///< |v_x|^2 (cell-slope quadrature)
  double grad_combo = 0.0;       ///< |gamma*v_x - p_x|^2 (cell-slope quadrature)
  double kinetic = 0.0;          ///< |vt|^2 + |pt|^2
  double cross = 0.0;            ///< integral of v*vt + p*pt
  double damp_mass = 0.0;        ///< integral of lambda1*v^2 + lambda2*p^2
  double damp_cross = 0.0;       ///< integral of lambda1*v*vt + lambda2*p*pt
  double accel_cross = 0.0;      ///< integral of v*v_tt + p*p_tt, accelerations from rhs
  double linf_v = 0.0;
  double linf_p = 0.0;
};

Sample probe(const Grid& g, double t, const StateVector& s, const PhysicalParams& ph,
             const SourceModel& src);

struct TimeSeries {
  Grid grid;
  std::vector<Sample> samples;
};

enum class BlowupTrigger { ThresholdExceeded, StepUnderflow, NonFinite };

const char* trigger_name(BlowupTrigger t);

struct BlowupEvent {
  double t_blow = 0.0;
  BlowupTrigger trigger = BlowupTrigger::ThresholdExceeded;
  double final_linf = 0.0;
};

struct SimConfig {
  double dt0 = 1e-3;              ///< initial step candidate
  double cfl = 0.5;               ///< dt <= cfl*dx/max_wave_speed
  double t_end = 1.0;
  double blowup_threshold = 1e6;  ///< linf level declaring blow-up
  double dt_min = 1e-12;          ///< declare blow-up instead of stepping below this
  int sample_stride = 1;          ///< accepted steps between diagnostic samples
};

Validation validate_sim(const SimConfig& c);

struct RunResult {
  TimeSeries series;
  std::optional<BlowupEvent> blowup;
  StateVector state;  ///< last accepted state
  double t = 0.0;     ///< time of last accepted state
  long accepted = 0;
  long rejected = 0;
};

// Method-of-lines run with classical RK4. The step is capped by the CFL
// bound; a step is rejected and halved when it produces non-finite values or
// more than 10% relative linf growth. Blow-up is declared on threshold
// crossing, on dt underflow, and on non-finite values at the minimum step.
RunResult run(const Grid& g, StateVector initial, const PhysicalParams& ph,
              const SourceModel& src, const SimConfig& cfg);

}  // namespace piezobeam
