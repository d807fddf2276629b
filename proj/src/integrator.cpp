#include "piezobeam/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "source_terms.hpp"

namespace piezobeam {

StateVector StateVector::zero(const Grid& g) {
  StateVector s;
  s.v = Field::Zero(g.nodes());
  s.p = Field::Zero(g.nodes());
  s.vt = Field::Zero(g.nodes());
  s.pt = Field::Zero(g.nodes());
  return s;
}

bool all_finite(const StateVector& s) {
  return s.v.allFinite() && s.p.allFinite() && s.vt.allFinite() && s.pt.allFinite();
}

double state_linf(const StateVector& s) {
  return std::max(std::max(linf(s.v), linf(s.p)), std::max(linf(s.vt), linf(s.pt)));
}

StateVector realize(const Grid& g, const InitialData& init) {
  const Validation check = validate_initial(g, init);
  if (!check.ok()) throw std::invalid_argument("initial data: " + check.joined());
  StateVector s;
  s.v = init.v0.realize(g);
  s.vt = init.v1.realize(g);
  s.p = init.p0.realize(g);
  s.pt = init.p1.realize(g);
  return s;
}

StateVector rhs(const Grid& g, const StateVector& s, const PhysicalParams& ph,
                const SourceModel& src) {
  StateVector d;
  d.v = s.vt;
  d.p = s.pt;
  const Field lap_v = dxx(g, s.v);
  const Field lap_p = dxx(g, s.p);
  const double gb = ph.gamma * ph.beta;
  d.vt = ph.alpha * lap_v - gb * lap_p - ph.lambda1 * s.vt;
  d.pt = ph.beta * lap_p - gb * lap_v - ph.lambda2 * s.pt;
  if (src.kind != SourceKind::Null) {
    const detail::SourceFields f = detail::source_fields(src, s.v, s.p);
    d.vt += f.f1;
    d.pt += f.f2;
  }
  d.v(0) = 0.0;
  d.p(0) = 0.0;
  d.vt(0) = 0.0;
  d.pt(0) = 0.0;
  return d;
}

namespace {

StateVector axpy(const StateVector& s, double c, const StateVector& d) {
  StateVector out;
  out.v = s.v + c * d.v;
  out.p = s.p + c * d.p;
  out.vt = s.vt + c * d.vt;
  out.pt = s.pt + c * d.pt;
  return out;
}

}  // namespace

StateVector step_rk4(const Grid& g, const StateVector& s, const PhysicalParams& ph,
                     const SourceModel& src, double dt) {
  const StateVector k1 = rhs(g, s, ph, src);
  const StateVector k2 = rhs(g, axpy(s, 0.5 * dt, k1), ph, src);
  const StateVector k3 = rhs(g, axpy(s, 0.5 * dt, k2), ph, src);
  const StateVector k4 = rhs(g, axpy(s, dt, k3), ph, src);
  StateVector out;
  const double w = dt / 6.0;
  out.v = s.v + w * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  out.p = s.p + w * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  out.vt = s.vt + w * (k1.vt + 2.0 * k2.vt + 2.0 * k3.vt + k4.vt);
  out.pt = s.pt + w * (k1.pt + 2.0 * k2.pt + 2.0 * k3.pt + k4.pt);
  return out;
}

double max_wave_speed(const PhysicalParams& ph) {
  const double half_sum = 0.5 * (ph.alpha + ph.beta);
  const double half_diff = 0.5 * (ph.alpha - ph.beta);
  const double off = ph.gamma * ph.beta;
  const double lam = half_sum + std::sqrt(half_diff * half_diff + off * off);
  return std::sqrt(std::max(lam, 0.0));
}

Sample probe(const Grid& g, double t, const StateVector& s, const PhysicalParams& ph,
             const SourceModel& src) {
  Sample m;
  m.t = t;
  m.mass_v = l2_norm_sq(g, s.v);
  m.mass_p = l2_norm_sq(g, s.p);
  m.grad_v = grad_norm_sq(g, s.v);
  m.grad_combo = grad_norm_sq(g, ph.gamma * s.v - s.p);
  m.kinetic = l2_norm_sq(g, s.vt) + l2_norm_sq(g, s.pt);
  m.cross = inner(g, s.v, s.vt) + inner(g, s.p, s.pt);
  m.damp_mass = ph.lambda1 * m.mass_v + ph.lambda2 * m.mass_p;
  m.damp_cross = ph.lambda1 * inner(g, s.v, s.vt) + ph.lambda2 * inner(g, s.p, s.pt);
  m.dissipation = -ph.lambda1 * l2_norm_sq(g, s.vt) - ph.lambda2 * l2_norm_sq(g, s.pt);
  const detail::SourceFields f = detail::source_fields(src, s.v, s.p);
  m.source_integral = integrate(g, f.potential);
  m.energy = 0.5 * (ph.alpha1() * m.grad_v + ph.beta * m.grad_combo + m.kinetic) -
             m.source_integral;
  const StateVector d = rhs(g, s, ph, src);
  m.accel_cross = inner(g, s.v, d.vt) + inner(g, s.p, d.pt);
  m.linf_v = linf(s.v);
  m.linf_p = linf(s.p);
  return m;
}

const char* trigger_name(BlowupTrigger t) {
  switch (t) {
    case BlowupTrigger::ThresholdExceeded:
      return "threshold_exceeded";
    case BlowupTrigger::StepUnderflow:
      return "step_underflow";
    case BlowupTrigger::NonFinite:
      return "non_finite";
  }
  return "?";
}

Validation validate_sim(const SimConfig& c) {
  Validation v;
  auto bad = [&](const char* msg) { v.violations.push_back(msg); };
  if (!(std::isfinite(c.dt0) && c.dt0 > 0.0)) bad("dt0 must be positive");
  if (!(std::isfinite(c.cfl) && c.cfl > 0.0 && c.cfl <= 1.0))
    bad("cfl must lie in (0, 1]");
  if (!(std::isfinite(c.t_end) && c.t_end > 0.0)) bad("t_end must be positive");
  if (!(std::isfinite(c.blowup_threshold) && c.blowup_threshold > 0.0))
    bad("blowup_threshold must be positive");
  if (!(std::isfinite(c.dt_min) && c.dt_min > 0.0)) bad("dt_min must be positive");
  if (c.dt_min >= c.dt0 && std::isfinite(c.dt_min) && std::isfinite(c.dt0))
    bad("dt_min must be smaller than dt0");
  if (c.sample_stride < 1) bad("sample_stride must be at least 1");
  return v;
}

RunResult run(const Grid& g, StateVector initial, const PhysicalParams& ph,
              const SourceModel& src, const SimConfig& cfg) {
  {
    Validation check = validate_sim(cfg);
    const Validation params = validate_params(ph, src);
    check.violations.insert(check.violations.end(), params.violations.begin(),
                            params.violations.end());
    if (!check.ok()) throw std::invalid_argument("run: " + check.joined());
  }
  detail::require_nodes(g, initial.v.size(), "run");
  detail::require_nodes(g, initial.p.size(), "run");
  detail::require_nodes(g, initial.vt.size(), "run");
  detail::require_nodes(g, initial.pt.size(), "run");
  if (!all_finite(initial)) throw std::invalid_argument("run: non-finite initial state");

  RunResult r;
  r.series.grid = g;
  r.state = std::move(initial);
  r.t = 0.0;

  const double dt_cap = cfg.cfl * g.dx / max_wave_speed(ph);
  double dt_cand = std::min(cfg.dt0, dt_cap);
  double hist_max = state_linf(r.state);

  r.series.samples.push_back(probe(g, 0.0, r.state, ph, src));
  int since_sample = 0;
  auto sample_now = [&]() {
    if (r.series.samples.back().t != r.t)
      r.series.samples.push_back(probe(g, r.t, r.state, ph, src));
    since_sample = 0;
  };

  while (r.t < cfg.t_end) {
    const bool final_step = (cfg.t_end - r.t) <= dt_cand;
    const double dt = final_step ? (cfg.t_end - r.t) : dt_cand;

    const StateVector trial = step_rk4(g, r.state, ph, src, dt);
    const bool finite = all_finite(trial);
    const double grow = finite ? state_linf(trial) : 0.0;
    const bool too_fast = finite && hist_max > 1e-8 && grow > 1.1 * hist_max;

    if (!finite || too_fast) {
      ++r.rejected;
      if (dt <= cfg.dt_min) {
        BlowupEvent ev;
        ev.t_blow = r.t;
        ev.trigger = finite ? BlowupTrigger::StepUnderflow : BlowupTrigger::NonFinite;
        ev.final_linf = state_linf(r.state);
        r.blowup = ev;
        sample_now();
        break;
      }
      dt_cand = 0.5 * dt;
      continue;
    }

    r.state = trial;
    r.t = final_step ? cfg.t_end : r.t + dt;
    ++r.accepted;
    hist_max = std::max(hist_max, grow);
    dt_cand = std::min(dt * 1.05, dt_cap);

    ++since_sample;
    if (since_sample >= cfg.sample_stride || r.t == cfg.t_end) sample_now();

    if (grow >= cfg.blowup_threshold) {
      BlowupEvent ev;
      ev.t_blow = r.t;
      ev.trigger = BlowupTrigger::ThresholdExceeded;
      ev.final_linf = grow;
      r.blowup = ev;
      sample_now();
      break;
    }
  }
  sample_now();
  return r;
}

}  // namespace piezobeam
