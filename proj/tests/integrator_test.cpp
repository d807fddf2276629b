#include "piezobeam/integrator.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "piezobeam/verification.hpp"
#include "testutil.hpp"

using namespace piezobeam;
using testutil::make_rng;
using testutil::random_mode_mix;

namespace {

StateVector sine_state(const Grid& g, int mode, double amp) {
  StateVector s = StateVector::zero(g);
  s.v = amp * (mode_wavenumber(g, mode) * g.coordinates()).sin();
  return s;
}

double state_diff_l2(const Grid& g, const StateVector& a, const StateVector& b) {
  return std::sqrt(l2_norm_sq(g, a.v - b.v) + l2_norm_sq(g, a.p - b.p) +
                   l2_norm_sq(g, a.vt - b.vt) + l2_norm_sq(g, a.pt - b.pt));
}

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("zero state is a fixed point") {
  const Grid g = Grid::make(1.0, 32);
  const PhysicalParams ph;
  const SourceModel src = SourceModel::power_difference(1.0, 4.0);
  const StateVector z = StateVector::zero(g);
  const StateVector dz = rhs(g, z, ph, src);
  CHECK(state_linf(dz) == 0.0);
  const StateVector z2 = step_rk4(g, z, ph, src, 0.01);
  CHECK(state_linf(z2) == 0.0);
}

TEST_CASE("rhs reproduces the sine-mode acceleration") {
  const Grid g = Grid::make(1.0, 100);
  PhysicalParams ph;
  ph.alpha = 2.0;
  const SourceModel src = SourceModel::null_source();
  const StateVector s = sine_state(g, 1, 1.0);
  const double k = mode_wavenumber(g, 1);
  const StateVector d = rhs(g, s, ph, src);
  CHECK((d.v == s.vt).all());
  CHECK((d.p == s.pt).all());
  CHECK(linf(d.vt + ph.alpha * k * k * s.v) <= ph.alpha * 1e-4);
  CHECK(linf(d.pt) == 0.0);
}

TEST_CASE("rhs damping term is exact") {
  const Grid g = Grid::make(1.0, 64);
  PhysicalParams ph;
  ph.lambda1 = 0.7;
  const SourceModel src = SourceModel::null_source();
  StateVector s = StateVector::zero(g);
  s.vt = 0.3 * (mode_wavenumber(g, 2) * g.coordinates()).sin();
  const StateVector d = rhs(g, s, ph, src);
  CHECK(linf(d.vt + ph.lambda1 * s.vt) == 0.0);
}

TEST_CASE("max wave speed") {
  PhysicalParams ph;
  CHECK(max_wave_speed(ph) == doctest::Approx(1.0).epsilon(1e-12));
  ph.alpha = 4.0;
  CHECK(max_wave_speed(ph) == doctest::Approx(2.0).epsilon(1e-12));
  ph.alpha = 1.0;
  ph.gamma = 0.5;  // matrix [[1, -0.5], [-0.5, 1]] has top eigenvalue 1.5
  CHECK(max_wave_speed(ph) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
}

TEST_CASE("standing wave returns after one period") {
  const Grid g = Grid::make(1.0, 256);
  const PhysicalParams ph;
  const SourceModel src = SourceModel::null_source();
  const double k = mode_wavenumber(g, 1);
  const double period = 2.0 * M_PI / k;
  const StateVector s0 = sine_state(g, 1, 1.0);
  StateVector s = s0;
  const int steps = 2048;
  const double dt = period / steps;
  for (int i = 0; i < steps; ++i) s = step_rk4(g, s, ph, src, dt);
  CHECK(state_diff_l2(g, s, s0) <= 1e-4);
}

TEST_CASE("fourth-order error decay against the semidiscrete mode") {
  const Grid g = Grid::make(1.0, 128);
  const PhysicalParams ph;
  const SourceModel src = SourceModel::null_source();
  const int mode = 10;
  const double t_end = 0.25;
  const ModalAmplitude amp{mode, Eigen::Vector4d(1.0, 0.0, 0.0, 0.0)};
  const StateVector ref = modal_reference_semidiscrete(g, ph, src, {amp}, t_end);

  double errs[3];
  int steps = 125;
  for (int level = 0; level < 3; ++level, steps *= 2) {
    StateVector s = sine_state(g, mode, 1.0);
    const double dt = t_end / steps;
    for (int i = 0; i < steps; ++i) s = step_rk4(g, s, ph, src, dt);
    errs[level] = state_diff_l2(g, s, ref);
  }
  CHECK(errs[0] / errs[1] >= 12.0);
  CHECK(errs[0] / errs[1] <= 20.0);
  CHECK(errs[1] / errs[2] >= 12.0);
  CHECK(errs[1] / errs[2] <= 20.0);
}

TEST_CASE("probe matches direct quadratures") {
  auto rng = make_rng(71);
  const Grid g = Grid::make(1.0, 48);
  PhysicalParams ph;
  ph.alpha = 1.3;
  ph.beta = 0.8;
  ph.gamma = 0.4;
  ph.lambda1 = 0.2;
  ph.lambda2 = 0.05;
  const SourceModel src = SourceModel::power_difference(0.6, 4.0);
  StateVector s = StateVector::zero(g);
  s.v = random_mode_mix(g, rng);
  s.p = random_mode_mix(g, rng);
  s.vt = random_mode_mix(g, rng);
  s.pt = random_mode_mix(g, rng);

  const Sample smp = probe(g, 0.25, s, ph, src);
  CHECK(smp.t == 0.25);
  CHECK(smp.mass_v == doctest::Approx(l2_norm_sq(g, s.v)).epsilon(1e-14));
  CHECK(smp.mass_p == doctest::Approx(l2_norm_sq(g, s.p)).epsilon(1e-14));
  CHECK(smp.grad_v == doctest::Approx(grad_norm_sq(g, s.v)).epsilon(1e-14));
  CHECK(smp.grad_combo ==
        doctest::Approx(grad_norm_sq(g, ph.gamma * s.v - s.p)).epsilon(1e-14));
  CHECK(smp.kinetic ==
        doctest::Approx(l2_norm_sq(g, s.vt) + l2_norm_sq(g, s.pt)).epsilon(1e-14));
  const double cross = inner(g, s.v, s.vt) + inner(g, s.p, s.pt);
  CHECK(std::abs(smp.cross - cross) <= 1e-13 * (1.0 + std::abs(cross)));
  CHECK(smp.damp_mass ==
        doctest::Approx(ph.lambda1 * l2_norm_sq(g, s.v) +
                        ph.lambda2 * l2_norm_sq(g, s.p)).epsilon(1e-14));
  const double dcross =
      ph.lambda1 * inner(g, s.v, s.vt) + ph.lambda2 * inner(g, s.p, s.pt);
  CHECK(std::abs(smp.damp_cross - dcross) <= 1e-13 * (1.0 + std::abs(dcross)));
  CHECK(smp.dissipation ==
        doctest::Approx(-(ph.lambda1 * l2_norm_sq(g, s.vt) +
                          ph.lambda2 * l2_norm_sq(g, s.pt))).epsilon(1e-14));

  const StateVector acc = rhs(g, s, ph, src);
  const double across = inner(g, s.v, acc.vt) + inner(g, s.p, acc.pt);
  CHECK(std::abs(smp.accel_cross - across) <= 1e-12 * (1.0 + std::abs(across)));
  CHECK(smp.linf_v == linf(s.v));
  CHECK(smp.linf_p == linf(s.p));

  Field pot(g.nodes());
  for (int j = 0; j < g.nodes(); ++j) pot(j) = src(s.v(j), s.p(j)).potential;
  CHECK(smp.source_integral == doctest::Approx(integrate(g, pot)).epsilon(1e-14));

  const double quad = 0.5 * (ph.alpha1() * smp.grad_v + ph.beta * smp.grad_combo +
                             smp.kinetic);
  const double e = quad - smp.source_integral;
  CHECK(std::abs(smp.energy - e) <= 1e-12 * (1.0 + std::abs(e)));
}

TEST_CASE("adaptive run conserves linear energy") {
  const Grid g = Grid::make(1.0, 128);
  const PhysicalParams ph;
  const SourceModel src = SourceModel::null_source();
  SimConfig cfg;
  cfg.t_end = 1.0;
  cfg.cfl = 0.4;
  const RunResult r = run(g, sine_state(g, 5, 1.0), ph, src, cfg);
  CHECK_FALSE(r.blowup.has_value());
  CHECK(r.t == cfg.t_end);
  REQUIRE(r.series.samples.size() > 10);
  const double e0 = r.series.samples.front().energy;
  for (const Sample& s : r.series.samples)
    CHECK(std::abs(s.energy - e0) <= 1e-6 * (1.0 + std::abs(e0)));
}

TEST_CASE("damped run dissipates energy monotonically") {
  const Grid g = Grid::make(1.0, 96);
  PhysicalParams ph;
  ph.gamma = 0.2;
  ph.lambda1 = 0.3;
  ph.lambda2 = 0.3;
  const SourceModel src = SourceModel::null_source();
  StateVector s0 = sine_state(g, 1, 1.0);
  s0.p = 0.5 * (mode_wavenumber(g, 2) * g.coordinates()).sin();
  SimConfig cfg;
  cfg.t_end = 2.0;
  const RunResult r = run(g, s0, ph, src, cfg);
  REQUIRE(r.series.samples.size() > 10);
  const double e0 = r.series.samples.front().energy;
  double prev = e0;
  for (const Sample& s : r.series.samples) {
    CHECK(s.energy <= prev + 1e-12 * (1.0 + std::abs(e0)));
    prev = s.energy;
  }
  CHECK(r.series.samples.back().energy < e0);
}

TEST_CASE("undamped dynamics is time reversible") {
  auto rng = make_rng(73);
  const Grid g = Grid::make(1.0, 64);
  PhysicalParams ph;
  ph.gamma = 0.3;
  const SourceModel src = SourceModel::null_source();
  StateVector s0 = StateVector::zero(g);
  s0.v = random_mode_mix(g, rng, 3);
  s0.p = random_mode_mix(g, rng, 3);
  SimConfig cfg;
  cfg.t_end = 0.25;
  RunResult fwd = run(g, s0, ph, src, cfg);
  StateVector back = fwd.state;
  back.vt = -back.vt;
  back.pt = -back.pt;
  RunResult rev = run(g, back, ph, src, cfg);
  StateVector out = rev.state;
  out.vt = -out.vt;
  out.pt = -out.pt;
  CHECK(state_diff_l2(g, out, s0) <= 3e-5);
}

TEST_CASE("pinned node stays exactly zero through a nonlinear run") {
  const Grid g = Grid::make(1.0, 32);
  PhysicalParams ph;
  ph.lambda1 = 0.1;
  ph.lambda2 = 0.1;
  const SourceModel src = SourceModel::power_difference(5.0, 6.0);
  SimConfig cfg;
  cfg.t_end = 2.0;
  const RunResult r = run(g, sine_state(g, 1, 2.0), ph, src, cfg);
  CHECK(r.state.v(0) == 0.0);
  CHECK(r.state.p(0) == 0.0);
  CHECK(r.state.vt(0) == 0.0);
  CHECK(r.state.pt(0) == 0.0);
}

TEST_CASE("negative-energy nonlinear run blows up at the threshold") {
  const Grid g = Grid::make(1.0, 32);
  const PhysicalParams ph;
  const SourceModel src = SourceModel::power_difference(5.0, 6.0);
  SimConfig cfg;
  cfg.t_end = 2.0;
  const RunResult r = run(g, sine_state(g, 1, 2.0), ph, src, cfg);
  REQUIRE(r.blowup.has_value());
  CHECK(r.blowup->trigger == BlowupTrigger::ThresholdExceeded);
  CHECK(r.blowup->t_blow < 1.0);
  CHECK(r.blowup->final_linf >= cfg.blowup_threshold);
  CHECK(r.series.samples.back().t == r.blowup->t_blow);
}

TEST_CASE("unreachable threshold falls back to the step-size safety valve") {
  const Grid g = Grid::make(1.0, 32);
  const PhysicalParams ph;
  const SourceModel src = SourceModel::power_difference(5.0, 6.0);
  SimConfig cfg;
  cfg.t_end = 2.0;
  cfg.blowup_threshold = 1e300;
  const RunResult r = run(g, sine_state(g, 1, 2.0), ph, src, cfg);
  REQUIRE(r.blowup.has_value());
  CHECK(r.blowup->trigger != BlowupTrigger::ThresholdExceeded);
  CHECK(r.blowup->t_blow < 1.0);
  CHECK(all_finite(r.state));
}

TEST_CASE("sampling stride thins the series but keeps the endpoint") {
  const Grid g = Grid::make(1.0, 64);
  const PhysicalParams ph;
  const SourceModel src = SourceModel::null_source();
  SimConfig cfg;
  cfg.t_end = 0.2;
  SimConfig thinned = cfg;
  thinned.sample_stride = 5;
  const RunResult dense = run(g, sine_state(g, 1, 1.0), ph, src, cfg);
  const RunResult sparse = run(g, sine_state(g, 1, 1.0), ph, src, thinned);
  CHECK(sparse.series.samples.size() < dense.series.samples.size());
  CHECK(sparse.series.samples.front().t == 0.0);
  CHECK(sparse.series.samples.back().t == cfg.t_end);
  for (std::size_t i = 1; i < sparse.series.samples.size(); ++i)
    CHECK(sparse.series.samples[i].t > sparse.series.samples[i - 1].t);
}

TEST_CASE("run validates inputs") {
  const Grid g = Grid::make(1.0, 16);
  const PhysicalParams ph;
  const SourceModel src = SourceModel::null_source();
  SimConfig bad;
  bad.dt0 = -1.0;
  CHECK_FALSE(validate_sim(bad).ok());
  SimConfig bad2;
  bad2.t_end = 0.0;
  CHECK_FALSE(validate_sim(bad2).ok());
  SimConfig bad3;
  bad3.dt_min = 0.5;  // above dt0
  CHECK_FALSE(validate_sim(bad3).ok());
  CHECK(validate_sim(SimConfig{}).ok());

  CHECK_THROWS_AS(run(g, StateVector::zero(g), ph, src, bad), std::invalid_argument);

  StateVector nf = StateVector::zero(g);
  nf.v(3) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(run(g, nf, ph, src, SimConfig{}), std::invalid_argument);
}

TEST_CASE("realize assembles and validates initial data") {
  const Grid g = Grid::make(1.0, 32);
  InitialData init;
  init.v0 = FieldSpec::sine(2.0, 1);
  init.p1 = FieldSpec::sine(-0.5, 2);
  const StateVector s = realize(g, init);
  CHECK(linf(s.v) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(linf(s.p) == 0.0);
  CHECK(linf(s.pt) == doctest::Approx(0.5).epsilon(1e-12));

  InitialData bad;
  bad.v0 = FieldSpec::raw(Field::Ones(g.nodes()));
  CHECK_THROWS_AS(realize(g, bad), std::invalid_argument);
}

}  // TEST_SUITE
