#include "piezobeam/model.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "testutil.hpp"

using namespace piezobeam;
using testutil::make_rng;
using testutil::random_nodal;

TEST_SUITE("model") {

TEST_CASE("admissible parameters pass") {
  PhysicalParams ph;
  ph.alpha = 1.0;
  ph.beta = 1.0;
  ph.gamma = 0.5;
  ph.lambda1 = 0.1;
  ph.lambda2 = 0.1;
  const auto v = validate_params(ph, SourceModel::power_difference(1.0, 8.0));
  CHECK(v.ok());
  CHECK(ph.alpha1() == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("lost ellipticity is reported with the computed value") {
  PhysicalParams ph;
  ph.gamma = 1.1;
  const auto v = validate_params(ph, SourceModel::null_source());
  CHECK_FALSE(v.ok());
  const std::string msg = v.joined();
  CHECK(msg.find("alpha1") != std::string::npos);
  CHECK(msg.find("-0.21") != std::string::npos);
}

TEST_CASE("violations are collected, not short-circuited") {
  PhysicalParams ph;
  ph.alpha = -1.0;
  ph.lambda1 = -0.1;
  const auto v = validate_params(ph, SourceModel::power_difference(1.0, 2.0));
  CHECK(v.violations.size() >= 3);
  const std::string msg = v.joined();
  CHECK(msg.find("alpha") != std::string::npos);
  CHECK(msg.find("lambda1") != std::string::npos);
  CHECK(msg.find("eta") != std::string::npos);
}

TEST_CASE("source rejects eta at or below 2") {
  PhysicalParams ph;
  CHECK_FALSE(validate_params(ph, SourceModel::power_difference(1.0, 2.0)).ok());
  CHECK_FALSE(validate_params(ph, SourceModel::power_difference(-1.0, 4.0)).ok());
  CHECK(validate_params(ph, SourceModel::power_difference(0.5, 2.5)).ok());
}

TEST_CASE("pointwise power-difference values") {
  const SourceModel src = SourceModel::power_difference(1.0, 4.0);
  const auto s = src(2.0, 1.0);
  CHECK(s.f1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.f2 == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(s.potential == doctest::Approx(0.25).epsilon(1e-15));

  const auto z = src(0.7, 0.7);
  CHECK(z.f1 == 0.0);
  CHECK(z.f2 == 0.0);
  CHECK(z.potential == 0.0);

  const auto via_free = eval_sources(src, 2.0, 1.0);
  CHECK(via_free.f1 == s.f1);
}

TEST_CASE("source symmetries") {
  auto rng = make_rng(41);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const SourceModel src = SourceModel::power_difference(0.7, 5.5);
  for (int trial = 0; trial < 200; ++trial) {
    const double v = u(rng), p = u(rng);
    const auto s = src(v, p);
    const auto swapped = src(p, v);
    CHECK(s.f2 == doctest::Approx(-s.f1).epsilon(1e-14));
    CHECK(swapped.f1 == doctest::Approx(-s.f1).epsilon(1e-14));
    CHECK(s.potential >= 0.0);
  }
}

TEST_CASE("growth envelope with certified constant") {
  auto rng = make_rng(43);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (double eta : {4.0, 8.0}) {
    const double a = 1.3;
    const SourceModel src = SourceModel::power_difference(a, eta);
    CHECK(src.d == doctest::Approx(a * std::pow(2.0, eta - 2.0)).epsilon(1e-15));
    for (double b : src.beta_growth) CHECK(b == eta - 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double v = u(rng), p = u(rng);
      const auto s = src(v, p);
      const double bound =
          src.d * (std::pow(std::abs(v), eta - 1.0) + std::pow(std::abs(p), eta - 1.0));
      CHECK(std::abs(s.f1) <= bound * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("growth envelope is sharp on the antidiagonal") {
  const SourceModel src = SourceModel::power_difference(1.0, 8.0);
  for (double v : {0.5, 1.0, 1.7}) {
    const auto s = src(v, -v);
    const double bound = src.d * 2.0 * std::pow(v, 7.0);
    CHECK(std::abs(s.f1) == doctest::Approx(bound).epsilon(1e-13));
  }
}

TEST_CASE("null source") {
  const SourceModel src = SourceModel::null_source();
  const auto s = src(1.3, -0.4);
  CHECK(s.f1 == 0.0);
  CHECK(s.f2 == 0.0);
  CHECK(s.potential == 0.0);
  CHECK(src.d == 0.0);
  for (double b : src.beta_growth) CHECK(b == 1.0);
}

TEST_CASE("pairing residual vanishes") {
  auto rng = make_rng(47);
  const Grid g = Grid::make(1.0, 64);
  const SourceModel src = SourceModel::power_difference(0.9, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Field v = random_nodal(g, rng, 2.0);
    const Field p = random_nodal(g, rng, 2.0);
    const double res = pairing_residual(g, src, v, p);
    const double scale = pairing_scale(g, src, v, p);
    CHECK(std::abs(res) <= 1e-12 * (scale + 1.0));
  }
  const Field v = random_nodal(g, rng);
  CHECK(pairing_residual(g, src, v, v) == 0.0);
  CHECK(pairing_residual(g, SourceModel::null_source(), v, v) == 0.0);
}

TEST_CASE("field specs realize") {
  const Grid g = Grid::make(1.0, 64);
  const FieldSpec spec = FieldSpec::sine(2.0, 1);
  const Field f = spec.realize(g);
  const double k = mode_wavenumber(g, 1);
  CHECK(f(0) == 0.0);
  CHECK(f(32) == doctest::Approx(2.0 * std::sin(k * 0.5)).epsilon(1e-15));
  CHECK(f(64) == doctest::Approx(2.0).epsilon(1e-15));

  CHECK(linf(FieldSpec::zero().realize(g)) == 0.0);

  Field raw = Field::Constant(g.nodes(), 3.0);
  raw(0) = 0.0;
  CHECK((FieldSpec::raw(raw).realize(g) == raw).all());
  Field wrong(5);
  wrong.setZero();
  CHECK_THROWS_AS(FieldSpec::raw(wrong).realize(g), std::invalid_argument);

  CHECK(spec.describe().find("sine") != std::string::npos);
}

TEST_CASE("initial data validation") {
  const Grid g = Grid::make(1.0, 64);
  InitialData good;
  good.v0 = FieldSpec::sine(2.0, 1);
  CHECK(validate_initial(g, good).ok());

  const Field x = g.coordinates();
  const double k = mode_wavenumber(g, 1);

  InitialData pinned_violation;
  pinned_violation.v0 = FieldSpec::raw((k * x).cos());
  const auto v1 = validate_initial(g, pinned_violation);
  CHECK_FALSE(v1.ok());
  CHECK(v1.joined().find("v0") != std::string::npos);

  InitialData slope_violation;
  slope_violation.p0 = FieldSpec::raw((std::numbers::pi * x).sin());
  const auto v2 = validate_initial(g, slope_violation);
  CHECK_FALSE(v2.ok());
  CHECK(v2.joined().find("p0") != std::string::npos);

  InitialData velocity_violation;
  velocity_violation.v1 = FieldSpec::raw(Field::Constant(g.nodes(), 1.0));
  CHECK_FALSE(validate_initial(g, velocity_violation).ok());
}

}  // TEST_SUITE
