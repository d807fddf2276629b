#include "piezobeam/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "source_terms.hpp"

namespace piezobeam {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SourceModel SourceModel::null_source(double eta) {
  SourceModel s;
  s.kind = SourceKind::Null;
  s.eta = eta;
  return s;
}

SourceModel SourceModel::power_difference(double a, double eta) {
  SourceModel s;
  s.kind = SourceKind::PowerDifference;
  s.a = a;
  s.eta = eta;
  s.d = a * std::pow(2.0, eta - 2.0);
  s.beta_growth = {eta - 1.0, eta - 1.0, eta - 1.0, eta - 1.0};
  return s;
}

SourceValues SourceModel::operator()(double v, double p) const {
  if (kind == SourceKind::Null) return {};
  const double w = v - p;
  if (w == 0.0) return {};
  const double mag = std::abs(w);
  SourceValues out;
  out.f1 = a * std::pow(mag, eta - 2.0) * w;
  out.f2 = -out.f1;
  out.potential = (a / eta) * std::pow(mag, eta);
  return out;
}

SourceValues eval_sources(const SourceModel& s, double v, double p) { return s(v, p); }

std::string Validation::joined() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

Validation validate_params(const PhysicalParams& ph, const SourceModel& s) {
  Validation v;
  auto bad = [&](const std::string& msg) { v.violations.push_back(msg); };

  if (!(std::isfinite(ph.alpha) && ph.alpha > 0.0))
    bad("alpha must be positive and finite, got " + num(ph.alpha));
  if (!(std::isfinite(ph.beta) && ph.beta > 0.0))
    bad("beta must be positive and finite, got " + num(ph.beta));
  if (!std::isfinite(ph.gamma)) bad("gamma must be finite");
  if (!(std::isfinite(ph.lambda1) && ph.lambda1 >= 0.0))
    bad("lambda1 must be nonnegative, got " + num(ph.lambda1));
  if (!(std::isfinite(ph.lambda2) && ph.lambda2 >= 0.0))
    bad("lambda2 must be nonnegative, got " + num(ph.lambda2));
  const double a1 = ph.alpha1();
  if (!(std::isfinite(a1) && a1 > 0.0))
    bad("alpha1 = alpha - gamma^2*beta = " + num(a1) + " must be positive");

  if (s.kind == SourceKind::PowerDifference) {
    if (!(std::isfinite(s.a) && s.a > 0.0))
      bad("source amplitude a must be positive, got " + num(s.a));
    if (!(std::isfinite(s.eta) && s.eta > 2.0))
      bad("pairing exponent eta must exceed 2, got " + num(s.eta));
  }
  return v;
}

namespace detail {

SourceFields source_fields(const SourceModel& s, const Field& v, const Field& p) {
  SourceFields out;
  if (s.kind == SourceKind::Null) {
    out.f1 = Field::Zero(v.size());
    out.f2 = Field::Zero(v.size());
    out.potential = Field::Zero(v.size());
    return out;
  }
  const Field w = v - p;
  const Field mag = w.abs();
  out.f1 = s.a * mag.pow(s.eta - 2.0) * w;
  out.f2 = -out.f1;
  out.potential = (s.a / s.eta) * mag.pow(s.eta);
  return out;
}

}  // namespace detail

double pairing_residual(const Grid& g, const SourceModel& s, const Field& v,
                        const Field& p) {
  detail::require_nodes(g, v.size(), "pairing_residual");
  detail::require_nodes(g, p.size(), "pairing_residual");
  const detail::SourceFields f = detail::source_fields(s, v, p);
  return integrate(g, v * f.f1 + p * f.f2 - s.eta * f.potential);
}

double pairing_scale(const Grid& g, const SourceModel& s, const Field& v,
                     const Field& p) {
  detail::require_nodes(g, v.size(), "pairing_scale");
  detail::require_nodes(g, p.size(), "pairing_scale");
  const detail::SourceFields f = detail::source_fields(s, v, p);
  return integrate(g, s.eta * f.potential + (v * f.f1).abs() + (p * f.f2).abs());
}

FieldSpec FieldSpec::zero() { return FieldSpec{}; }

FieldSpec FieldSpec::sine(double amplitude, int mode) {
  FieldSpec f;
  f.kind = Kind::SineMode;
  f.amplitude = amplitude;
  f.mode = mode;
  return f;
}

FieldSpec FieldSpec::raw(Field samples) {
  FieldSpec f;
  f.kind = Kind::Samples;
  f.samples = std::move(samples);
  return f;
}

Field FieldSpec::realize(const Grid& g) const {
  switch (kind) {
    case Kind::Zero:
      return Field::Zero(g.nodes());
    case Kind::SineMode:
      return amplitude * (mode_wavenumber(g, mode) * g.coordinates()).sin();
    case Kind::Samples:
      detail::require_nodes(g, samples.size(), "FieldSpec::realize");
      return samples;
  }
  throw std::invalid_argument("FieldSpec::realize: unknown kind");
}

std::string FieldSpec::describe() const {
  switch (kind) {
    case Kind::Zero:
      return "zero";
    case Kind::SineMode:
      return "sine " + num(amplitude) + " " + std::to_string(mode);
    case Kind::Samples:
      return "samples[" + std::to_string(samples.size()) + "]";
  }
  return "?";
}

Validation validate_initial(const Grid& g, const InitialData& init) {
  Validation v;
  struct Entry {
    const char* name;
    const FieldSpec* spec;
    bool needs_flat_end;
  };
  const Entry entries[] = {{"v0", &init.v0, true},
                           {"v1", &init.v1, false},
                           {"p0", &init.p0, true},
                           {"p1", &init.p1, false}};
  for (const Entry& e : entries) {
    Field f;
    try {
      f = e.spec->realize(g);
    } catch (const std::invalid_argument& err) {
      v.violations.push_back(std::string(e.name) + ": " + err.what());
      continue;
    }
    const double scale = 1.0 + linf(f);
    if (!(std::abs(f(0)) <= 1e-12 * scale))
      v.violations.push_back(std::string(e.name) +
                             " must vanish at the pinned end, got " + num(f(0)));
    if (e.needs_flat_end) {
      const double slope = end_slope(g, f);
      if (!(std::abs(slope) <= 10.0 * g.dx * scale))
        v.violations.push_back(std::string(e.name) +
                               " must have zero slope at the free end, got " +
                               num(slope));
    }
    if (!f.allFinite())
      v.violations.push_back(std::string(e.name) + " has non-finite samples");
  }
  return v;
}

}  // namespace piezobeam
