#pragma once

#include "piezobeam/grid.hpp"

#include <array>
#include <string>
#include <vector>

namespace piezobeam {

// Material constants of the coupled beam system
//   v_tt - alpha*v_xx + gamma*beta*p_xx + lambda1*v_t = f1(v, p)
//   p_tt - beta*p_xx  + gamma*beta*v_xx + lambda2*p_t = f2(v, p)
// on (0, length), with v, p pinned at x = 0 and slope-free at x = length.
// The principal part is positive definite iff alpha1 = alpha - gamma^2*beta > 0.
struct PhysicalParams {
  double alpha = 1.0;    ///< elastic stiffness of v
  double beta = 1.0;     ///< magnetic/electric stiffness of p
  double gamma = 0.0;    ///< piezoelectric coupling
  double lambda1 = 0.0;  ///< velocity damping on v
  double lambda2 = 0.0;  ///< velocity damping on p

  double alpha1() const { return alpha - gamma * gamma * beta; }
};

enum class SourceKind { Null, PowerDifference };

struct SourceValues {
  double f1 = 0.0;
  double f2 = 0.0;
  double potential = 0.0;  ///< I(v, p), the density whose gradient is (f1, f2)
};

// Nonlinear source pair deriving from a potential I(v, p) >= 0 that satisfies
//   pairing inequality: v*f1 + p*f2 >= eta*I pointwise, with eta > 2,
//   growth envelope:    |f1|, |f2| <= d*(|v|^b1 + |p|^b2), exponents >= 1.
//
// PowerDifference: I = (a/eta)|v-p|^eta, f1 = a|v-p|^(eta-2)(v-p), f2 = -f1.
// Its pairing inequality is an identity and its certified envelope constant
// is d = a*2^(eta-2), exponents all eta-1 (sharp at v = -p).
struct SourceModel {
  SourceKind kind = SourceKind::Null;
  double a = 0.0;    ///< amplitude (PowerDifference)
  double eta = 4.0;  ///< pairing exponent
  double d = 0.0;    ///< growth envelope constant
  std::array<double, 4> beta_growth{1.0, 1.0, 1.0, 1.0};  ///< envelope exponents

  static SourceModel null_source(double eta = 4.0);
  static SourceModel power_difference(double a, double eta);

  SourceValues operator()(double v, double p) const;
};

SourceValues eval_sources(const SourceModel& s, double v, double p);

struct Validation {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const;
};

// Checks every admissibility constraint and reports all violations at once.
Validation validate_params(const PhysicalParams& ph, const SourceModel& s);

// Quadrature of v*f1 + p*f2 - eta*I over the grid. The pairing inequality
// asks for a nonnegative value; for PowerDifference it vanishes identically.
double pairing_residual(const Grid& g, const SourceModel& s, const Field& v, const Field& p);

// Quadrature of eta*I + |v*f1| + |p*f2|; natural scale for pairing_residual.
double pairing_scale(const Grid& g, const SourceModel& s, const Field& v, const Field& p);

// Initial field: named preset or raw nodal samples. Raw samples are
// validated against the boundary pair, never projected onto it.
struct FieldSpec {
  enum class Kind { Zero, SineMode, Samples };
  Kind kind = Kind::Zero;
  double amplitude = 0.0;
  int mode = 1;
  Field samples;

  static FieldSpec zero();
  static FieldSpec sine(double amplitude, int mode = 1);
  static FieldSpec raw(Field samples);

  Field realize(const Grid& g) const;
  std::string describe() const;
};

struct InitialData {
  FieldSpec v0, v1, p0, p1;
};

// Boundary compatibility: all four fields vanish at node 0; the positions
// v0, p0 additionally have vanishing one-sided slope at the free end.
Validation validate_initial(const Grid& g, const InitialData& init);

}  // namespace piezobeam
