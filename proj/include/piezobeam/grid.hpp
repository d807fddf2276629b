#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace piezobeam {

using Field = Eigen::ArrayXd;

// Uniform 1-D grid on [0, length], nodes x_j = j*dx for j = 0..cells.
//
// Every field on the grid obeys the clamped/free boundary pair: value pinned
// at x = 0, zero slope at x = length. Operators encode the slope condition
// with a mirror node u_{N+1} = u_{N-1}.
struct Grid {
  double length = 1.0;
  int cells = 128;
  double dx = 1.0 / 128.0;

  static Grid make(double length, int cells) {
    if (!(length > 0.0) || !std::isfinite(length))
      throw std::invalid_argument("grid length must be positive and finite");
    if (cells < 2) throw std::invalid_argument("grid needs at least 2 cells");
    return Grid{length, cells, length / cells};
  }

  int nodes() const { return cells + 1; }
  double node(int j) const { return dx * static_cast<double>(j); }
  Field coordinates() const { return Field::LinSpaced(nodes(), 0.0, length); }
};

// Wavenumber of the m-th sine mode sin(k*x) compatible with the boundary
// pair: k = pi*(2m-1)/(2*length), m = 1, 2, ...
inline double mode_wavenumber(const Grid& g, int mode) {
  if (mode < 1) throw std::invalid_argument("mode_wavenumber: mode must be >= 1");
  return M_PI * (2.0 * mode - 1.0) / (2.0 * g.length);
}

// Constant in ||u||^2 <= C*||u_x||^2 for the boundary pair: C = (2L/pi)^2.
inline double poincare_constant(const Grid& g) {
  const double c = 2.0 * g.length / M_PI;
  return c * c;
}

namespace detail {
inline void require_nodes(const Grid& g, Eigen::Index n, const char* op) {
  if (n != g.nodes())
    throw std::invalid_argument(std::string(op) + ": field has " + std::to_string(n) +
                                " nodes, grid has " + std::to_string(g.nodes()));
}
}  // namespace detail

// Second derivative: zero at the pinned node, central stencil inside, mirror
// closure at the free end. The sine modes above are exact eigenvectors with
// eigenvalue -2(1-cos(k*dx))/dx^2.
template <typename D>
Field dxx(const Grid& g, const Eigen::ArrayBase<D>& field) {
  const Field u = field.derived();
  detail::require_nodes(g, u.size(), "dxx");
  const Eigen::Index n = u.size();
  const double inv = 1.0 / (g.dx * g.dx);
  Field out(n);
  out(0) = 0.0;
  out.segment(1, n - 2) =
      (u.segment(2, n - 2) - 2.0 * u.segment(1, n - 2) + u.segment(0, n - 2)) * inv;
  out(n - 1) = 2.0 * (u(n - 2) - u(n - 1)) * inv;
  return out;
}

// Trapezoid quadrature of nodal values.
template <typename D>
double integrate(const Grid& g, const Eigen::ArrayBase<D>& values) {
  const Field f = values.derived();
  detail::require_nodes(g, f.size(), "integrate");
  return (f.sum() - 0.5 * (f(0) + f(f.size() - 1))) * g.dx;
}

template <typename D>
double l2_norm_sq(const Grid& g, const Eigen::ArrayBase<D>& u) {
  return integrate(g, u.derived().square());
}

template <typename D1, typename D2>
double inner(const Grid& g, const Eigen::ArrayBase<D1>& u, const Eigen::ArrayBase<D2>& w) {
  detail::require_nodes(g, u.size(), "inner");
  detail::require_nodes(g, w.size(), "inner");
  return integrate(g, (u.derived() * w.derived()).eval());
}

template <typename D>
double linf(const Eigen::ArrayBase<D>& u) {
  return u.derived().abs().maxCoeff();
}

// Cell-midpoint slopes (u_{j+1} - u_j)/dx, j = 0..cells-1.
template <typename D>
Eigen::ArrayXd cell_slopes(const Grid& g, const Eigen::ArrayBase<D>& field) {
  const Field u = field.derived();
  detail::require_nodes(g, u.size(), "cell_slopes");
  const Eigen::Index n = u.size();
  return (u.tail(n - 1) - u.head(n - 1)) / g.dx;
}

// Gradient quadratures built from cell slopes. These are the exact discrete
// potentials of dxx: inner(dxx(u), w) == -grad_inner(u, w) whenever
// u(0) = w(0) = 0, so energies built from them satisfy the semidiscrete
// dissipation identity to time-integrator accuracy.
template <typename D>
double grad_norm_sq(const Grid& g, const Eigen::ArrayBase<D>& u) {
  return cell_slopes(g, u).square().sum() * g.dx;
}

template <typename D1, typename D2>
double grad_inner(const Grid& g, const Eigen::ArrayBase<D1>& u, const Eigen::ArrayBase<D2>& w) {
  return (cell_slopes(g, u) * cell_slopes(g, w)).sum() * g.dx;
}

// First derivative for diagnostics: central inside, one-sided second order at
// both ends. Exact on linear fields.
template <typename D>
Field dx_field(const Grid& g, const Eigen::ArrayBase<D>& field) {
  const Field u = field.derived();
  detail::require_nodes(g, u.size(), "dx_field");
  const Eigen::Index n = u.size();
  const double inv2 = 1.0 / (2.0 * g.dx);
  Field out(n);
  out(0) = (-3.0 * u(0) + 4.0 * u(1) - u(2)) * inv2;
  out.segment(1, n - 2) = (u.segment(2, n - 2) - u.segment(0, n - 2)) * inv2;
  out(n - 1) = (3.0 * u(n - 1) - 4.0 * u(n - 2) + u(n - 3)) * inv2;
  return out;
}

// One-sided second-order slope at the free end; used by boundary validation.
template <typename D>
double end_slope(const Grid& g, const Eigen::ArrayBase<D>& field) {
  const Field u = field.derived();
  detail::require_nodes(g, u.size(), "end_slope");
  const Eigen::Index n = u.size();
  return (3.0 * u(n - 1) - 4.0 * u(n - 2) + u(n - 3)) / (2.0 * g.dx);
}

}  // namespace piezobeam
