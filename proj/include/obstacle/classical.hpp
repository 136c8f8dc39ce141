#pragma once

// Classical obstacle benchmark on (-1,1)^2: lower obstacle phi = 0, no upper
// obstacle, radially symmetric exact solution with coincidence disk of radius
// R, and the bump family v = u + eps * w supported strictly inside that disk.

#include "obstacle/errors.hpp"
#include "obstacle/identity_report.hpp"
#include "obstacle/quadrature.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace obstacle {

template <typename Scalar = double>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar = double>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

/// Problem data. phi == 0; the upper obstacle is absent (psi = +inf), so the
/// upper-contact part of the nonlinear measure vanishes identically.
template <typename Scalar = double>
class ClassicalProblem
{
public:
  explicit ClassicalProblem(Scalar R, Matrix2<Scalar> const &A = Matrix2<Scalar>::Identity())
    : R_(R)
    , A_(A)
  {
    if (!(R >= 0 && R < 1)) { throw InputError("classical problem: R must lie in [0, 1)"); }
    if (!A.allFinite() || (A - A.transpose()).cwiseAbs().maxCoeff() > Scalar(0)) {
      throw InputError("classical problem: A must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix2<Scalar>> eig(A, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0)) {
      throw InputError("classical problem: A must be positive definite");
    }
  }

  Scalar                 radius() const { return R_; }
  Matrix2<Scalar> const &diffusion() const { return A_; }

private:
  Scalar          R_;
  Matrix2<Scalar> A_;
};

/// Bump parameters: plateau radius r, angular wavenumber k, amplitude eps.
template <typename Scalar = double>
struct Perturbation
{
  Scalar r = Scalar(0.2);
  int    k = 16;
  Scalar eps = Scalar(1);

  void validate(Scalar R) const
  {
    if (!(r > 0 && r < R)) { throw InputError("perturbation: need 0 < r < R"); }
    if (k == 0) { throw InputError("perturbation: k must be a nonzero integer"); }
    if (!(eps >= 0) || !std::isfinite(eps)) { throw InputError("perturbation: eps must be finite and >= 0"); }
  }
};

// ---------------------------------------------------------------------------
// Exact solution and data

template <typename Scalar>
Scalar source_f(Point2<Scalar> const &p, Scalar R)
{
  Scalar const rho2 = p.squaredNorm();
  if (rho2 > R * R) { return -16 * rho2 + 8 * R * R; }
  return -8 * (R * R * R * R + R * R) + 8 * R * R * rho2;
}

template <typename Scalar>
Scalar u_exact(Point2<Scalar> const &p, Scalar R)
{
  Scalar const s = std::max(p.squaredNorm() - R * R, Scalar(0));
  return s * s;
}

template <typename Scalar>
Point2<Scalar> grad_u(Point2<Scalar> const &p, Scalar R)
{
  Scalar const s = std::max(p.squaredNorm() - R * R, Scalar(0));
  return 4 * s * p;
}

/// Closed-form energy of the exact solution (identity diffusion).
template <typename Scalar>
Scalar J_u_closed(Scalar R)
{
  Scalar const R2 = R * R;
  Scalar const R4 = R2 * R2;
  return 192 * (Scalar(12) / 35 - 28 * R2 / 45 + R4 / 3) - 32 * R2 * (Scalar(28) / 45 - 4 * R2 / 3 + R4) +
         Scalar(2) / 3 * std::numbers::pi_v<Scalar> * R4 * R4;
}

/// Energy of the exact solution by quadrature. The coincidence disk adds
/// nothing (u and its gradient vanish there), so only the square minus the
/// disk is integrated.
template <typename Scalar>
Scalar J_u_quadrature(ClassicalProblem<Scalar> const &prob, QuadratureConfig const &cfg = {})
{
  Scalar const R = prob.radius();
  auto const  &A = prob.diffusion();
  return integrate_square_minus_disk<Scalar>(
    R,
    [&](Scalar x, Scalar y) {
      Point2<Scalar> const p(x, y);
      Point2<Scalar> const g = grad_u(p, R);
      return g.dot(A * g) / 2 - source_f(p, R) * u_exact(p, R);
    },
    cfg);
}

// ---------------------------------------------------------------------------
// Perturbation

template <typename Scalar>
Scalar r_tilde(Scalar theta, Perturbation<Scalar> const &pert, Scalar R)
{
  return pert.r + (R - pert.r) * (2 + std::cos(pert.k * theta)) / 4;
}

template <typename Scalar>
Scalar r_tilde_prime(Scalar theta, Perturbation<Scalar> const &pert, Scalar R)
{
  return -(R - pert.r) * pert.k * std::sin(pert.k * theta) / 4;
}

template <typename Scalar>
Scalar w_eval(Scalar rho, Scalar theta, Perturbation<Scalar> const &pert, Scalar R)
{
  if (rho <= pert.r) { return Scalar(1); }
  Scalar const outer = r_tilde(theta, pert, R);
  if (rho >= outer) { return Scalar(0); }
  return 1 - (rho - pert.r) / (outer - pert.r);
}

/// Polar gradient components (dw/drho, (1/rho) dw/dtheta). Interfaces
/// rho == r and rho == r_tilde take the ramp branch.
template <typename Scalar>
Point2<Scalar> w_grad(Scalar rho, Scalar theta, Perturbation<Scalar> const &pert, Scalar R)
{
  Scalar const outer = r_tilde(theta, pert, R);
  if (rho < pert.r || rho > outer) { return Point2<Scalar>::Zero(); }
  Scalar const width = outer - pert.r;
  Scalar const d_rho = -1 / width;
  Scalar const d_theta = (rho - pert.r) * r_tilde_prime(theta, pert, R) / (width * width);
  return Point2<Scalar>(d_rho, d_theta / rho);
}

/// Cartesian gradient of w from its polar components.
template <typename Scalar>
Point2<Scalar> w_grad_cartesian(Scalar rho, Scalar theta, Perturbation<Scalar> const &pert, Scalar R)
{
  Point2<Scalar> const polar = w_grad(rho, theta, pert, R);
  Scalar const         c = std::cos(theta), s = std::sin(theta);
  return Point2<Scalar>(c * polar[0] - s * polar[1], s * polar[0] + c * polar[1]);
}

namespace detail {

// supp(w) = {rho <= r_tilde(theta)} with the plateau edge as radial kink.
template <typename Scalar>
RadialRegion<Scalar> perturbation_support(Perturbation<Scalar> const &pert, Scalar R)
{
  RadialRegion<Scalar> region;
  region.rho_lo = RadialRegion<Scalar>::constant(Scalar(0));
  region.rho_hi = [pert, R](Scalar theta) { return r_tilde(theta, pert, R); };
  region.internal_radii.push_back(RadialRegion<Scalar>::constant(pert.r));
  return region;
}

template <typename Scalar>
QuadratureConfig resolve_panels(QuadratureConfig cfg, int k)
{
  cfg.angular_panels = cfg.angular_panels_for(k);
  return cfg;
}

template <typename Scalar>
Point2<Scalar> polar_point(Scalar rho, Scalar theta)
{
  return Point2<Scalar>(rho * std::cos(theta), rho * std::sin(theta));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Identity terms

/// mu = int_{u = phi} W_phi (v - phi) dx with W_phi = -(div A grad phi + f) = -f.
/// Integrated over supp(w), which lies inside the exact coincidence disk.
template <typename Scalar>
Scalar mu_phi_psi(ClassicalProblem<Scalar> const &prob, Perturbation<Scalar> const &pert, QuadratureConfig const &cfg = {})
{
  Scalar const R = prob.radius();
  pert.validate(R);
  auto weighted = [&](Scalar rho, Scalar theta) {
    Scalar const weight = -source_f(detail::polar_point(rho, theta), R);
    return weight * pert.eps * w_eval(rho, theta, pert, R);
  };
  return integrate_polar<Scalar>(detail::perturbation_support(pert, R), weighted,
                                 detail::resolve_panels<Scalar>(cfg, pert.k));
}

/// 1/2 ||grad(u - v)||_A^2 = eps^2 / 2 * int A grad w . grad w.
template <typename Scalar>
Scalar energy_half_norm(ClassicalProblem<Scalar> const &prob, Perturbation<Scalar> const &pert, QuadratureConfig const &cfg = {})
{
  Scalar const R = prob.radius();
  pert.validate(R);
  auto const &A = prob.diffusion();
  auto        density = [&](Scalar rho, Scalar theta) {
    Point2<Scalar> const g = w_grad_cartesian(rho, theta, pert, R);
    return g.dot(A * g) / 2;
  };
  Scalar const integral = integrate_polar<Scalar>(detail::perturbation_support(pert, R), density,
                                                  detail::resolve_panels<Scalar>(cfg, pert.k));
  return pert.eps * pert.eps * integral;
}

/// J(v) - J(u) from the pointwise energy densities of v and u. Outside
/// supp(w) the two densities coincide, so only the support is integrated.
template <typename Scalar>
Scalar energy_gap(ClassicalProblem<Scalar> const &prob, Perturbation<Scalar> const &pert, QuadratureConfig const &cfg = {})
{
  Scalar const R = prob.radius();
  pert.validate(R);
  auto const &A = prob.diffusion();
  auto        density_gap = [&](Scalar rho, Scalar theta) {
    Point2<Scalar> const p = detail::polar_point(rho, theta);
    Point2<Scalar> const gu = grad_u(p, R);
    Point2<Scalar> const gv = gu + pert.eps * w_grad_cartesian(rho, theta, pert, R);
    Scalar const         dv = pert.eps * w_eval(rho, theta, pert, R);
    return (gv.dot(A * gv) - gu.dot(A * gu)) / 2 - source_f(p, R) * dv;
  };
  return integrate_polar<Scalar>(detail::perturbation_support(pert, R), density_gap,
                                 detail::resolve_panels<Scalar>(cfg, pert.k));
}

template <typename Scalar>
IdentityReport<Scalar> identity_report_classical(ClassicalProblem<Scalar> const &prob,
                                                 Perturbation<Scalar> const     &pert,
                                                 QuadratureConfig const         &cfg = {})
{
  return make_identity_report(energy_half_norm(prob, pert, cfg), mu_phi_psi(prob, pert, cfg),
                              energy_gap(prob, pert, cfg));
}

// ---------------------------------------------------------------------------
// Coincidence picture

enum class CoincidenceLabel : std::uint8_t
{
  Contact,     // v == phi: inside the disk, outside supp(w)
  Perturbed,   // v == eps * w > phi
  Free,        // rho > R: u > phi
};

template <typename Scalar = double>
struct CoincidenceGrid
{
  int                           n = 0;
  std::vector<Scalar>           axis; // shared x and y sample coordinates
  std::vector<CoincidenceLabel> labels; // row-major, labels[i * n + j] at (axis[j], axis[i])
  std::array<Scalar, 3>         circle_radii{};
  std::array<std::vector<Point2<Scalar>>, 3> circles;

  CoincidenceLabel at(int row, int col) const { return labels[row * n + col]; }
};

template <typename Scalar>
CoincidenceLabel coincidence_label(Point2<Scalar> const &p, ClassicalProblem<Scalar> const &prob, Perturbation<Scalar> const &pert)
{
  Scalar const R = prob.radius();
  Scalar const rho2 = p.squaredNorm();
  if (rho2 > R * R) { return CoincidenceLabel::Free; }
  if (pert.eps == 0) { return CoincidenceLabel::Contact; }
  Scalar const rho = std::sqrt(rho2);
  Scalar const theta = std::atan2(p[1], p[0]);
  return rho >= r_tilde(theta, pert, R) ? CoincidenceLabel::Contact : CoincidenceLabel::Perturbed;
}

/// Labels an n x n grid on [-1,1]^2 and traces the circles rho = r,
/// (r + 3R)/4 and R.
template <typename Scalar>
CoincidenceGrid<Scalar> coincidence_grid(ClassicalProblem<Scalar> const &prob,
                                         Perturbation<Scalar> const     &pert,
                                         int                             grid_n,
                                         int                             circle_points = 361)
{
  if (grid_n < 2) { throw InputError("coincidence_grid: grid size must be >= 2"); }
  Scalar const R = prob.radius();
  pert.validate(R);
  CoincidenceGrid<Scalar> grid;
  grid.n = grid_n;
  grid.axis.resize(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    grid.axis[i] = Scalar(2 * i - (grid_n - 1)) / Scalar(grid_n - 1);
  }
  grid.labels.resize(static_cast<std::size_t>(grid_n) * grid_n);
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      grid.labels[i * grid_n + j] = coincidence_label(Point2<Scalar>(grid.axis[j], grid.axis[i]), prob, pert);
    }
  }
  grid.circle_radii = {pert.r, (pert.r + 3 * R) / 4, R};
  Scalar const two_pi = 2 * std::numbers::pi_v<Scalar>;
  for (int c = 0; c < 3; ++c) {
    grid.circles[c].reserve(circle_points);
    for (int s = 0; s < circle_points; ++s) {
      grid.circles[c].push_back(detail::polar_point(grid.circle_radii[c], two_pi * s / (circle_points - 1)));
    }
  }
  return grid;
}

} // namespace obstacle
