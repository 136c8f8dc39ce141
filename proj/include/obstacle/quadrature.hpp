#pragma once

#include "obstacle/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace obstacle {

// Canonical pairwise reduction: split at the midpoint, sum each half
// recursively, add left + right. Every caller that merges partial sums goes
// through this so results do not depend on how the parts were produced.
template <typename Scalar>
Scalar pairwise_sum(std::span<Scalar const> values)
{
  if (values.size() <= 4) {
    Scalar s(0);
    for (Scalar v : values) { s += v; }
    return s;
  }
  auto const half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename Scalar>
Scalar pairwise_sum(std::vector<Scalar> const &values)
{
  return pairwise_sum(std::span<Scalar const>(values));
}

/// Gauss-Legendre rule on the reference interval [-1, 1].
template <typename Scalar = double>
struct GaussRule
{
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  int   order = 0;
  Array nodes;
  Array weights;

  /// Approximates the integral of f over [a, b] with the affine map of the rule.
  template <typename F>
  Scalar integrate(F &&f, Scalar a, Scalar b) const
  {
    Scalar const half = (b - a) / 2;
    Scalar const mid = (a + b) / 2;
    Scalar       s(0);
    for (int i = 0; i < order; ++i) {
      s += weights[i] * f(mid + half * nodes[i]);
    }
    return half * s;
  }
};

constexpr int kMaxGaussOrder = 64;

/// Nodes are roots of P_n found by Newton iteration from the Chebyshev-like
/// initial guess; weights are 2 / ((1 - x^2) P_n'(x)^2). The rule is
/// symmetrised explicitly so nodes[i] == -nodes[n-1-i] bit for bit.
template <typename Scalar = double>
GaussRule<Scalar> gauss_rule(int n)
{
  if (n < 1 || n > kMaxGaussOrder) {
    throw ConfigError("gauss_rule: order " + std::to_string(n) + " outside [1, " +
                      std::to_string(kMaxGaussOrder) + "]");
  }
  GaussRule<Scalar> rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  auto legendre = [n](Scalar x, Scalar &dp) {
    Scalar p0(1), p1 = x;
    for (int j = 2; j <= n; ++j) {
      Scalar const p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) { p0 = Scalar(1); }
    dp = n * (x * p1 - p0) / (x * x - 1);
    return p1;
  };

  Scalar const pi = std::numbers::pi_v<Scalar>;
  Scalar const tol(1e-15);
  int const    m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Largest root first; stored at the high end.
    Scalar x = std::cos(pi * (i + Scalar(0.75)) / (n + Scalar(0.5)));
    Scalar dp(0);
    for (int it = 0; it < 100; ++it) {
      Scalar const p = legendre(x, dp);
      Scalar const dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= tol) { break; }
    }
    legendre(x, dp);
    Scalar const w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    Scalar dp(0);
    legendre(Scalar(0), dp);
    rule.nodes[n / 2] = Scalar(0);
    rule.weights[n / 2] = 2 / (dp * dp);
  }
  return rule;
}

struct QuadratureConfig
{
  int                order_1d = 8;
  int                radial_order = 6;
  std::optional<int> angular_panels; // unset: max(64, 16|k|)

  /// Panel count for a boundary oscillating with wavenumber k (0: none).
  int angular_panels_for(int k = 0) const
  {
    if (angular_panels) { return *angular_panels; }
    return std::max(64, 16 * std::abs(k));
  }

  void validate() const
  {
    if (order_1d < 2 || order_1d > kMaxGaussOrder) {
      throw ConfigError("quadrature: order_1d must be in [2, 64], got " + std::to_string(order_1d));
    }
    if (radial_order < 2 || radial_order > kMaxGaussOrder) {
      throw ConfigError("quadrature: radial_order must be in [2, 64], got " + std::to_string(radial_order));
    }
    if (angular_panels && *angular_panels < 4) {
      throw ConfigError("quadrature: angular_panels must be >= 4, got " + std::to_string(*angular_panels));
    }
  }
};

/// Composite Gauss over the subintervals of a strictly increasing breakpoint
/// list. Exact for piecewise polynomials of degree <= 2*order_1d - 1 whose
/// kinks are breakpoints.
template <typename Scalar = double, typename F>
Scalar integrate_1d(F &&f, std::span<Scalar const> breakpoints, QuadratureConfig const &cfg = {})
{
  cfg.validate();
  if (breakpoints.size() < 2) { throw InputError("integrate_1d: need at least two breakpoints"); }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw InputError("integrate_1d: breakpoints must be strictly increasing");
    }
  }
  auto const          rule = gauss_rule<Scalar>(cfg.order_1d);
  std::vector<Scalar> parts(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    parts[i] = rule.integrate(f, breakpoints[i], breakpoints[i + 1]);
  }
  return pairwise_sum<Scalar>(parts);
}

template <typename Scalar = double, typename F>
Scalar integrate_1d(F &&f, std::vector<Scalar> const &breakpoints, QuadratureConfig const &cfg = {})
{
  return integrate_1d<Scalar>(std::forward<F>(f), std::span<Scalar const>(breakpoints), cfg);
}

/// Region {(rho, theta) : theta_begin <= theta <= theta_end,
///                        rho_lo(theta) <= rho <= rho_hi(theta)}.
template <typename Scalar = double>
struct RadialRegion
{
  using Radius = std::function<Scalar(Scalar)>;

  Radius              rho_lo;
  Radius              rho_hi;
  Scalar              theta_begin = Scalar(0);
  Scalar              theta_end = 2 * std::numbers::pi_v<Scalar>;
  std::vector<Radius> internal_radii; // kink radii; the radial rule splits there

  static Radius constant(Scalar value)
  {
    return [value](Scalar) { return value; };
  }

  static RadialRegion disk(Scalar radius) { return {constant(Scalar(0)), constant(radius)}; }
  static RadialRegion annulus(Scalar inner, Scalar outer) { return {constant(inner), constant(outer)}; }
};

namespace detail {

template <typename Scalar, typename G>
Scalar integrate_polar_panels(RadialRegion<Scalar> const &region,
                              G                          &g,
                              int                         panels,
                              GaussRule<Scalar> const    &angular,
                              GaussRule<Scalar> const    &radial)
{
  Scalar const        width = (region.theta_end - region.theta_begin) / panels;
  std::vector<Scalar> panel_sums(panels);
  std::vector<Scalar> cuts;
  std::vector<Scalar> pieces;
  for (int p = 0; p < panels; ++p) {
    Scalar const a = region.theta_begin + p * width;
    Scalar const b = (p + 1 == panels) ? region.theta_end : a + width;
    Scalar const half = (b - a) / 2;
    Scalar const mid = (a + b) / 2;
    Scalar       panel(0);
    for (int i = 0; i < angular.order; ++i) {
      Scalar const theta = mid + half * angular.nodes[i];
      Scalar const lo = region.rho_lo(theta);
      Scalar const hi = region.rho_hi(theta);
      if (hi < lo) { throw InputError("integrate_polar: rho_hi < rho_lo at sampled theta"); }
      cuts.clear();
      cuts.push_back(lo);
      for (auto const &kink : region.internal_radii) {
        Scalar const k = kink(theta);
        if (k > lo && k < hi) { cuts.push_back(k); }
      }
      cuts.push_back(hi);
      std::sort(cuts.begin() + 1, cuts.end() - 1);
      pieces.clear();
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        pieces.push_back(
          radial.integrate([&](Scalar rho) { return g(rho, theta) * rho; }, cuts[c], cuts[c + 1]));
      }
      panel += angular.weights[i] * pairwise_sum<Scalar>(pieces);
    }
    panel_sums[p] = half * panel;
  }
  return pairwise_sum<Scalar>(panel_sums);
}

} // namespace detail

/// Integral of g(rho, theta) over the region in polar coordinates. The
/// Jacobian rho is applied here; g is the physical integrand.
template <typename Scalar = double, typename G>
Scalar integrate_polar(RadialRegion<Scalar> const &region, G &&g, QuadratureConfig const &cfg = {})
{
  cfg.validate();
  auto const angular = gauss_rule<Scalar>(cfg.order_1d);
  auto const radial = gauss_rule<Scalar>(cfg.radial_order);
  return detail::integrate_polar_panels(region, g, cfg.angular_panels_for(0), angular, radial);
}

/// Integral of g(x, y) over (-1,1)^2 minus the disk of radius R, as eight
/// octant sectors with rho from R to the square boundary.
template <typename Scalar = double, typename G>
Scalar integrate_square_minus_disk(Scalar R, G &&g, QuadratureConfig const &cfg = {})
{
  cfg.validate();
  if (!(R >= 0 && R < 1)) { throw InputError("integrate_square_minus_disk: R must lie in [0, 1)"); }
  auto const   angular = gauss_rule<Scalar>(cfg.order_1d);
  auto const   radial = gauss_rule<Scalar>(cfg.radial_order);
  int const    total = cfg.angular_panels_for(0);
  int const    per_octant = std::max(1, (total + 7) / 8);
  Scalar const quarter = std::numbers::pi_v<Scalar> / 4;

  auto polar = [&g](Scalar rho, Scalar theta) { return g(rho * std::cos(theta), rho * std::sin(theta)); };
  std::vector<Scalar> octants(8);
  for (int j = 0; j < 8; ++j) {
    RadialRegion<Scalar> sector;
    sector.theta_begin = j * quarter;
    sector.theta_end = (j + 1) * quarter;
    sector.rho_lo = RadialRegion<Scalar>::constant(R);
    // Octants 0, 3, 4, 7 meet the vertical sides x = +-1.
    bool const vertical = (j == 0 || j == 3 || j == 4 || j == 7);
    sector.rho_hi = [vertical](Scalar theta) {
      return vertical ? 1 / std::abs(std::cos(theta)) : 1 / std::abs(std::sin(theta));
    };
    octants[j] = detail::integrate_polar_panels(sector, polar, per_octant, angular, radial);
  }
  return pairwise_sum<Scalar>(octants);
}

} // namespace obstacle
