#pragma once

// One-dimensional two-phase membrane benchmark on (-1, 1): alpha_+ =
// alpha_- = 8, f = 0, u(-1) = -1, u(1) = 1, with exact solution vanishing on
// [-1/2, 1/2]. Sign sets are carried as exact interval lists so the
// mismatch measure is an exact zero whenever nodes land on +-1/2.

#include "obstacle/errors.hpp"
#include "obstacle/identity_report.hpp"
#include "obstacle/quadrature.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <vector>

namespace obstacle {

struct TwoPhaseProblem
{
  double alpha_plus = 8;
  double alpha_minus = 8;
  double f = 0;
  double bc_left = -1;
  double bc_right = 1;
  double A = 1;

  void validate() const;
  bool is_benchmark() const;
};

/// J(u) of the benchmark solution.
constexpr double kTwoPhaseExactEnergy = 16.0 / 3.0;

struct Interval
{
  double a = 0;
  double b = 0;

  double length() const { return b - a; }
  bool   contains(double x) const { return a < x && x < b; }
  bool   operator==(Interval const &) const = default;
};

/// Finite union of disjoint open intervals, kept sorted; intervals that touch
/// are merged and empty ones dropped.
class IntervalSet
{
public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);

  std::span<Interval const> intervals() const { return intervals_; }
  bool                      empty() const { return intervals_.empty(); }
  double                    measure() const;
  bool                      contains(double x) const;

  IntervalSet intersect(IntervalSet const &other) const;
  IntervalSet unite(IntervalSet const &other) const;

  bool operator==(IntervalSet const &) const = default;

private:
  std::vector<Interval> intervals_;
};

/// {x : v < 0}, interior of {x : v = 0}, {x : v > 0}.
struct SignSets
{
  IntervalSet negative;
  IntervalSet zero;
  IntervalSet positive;
};

struct WeightedInterval
{
  Interval span;
  double   weight = 0;
};

/// The set where the signs of v and u disagree, split by weight:
/// plus (v > 0 = u) carries alpha_+, minus (v < 0 = u) carries alpha_-,
/// crossed (opposite strict signs) carries alpha_+ + alpha_-.
struct MismatchRegion
{
  IntervalSet plus;
  IntervalSet minus;
  IntervalSet crossed;
  double      alpha_plus = 0;
  double      alpha_minus = 0;

  bool                          empty() const { return plus.empty() && minus.empty() && crossed.empty(); }
  std::vector<WeightedInterval> weighted() const;
  double                        weight_at(double x) const;
};

class PiecewiseLinear1D
{
public:
  PiecewiseLinear1D(Eigen::VectorXd nodes, Eigen::VectorXd values);

  Eigen::VectorXd const &nodes() const { return nodes_; }
  Eigen::VectorXd const &values() const { return values_; }
  Eigen::Index           segments() const { return nodes_.size() - 1; }

  double              value(double x) const;
  double              slope(double x) const;
  std::vector<double> kinks() const;
  SignSets            sign_sets() const;

private:
  Eigen::Index segment_of(double x) const;

  Eigen::VectorXd nodes_;
  Eigen::VectorXd values_;
};

double u_exact_1d(double x);
double u_prime_1d(double x);

/// The benchmark solution seen through the same profile interface as v_N.
struct ExactTwoPhaseSolution
{
  double              value(double x) const { return u_exact_1d(x); }
  double              slope(double x) const { return u_prime_1d(x); }
  std::vector<double> kinks() const { return {-1.0, -0.5, 0.5, 1.0}; }
  SignSets            sign_sets() const;
};

/// Anything with pointwise value/slope, a kink list covering [-1, 1] and its
/// exact sign decomposition. Between consecutive kinks the profile must be a
/// polynomial of degree <= 2.
template <typename P>
concept Profile1D = requires(P const &p, double x) {
  { p.value(x) } -> std::convertible_to<double>;
  { p.slope(x) } -> std::convertible_to<double>;
  { p.kinks() } -> std::convertible_to<std::vector<double>>;
  { p.sign_sets() } -> std::convertible_to<SignSets>;
};

/// Nodal interpolant of u_exact_1d at x_j = (2j - (N-1)) / (N-1).
PiecewiseLinear1D interpolant(int N);

SignSets       sign_decomposition(PiecewiseLinear1D const &v);
SignSets       exact_sign_sets();
MismatchRegion mismatch_region(SignSets const &v_sets, SignSets const &u_sets, TwoPhaseProblem const &prob);

namespace detail {

std::vector<double> merge_breakpoints(std::vector<double> points, double lo, double hi);
std::vector<double> sign_set_endpoints(SignSets const &sets);

} // namespace detail

/// J(v) = int 1/2 A v'^2 - f v + alpha_+ max(v,0) + alpha_- max(-v,0). Pieces
/// are split at kinks and sign changes, so the Gauss rule is exact.
template <Profile1D P>
double J_two_phase(P const &v, TwoPhaseProblem const &prob, QuadratureConfig const &cfg = {})
{
  prob.validate();
  if (std::abs(v.value(-1.0) - prob.bc_left) > 1e-12 || std::abs(v.value(1.0) - prob.bc_right) > 1e-12) {
    throw InputError("J_two_phase: boundary values do not match the Dirichlet data");
  }
  auto points = v.kinks();
  auto ends = detail::sign_set_endpoints(v.sign_sets());
  points.insert(points.end(), ends.begin(), ends.end());
  auto const breaks = detail::merge_breakpoints(std::move(points), -1.0, 1.0);
  return integrate_1d<double>(
    [&](double x) {
      double const value = v.value(x);
      double const s = v.slope(x);
      return 0.5 * prob.A * s * s - prob.f * value + prob.alpha_plus * std::max(value, 0.0) +
             prob.alpha_minus * std::max(-value, 0.0);
    },
    breaks, cfg);
}

/// 1/2 int A (u' - v')^2 against the benchmark solution.
template <Profile1D P>
double energy_half_norm_1d(P const &v, TwoPhaseProblem const &prob, QuadratureConfig const &cfg = {})
{
  prob.validate();
  ExactTwoPhaseSolution const u;
  auto                        points = v.kinks();
  auto                        u_kinks = u.kinks();
  points.insert(points.end(), u_kinks.begin(), u_kinks.end());
  auto const breaks = detail::merge_breakpoints(std::move(points), -1.0, 1.0);
  return integrate_1d<double>(
    [&](double x) {
      double const d = u.slope(x) - v.slope(x);
      return 0.5 * prob.A * d * d;
    },
    breaks, cfg);
}

/// int_omega alpha(x) |v| dx over the sign-mismatch region.
template <Profile1D P>
double mu_omega(P const &v, TwoPhaseProblem const &prob, SignSets const &u_sets, QuadratureConfig const &cfg = {})
{
  prob.validate();
  auto const          region = mismatch_region(v.sign_sets(), u_sets, prob);
  auto const          kinks = v.kinks();
  std::vector<double> parts;
  for (auto const &piece : region.weighted()) {
    auto const breaks = detail::merge_breakpoints(kinks, piece.span.a, piece.span.b);
    parts.push_back(piece.weight * integrate_1d<double>([&](double x) { return std::abs(v.value(x)); }, breaks, cfg));
  }
  return pairwise_sum(parts);
}

template <Profile1D P>
IdentityReport<double> identity_report_two_phase(P const &v, TwoPhaseProblem const &prob, QuadratureConfig const &cfg = {})
{
  if (!prob.is_benchmark()) {
    throw InputError("identity_report_two_phase: exact solution is only known for the benchmark data");
  }
  double const energy = energy_half_norm_1d(v, prob, cfg);
  double const measure = mu_omega(v, prob, exact_sign_sets(), cfg);
  double const gap = J_two_phase(v, prob, cfg) - kTwoPhaseExactEnergy;
  return make_identity_report(energy, measure, gap);
}

IdentityReport<double> identity_report_two_phase(int N, TwoPhaseProblem const &prob, QuadratureConfig const &cfg = {});

struct MeasureProfile
{
  Eigen::VectorXd x;
  Eigen::VectorXd density; // alpha(x) |v(x)| on omega, 0 elsewhere
};

template <Profile1D P>
MeasureProfile measure_profile(P const &v, TwoPhaseProblem const &prob, SignSets const &u_sets, int grid_n)
{
  if (grid_n < 2) { throw InputError("measure_profile: grid size must be >= 2"); }
  auto const     region = mismatch_region(v.sign_sets(), u_sets, prob);
  MeasureProfile out;
  out.x.resize(grid_n);
  out.density.resize(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    double const x = double(2 * i - (grid_n - 1)) / double(grid_n - 1);
    out.x[i] = x;
    out.density[i] = region.weight_at(x) * std::abs(v.value(x));
  }
  return out;
}

} // namespace obstacle
