#include "obstacle/two_phase.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace obstacle;

namespace {

TwoPhaseProblem const benchmark;

struct ExactRow
{
  int    N;
  double energy, measure, gap;
};

// Exact rational values of the three identity terms (computed with rational
// arithmetic on the same definitions, splitting at nodes, roots and +-1/2).
ExactRow const kExact[] = {
  {2, 5.0 / 3, 2.0, 11.0 / 3},
  {3, 5.0 / 3, 2.0, 11.0 / 3},
  {4, 7.0 / 6, 1.0 / 3, 3.0 / 2},
  {5, 2.0 / 3, 0.0, 2.0 / 3},
  {6, 269.0 / 750, 9.0 / 125, 323.0 / 750},
  {7, 7.0 / 27, 2.0 / 27, 1.0 / 3},
  {8, 445.0 / 2058, 9.0 / 343, 499.0 / 2058},
  {9, 1.0 / 6, 0.0, 1.0 / 6},
  {10, 175.0 / 1458, 1.0 / 81, 193.0 / 1458},
  {13, 2.0 / 27, 0.0, 2.0 / 27},
  {30, 1805.0 / 146334, 9.0 / 24389, 1859.0 / 146334},
  {60, 3773.0 / 1232274, 9.0 / 205379, 3827.0 / 1232274},
  {120, 7613.0 / 10110954, 9.0 / 1685159, 451.0 / 594762},
};

} // namespace

TEST(TwoPhaseSolution, Values)
{
  EXPECT_EQ(u_exact_1d(-1.0), -1.0);
  EXPECT_EQ(u_exact_1d(1.0), 1.0);
  EXPECT_EQ(u_exact_1d(-0.5), 0.0);
  EXPECT_EQ(u_exact_1d(0.5), 0.0);
  EXPECT_EQ(u_prime_1d(-0.5), 0.0);
  EXPECT_EQ(u_prime_1d(0.5), 0.0);
  EXPECT_NEAR(u_exact_1d(0.75), 0.25, 1e-15);
}

TEST(TwoPhaseSolution, DerivativeMatchesFiniteDifferences)
{
  std::mt19937                           gen(17);
  std::uniform_real_distribution<double> unif(-1 + 1e-5, 1 - 1e-5);
  for (int i = 0; i < 100; ++i) {
    double const x = unif(gen);
    double const fd = (u_exact_1d(x + 1e-6) - u_exact_1d(x - 1e-6)) / 2e-6;
    EXPECT_NEAR(u_prime_1d(x), fd, 1e-6) << x;
  }
}

TEST(TwoPhaseEnergy, ExactSolutionEnergy)
{
  EXPECT_NEAR(J_two_phase(ExactTwoPhaseSolution{}, benchmark), 16.0 / 3.0, 1e-12);
}

TEST(TwoPhaseEnergy, LinearInterpolant)
{
  EXPECT_NEAR(J_two_phase(interpolant(2), benchmark), 16.0 / 3.0 + 11.0 / 3.0, 1e-13);
}

TEST(TwoPhaseEnergy, ZeroFunctionWithZeroData)
{
  TwoPhaseProblem zero_bc;
  zero_bc.bc_left = 0;
  zero_bc.bc_right = 0;
  PiecewiseLinear1D const v(Eigen::Vector3d(-1, 0, 1), Eigen::Vector3d::Zero());
  EXPECT_EQ(J_two_phase(v, zero_bc), 0.0);
  EXPECT_THROW(J_two_phase(v, benchmark), InputError);
}

TEST(Interpolant, Nodes)
{
  auto const v2 = interpolant(2);
  EXPECT_EQ(v2.nodes(), Eigen::Vector2d(-1, 1));
  EXPECT_EQ(v2.values(), Eigen::Vector2d(-1, 1));

  auto const v5 = interpolant(5);
  EXPECT_EQ(v5.nodes()[1], -0.5);
  EXPECT_EQ(v5.nodes()[3], 0.5);
  EXPECT_EQ(v5.values()[1], 0.0);
  EXPECT_EQ(v5.values()[3], 0.0);

  auto const v6 = interpolant(6);
  EXPECT_NEAR(v6.nodes()[1], -0.6, 1e-15);
  EXPECT_NEAR(v6.values()[1], -0.04, 1e-15);

  EXPECT_THROW(interpolant(1), InputError);
}

TEST(Interpolant, FreeBoundaryNodesAreExact)
{
  for (int N = 5; N <= 401; N += 4) {
    auto const  v = interpolant(N);
    auto const &x = v.nodes();
    int const   q = (N - 1) / 4;
    EXPECT_EQ(x[q], -0.5) << N;
    EXPECT_EQ(x[3 * q], 0.5) << N;
  }
}

TEST(PiecewiseLinear, RejectsBadNodes)
{
  EXPECT_THROW(PiecewiseLinear1D(Eigen::Vector2d(-1, 0.5), Eigen::Vector2d(0, 0)), InputError);
  EXPECT_THROW(PiecewiseLinear1D(Eigen::Vector3d(-1, 0.5, 0.5), Eigen::Vector3d(0, 0, 0)), InputError);
  EXPECT_THROW(PiecewiseLinear1D(Eigen::Vector2d(-1, 1), Eigen::Vector3d(0, 0, 0)), InputError);
}

TEST(IntervalSets, Algebra)
{
  IntervalSet const a({{0.5, 1.0}, {-1.0, 0.0}, {0.0, 0.25}});
  ASSERT_EQ(a.intervals().size(), 2u);
  EXPECT_EQ(a.intervals()[0], (Interval{-1.0, 0.25}));
  EXPECT_DOUBLE_EQ(a.measure(), 1.75);
  IntervalSet const b({{0.0, 0.75}});
  auto const        c = a.intersect(b);
  ASSERT_EQ(c.intervals().size(), 2u);
  EXPECT_EQ(c.intervals()[0], (Interval{0.0, 0.25}));
  EXPECT_EQ(c.intervals()[1], (Interval{0.5, 0.75}));
  EXPECT_TRUE(IntervalSet({{-1.0, -0.5}}).intersect(IntervalSet({{-0.5, 0.5}})).empty());
  EXPECT_FALSE(a.contains(0.25));
  EXPECT_TRUE(a.contains(0.2));
}

TEST(SignDecomposition, Examples)
{
  auto const lin = sign_decomposition(interpolant(2));
  EXPECT_EQ(lin.negative, IntervalSet({{-1.0, 0.0}}));
  EXPECT_EQ(lin.positive, IntervalSet({{0.0, 1.0}}));
  EXPECT_TRUE(lin.zero.empty());

  auto const five = sign_decomposition(interpolant(5));
  EXPECT_EQ(five.zero, IntervalSet({{-0.5, 0.5}}));

  auto const exact = ExactTwoPhaseSolution{}.sign_sets();
  EXPECT_EQ(exact.negative, IntervalSet({{-1.0, -0.5}}));
  EXPECT_EQ(exact.zero, IntervalSet({{-0.5, 0.5}}));
  EXPECT_EQ(exact.positive, IntervalSet({{0.5, 1.0}}));
}

TEST(SignDecomposition, MeasuresSumToDomainLength)
{
  std::mt19937                           gen(23);
  std::uniform_real_distribution<double> unif(-1, 1);
  auto check = [](SignSets const &s) {
    EXPECT_NEAR(s.negative.measure() + s.zero.measure() + s.positive.measure(), 2.0, 4e-16);
  };
  for (int N = 2; N <= 200; ++N) { check(sign_decomposition(interpolant(N))); }
  for (int trial = 0; trial < 200; ++trial) {
    int const       n = 2 + trial % 9;
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, -1, 1);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) { y[i] = (trial % 3 == 0 && i % 2) ? 0.0 : unif(gen); }
    check(sign_decomposition(PiecewiseLinear1D(x, y)));
  }
}

TEST(Mismatch, Examples)
{
  auto const u_sets = exact_sign_sets();
  auto const lin = mismatch_region(interpolant(2).sign_sets(), u_sets, benchmark);
  EXPECT_EQ(lin.minus, IntervalSet({{-0.5, 0.0}}));
  EXPECT_EQ(lin.plus, IntervalSet({{0.0, 0.5}}));
  EXPECT_TRUE(lin.crossed.empty());

  EXPECT_TRUE(mismatch_region(interpolant(9).sign_sets(), u_sets, benchmark).empty());
  EXPECT_TRUE(mismatch_region(u_sets, u_sets, benchmark).empty());

  // Opposite strict signs carry alpha_+ + alpha_-.
  PiecewiseLinear1D const flipped(Eigen::Vector3d(-1, 0, 1), Eigen::Vector3d(1, 0, -1));
  auto const              crossed = mismatch_region(flipped.sign_sets(), u_sets, benchmark);
  EXPECT_EQ(crossed.crossed, IntervalSet({{-1.0, -0.5}, {0.5, 1.0}}));
  EXPECT_EQ(crossed.weight_at(0.75), 16.0);
}

TEST(MeasureOmega, Examples)
{
  auto const u_sets = exact_sign_sets();
  EXPECT_NEAR(mu_omega(interpolant(2), benchmark, u_sets), 2.0, 1e-15);
  EXPECT_NEAR(mu_omega(interpolant(6), benchmark, u_sets), 2 * 8 * (0.5 * 0.3 * 0.03), 1e-15);
  EXPECT_EQ(mu_omega(interpolant(5), benchmark, u_sets), 0.0);
  EXPECT_EQ(mu_omega(ExactTwoPhaseSolution{}, benchmark, u_sets), 0.0);
}

TEST(EnergyHalfNorm, Examples)
{
  EXPECT_NEAR(energy_half_norm_1d(interpolant(2), benchmark), 5.0 / 3.0, 1e-14);
  EXPECT_NEAR(energy_half_norm_1d(interpolant(9), benchmark), 1.0 / 6.0, 1e-14);
  EXPECT_EQ(energy_half_norm_1d(ExactTwoPhaseSolution{}, benchmark), 0.0);
}

TEST(TwoPhaseIdentity, MatchesExactRationalValues)
{
  for (auto const &row : kExact) {
    auto const rep = identity_report_two_phase(row.N, benchmark);
    EXPECT_NEAR(rep.energy_half_norm, row.energy, 1e-14 * std::max(1.0, row.energy)) << row.N;
    EXPECT_NEAR(rep.nonlinear_measure, row.measure, 1e-14 * std::max(1.0, row.measure)) << row.N;
    EXPECT_NEAR(rep.energy_gap, row.gap, 1e-13) << row.N;
  }
}

TEST(TwoPhaseIdentity, PublishedRowExamples)
{
  auto const n8 = identity_report_two_phase(8, benchmark);
  EXPECT_NEAR(*n8.kappa_percent, 10.82, 0.01);
  auto const n120 = identity_report_two_phase(120, benchmark);
  EXPECT_NEAR(*n120.kappa_percent, 0.70, 0.01);
  auto const n5 = identity_report_two_phase(5, benchmark);
  EXPECT_EQ(*n5.kappa_percent, 0.0);
}

TEST(TwoPhaseIdentity, ResidualAndStructuralZeros)
{
  double previous_gap = INFINITY;
  for (int N = 2; N <= 200; ++N) {
    auto const rep = identity_report_two_phase(N, benchmark);
    EXPECT_LE(rep.residual, 1e-10) << N;
    EXPECT_GT(rep.energy_gap, 0.0) << N;
    ASSERT_TRUE(rep.kappa_percent);
    EXPECT_GE(*rep.kappa_percent, 0.0);
    EXPECT_LE(*rep.kappa_percent, 100.0);
    if (N >= 5) {
      if ((N - 1) % 4 == 0) {
        EXPECT_EQ(rep.nonlinear_measure, 0.0) << N;
      } else {
        EXPECT_GT(rep.nonlinear_measure, 0.0) << N;
      }
    }
    if (N >= 3) { EXPECT_LE(rep.energy_gap, previous_gap + 1e-15) << N; }
    previous_gap = rep.energy_gap;
  }
}

TEST(TwoPhaseIdentity, ExactSolutionReportIsZero)
{
  auto const rep = identity_report_two_phase(ExactTwoPhaseSolution{}, benchmark);
  EXPECT_EQ(rep.energy_half_norm, 0.0);
  EXPECT_EQ(rep.nonlinear_measure, 0.0);
  EXPECT_NEAR(rep.energy_gap, 0.0, 1e-14);
  EXPECT_FALSE(rep.kappa_percent.has_value());
}

TEST(TwoPhaseIdentity, RequiresBenchmarkData)
{
  TwoPhaseProblem other;
  other.alpha_plus = 4;
  EXPECT_THROW(identity_report_two_phase(5, other), InputError);
  other.alpha_plus = -1;
  EXPECT_THROW(other.validate(), InputError);
}

TEST(MeasureProfile, Examples)
{
  auto const u_sets = exact_sign_sets();
  auto const nine = measure_profile(interpolant(9), benchmark, u_sets, 401);
  EXPECT_EQ(nine.density.cwiseAbs().maxCoeff(), 0.0);

  auto const two = measure_profile(interpolant(2), benchmark, u_sets, 9);
  EXPECT_EQ(two.x[5], 0.25);
  EXPECT_EQ(two.density[5], 2.0);

  for (int N : {2, 5, 6, 7, 8, 10, 30}) {
    auto const prof = measure_profile(interpolant(N), benchmark, u_sets, 21);
    EXPECT_EQ(prof.x[1], -0.9);
    EXPECT_EQ(prof.density[1], 0.0) << N;
    EXPECT_EQ(prof.density[19], 0.0) << N;
  }
  EXPECT_THROW(measure_profile(interpolant(2), benchmark, u_sets, 1), InputError);
}
