#include "obstacle/two_phase.hpp"

#include <string>

namespace obstacle {

void TwoPhaseProblem::validate() const
{
  if (!(alpha_plus > 0) || !(alpha_minus > 0)) { throw InputError("two-phase problem: alpha_+ and alpha_- must be > 0"); }
  if (!(A > 0)) { throw InputError("two-phase problem: A must be > 0"); }
  if (!std::isfinite(f) || !std::isfinite(bc_left) || !std::isfinite(bc_right)) {
    throw InputError("two-phase problem: data must be finite");
  }
}

bool TwoPhaseProblem::is_benchmark() const
{
  return alpha_plus == 8 && alpha_minus == 8 && f == 0 && bc_left == -1 && bc_right == 1 && A == 1;
}

// IntervalSet ---------------------------------------------------------------

IntervalSet::IntervalSet(std::vector<Interval> intervals)
{
  std::erase_if(intervals, [](Interval const &i) { return !(i.a < i.b); });
  std::sort(intervals.begin(), intervals.end(), [](Interval const &l, Interval const &r) { return l.a < r.a; });
  for (auto const &i : intervals) {
    if (!intervals_.empty() && i.a <= intervals_.back().b) {
      intervals_.back().b = std::max(intervals_.back().b, i.b);
    } else {
      intervals_.push_back(i);
    }
  }
}

double IntervalSet::measure() const
{
  double total = 0;
  for (auto const &i : intervals_) { total += i.length(); }
  return total;
}

bool IntervalSet::contains(double x) const
{
  return std::any_of(intervals_.begin(), intervals_.end(), [x](Interval const &i) { return i.contains(x); });
}

IntervalSet IntervalSet::intersect(IntervalSet const &other) const
{
  std::vector<Interval> out;
  std::size_t           i = 0, j = 0;
  auto const           &lhs = intervals_;
  auto const           &rhs = other.intervals_;
  while (i < lhs.size() && j < rhs.size()) {
    double const a = std::max(lhs[i].a, rhs[j].a);
    double const b = std::min(lhs[i].b, rhs[j].b);
    if (a < b) { out.push_back({a, b}); }
    if (lhs[i].b < rhs[j].b) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(IntervalSet const &other) const
{
  std::vector<Interval> all(intervals_.begin(), intervals_.end());
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return IntervalSet(std::move(all));
}

// MismatchRegion ------------------------------------------------------------

std::vector<WeightedInterval> MismatchRegion::weighted() const
{
  std::vector<WeightedInterval> out;
  for (auto const &i : plus.intervals()) { out.push_back({i, alpha_plus}); }
  for (auto const &i : minus.intervals()) { out.push_back({i, alpha_minus}); }
  for (auto const &i : crossed.intervals()) { out.push_back({i, alpha_plus + alpha_minus}); }
  std::sort(out.begin(), out.end(), [](auto const &l, auto const &r) { return l.span.a < r.span.a; });
  return out;
}

double MismatchRegion::weight_at(double x) const
{
  if (plus.contains(x)) { return alpha_plus; }
  if (minus.contains(x)) { return alpha_minus; }
  if (crossed.contains(x)) { return alpha_plus + alpha_minus; }
  return 0;
}

// PiecewiseLinear1D ---------------------------------------------------------

PiecewiseLinear1D::PiecewiseLinear1D(Eigen::VectorXd nodes, Eigen::VectorXd values)
  : nodes_(std::move(nodes))
  , values_(std::move(values))
{
  if (nodes_.size() < 2 || nodes_.size() != values_.size()) {
    throw InputError("PiecewiseLinear1D: need >= 2 nodes and one value per node");
  }
  if (nodes_[0] != -1.0 || nodes_[nodes_.size() - 1] != 1.0) {
    throw InputError("PiecewiseLinear1D: nodes must start at -1 and end at 1");
  }
  for (Eigen::Index i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i - 1] < nodes_[i])) { throw InputError("PiecewiseLinear1D: nodes must be strictly increasing"); }
  }
  if (!values_.allFinite()) { throw InputError("PiecewiseLinear1D: values must be finite"); }
}

Eigen::Index PiecewiseLinear1D::segment_of(double x) const
{
  auto const *begin = nodes_.data();
  auto const *end = begin + nodes_.size();
  auto const  it = std::upper_bound(begin, end, x);
  Eigen::Index seg = static_cast<Eigen::Index>(it - begin) - 1;
  return std::clamp<Eigen::Index>(seg, 0, segments() - 1);
}

double PiecewiseLinear1D::value(double x) const
{
  auto const   i = segment_of(x);
  double const x0 = nodes_[i], x1 = nodes_[i + 1];
  double const v0 = values_[i], v1 = values_[i + 1];
  if (x == x1) { return v1; }
  return v0 + (v1 - v0) * ((x - x0) / (x1 - x0));
}

double PiecewiseLinear1D::slope(double x) const
{
  auto const i = segment_of(x);
  return (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]);
}

std::vector<double> PiecewiseLinear1D::kinks() const
{
  return {nodes_.data(), nodes_.data() + nodes_.size()};
}

SignSets PiecewiseLinear1D::sign_sets() const
{
  return sign_decomposition(*this);
}

// Benchmark solution ---------------------------------------------------------

double u_exact_1d(double x)
{
  if (x < -0.5) { return -(2 * x + 1) * (2 * x + 1); }
  if (x > 0.5) { return (2 * x - 1) * (2 * x - 1); }
  return 0.0;
}

double u_prime_1d(double x)
{
  if (x < -0.5) { return -8 * x - 4; }
  if (x > 0.5) { return 8 * x - 4; }
  return 0.0;
}

SignSets ExactTwoPhaseSolution::sign_sets() const
{
  return exact_sign_sets();
}

SignSets exact_sign_sets()
{
  return {IntervalSet({{-1.0, -0.5}}), IntervalSet({{-0.5, 0.5}}), IntervalSet({{0.5, 1.0}})};
}

PiecewiseLinear1D interpolant(int N)
{
  if (N < 2) { throw InputError("interpolant: N must be >= 2, got " + std::to_string(N)); }
  Eigen::VectorXd nodes(N), values(N);
  for (int j = 0; j < N; ++j) {
    // Integer numerator over N-1 so that +-1/2 are hit exactly when 4 | N-1.
    nodes[j] = double(2 * j - (N - 1)) / double(N - 1);
    values[j] = u_exact_1d(nodes[j]);
  }
  return {std::move(nodes), std::move(values)};
}

SignSets sign_decomposition(PiecewiseLinear1D const &v)
{
  std::vector<Interval> neg, zero, pos;
  auto const           &x = v.nodes();
  auto const           &y = v.values();
  for (Eigen::Index i = 0; i < v.segments(); ++i) {
    double const x0 = x[i], x1 = x[i + 1];
    double const y0 = y[i], y1 = y[i + 1];
    if (y0 == 0 && y1 == 0) {
      zero.push_back({x0, x1});
    } else if (y0 >= 0 && y1 >= 0) {
      pos.push_back({x0, x1});
    } else if (y0 <= 0 && y1 <= 0) {
      neg.push_back({x0, x1});
    } else {
      double const root = x0 + (-y0) * (x1 - x0) / (y1 - y0);
      (y0 < 0 ? neg : pos).push_back({x0, root});
      (y1 < 0 ? neg : pos).push_back({root, x1});
    }
  }
  return {IntervalSet(std::move(neg)), IntervalSet(std::move(zero)), IntervalSet(std::move(pos))};
}

MismatchRegion mismatch_region(SignSets const &v_sets, SignSets const &u_sets, TwoPhaseProblem const &prob)
{
  MismatchRegion region;
  region.plus = v_sets.positive.intersect(u_sets.zero);
  region.minus = v_sets.negative.intersect(u_sets.zero);
  region.crossed = v_sets.positive.intersect(u_sets.negative).unite(v_sets.negative.intersect(u_sets.positive));
  region.alpha_plus = prob.alpha_plus;
  region.alpha_minus = prob.alpha_minus;
  return region;
}

IdentityReport<double> identity_report_two_phase(int N, TwoPhaseProblem const &prob, QuadratureConfig const &cfg)
{
  return identity_report_two_phase(interpolant(N), prob, cfg);
}

namespace detail {

std::vector<double> merge_breakpoints(std::vector<double> points, double lo, double hi)
{
  std::erase_if(points, [lo, hi](double p) { return !(p > lo && p < hi); });
  points.push_back(lo);
  points.push_back(hi);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::vector<double> sign_set_endpoints(SignSets const &sets)
{
  std::vector<double> out;
  for (auto const *set : {&sets.negative, &sets.zero, &sets.positive}) {
    for (auto const &i : set->intervals()) {
      out.push_back(i.a);
      out.push_back(i.b);
    }
  }
  return out;
}

} // namespace detail

} // namespace obstacle
