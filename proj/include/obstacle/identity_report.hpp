#pragma once

#include <cmath>
#include <optional>

namespace obstacle {

// Below this energy gap the nonlinear-measure share is not reported.
constexpr double kKappaGapFloor = 1e-14;

/// One row of an error-identity table: energy half-norm + nonlinear measure
/// against the energy gap J(v) - J(u).
template <typename Scalar = double>
struct IdentityReport
{
  Scalar                energy_half_norm = 0;
  Scalar                nonlinear_measure = 0;
  Scalar                energy_gap = 0;
  std::optional<Scalar> kappa_percent; // 100 * measure / gap
  Scalar                residual = 0;  // |energy + measure - gap|
};

template <typename Scalar>
IdentityReport<Scalar> make_identity_report(Scalar energy, Scalar measure, Scalar gap)
{
  IdentityReport<Scalar> report;
  report.energy_half_norm = energy;
  report.nonlinear_measure = measure;
  report.energy_gap = gap;
  report.residual = std::abs(energy + measure - gap);
  if (gap >= Scalar(kKappaGapFloor)) { report.kappa_percent = 100 * measure / gap; }
  return report;
}

} // namespace obstacle
