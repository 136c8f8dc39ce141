#pragma once

#include "obstacle/identity_report.hpp"
#include "obstacle/quadrature.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace obstacle {

enum class ProblemKind
{
  Classical,
  TwoPhase,
};

enum class OutputFormat
{
  TextTable,
  Csv,
};

struct SweepConfig
{
  ProblemKind         problem = ProblemKind::Classical;
  double              R = 0.7;
  double              r = 0.2;
  int                 k = 16;
  std::vector<double> eps_list{1.0, 0.1, 0.01, 0.001, 0.0001};
  std::vector<int>    N_list{2, 5, 6, 7, 8, 9, 10, 30, 60, 120};
  QuadratureConfig    quad;
  OutputFormat        format = OutputFormat::TextTable;
  std::optional<std::string> output_path;
  std::optional<int>         grid_n;

  /// Throws ConfigError naming the offending CLI flag.
  void validate() const;
};

struct SweepRow
{
  double                 key = 0; // eps or N
  IdentityReport<double> report;
};

std::vector<SweepRow> run_sweep(SweepConfig const &cfg);

// Published tables ------------------------------------------------------------

struct ReferenceRow
{
  double key = 0;
  double energy_half_norm = 0;
  double nonlinear_measure = 0;
  double energy_gap = 0;
  double kappa_percent = 0;
};

struct ReferenceTable
{
  std::string               name;
  ProblemKind               problem = ProblemKind::Classical;
  std::vector<ReferenceRow> rows;
  int                       term_digits = 5;   // significant digits printed for the identity terms
  int                       kappa_decimals = 4;
  double                    term_rel_tol = 5e-4;
  double                    kappa_abs_tol = 0.01;

  void validate() const;
};

/// Error-identity terms of the 1D two-phase sweep, N in {2,...,120}.
ReferenceTable two_phase_reference();
/// Error-identity terms of the 2D bump sweep, R = 0.7, r = 0.2, k = 16.
ReferenceTable classical_reference();

struct CellVerdict
{
  double      key = 0;
  std::string column;
  double      computed = 0;
  double      published = 0;
  std::string tolerance;
  bool        pass = false;
};

struct Comparison
{
  std::string              table;
  std::vector<CellVerdict> cells;

  bool all_pass() const;
  int  failures() const;
};

/// A term cell passes if the computed value, printed with the table's
/// significant digits, reproduces the published digits, or if it lies within
/// term_rel_tol of the published value. Published zeros require an exact zero.
/// Kappa cells use the absolute tolerance.
Comparison compare_reference(std::vector<SweepRow> const &rows, ReferenceTable const &ref);

void print_comparison(std::ostream &os, Comparison const &cmp, bool verbose);

// Output ------------------------------------------------------------------------

/// Scientific notation with the given significant digits and a bare exponent,
/// e.g. 7.15310e0, 4.43110e-4.
std::string format_scientific(double value, int significant);
/// Shortest round-trip decimal form of a sweep key.
std::string format_key(double key);

std::string render(std::vector<SweepRow> const &rows, OutputFormat format, ProblemKind problem);

/// Writes render(...) to path, or to standard output when path is empty.
void emit(std::vector<SweepRow> const &rows, OutputFormat format, ProblemKind problem,
          std::optional<std::string> const &path);

/// Writes the plot-ready field dumps next to the output path and returns the
/// list of files written.
std::vector<std::string> emit_grid(SweepConfig const &cfg);

} // namespace obstacle
