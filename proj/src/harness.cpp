#include "obstacle/harness.hpp"

#include "obstacle/classical.hpp"
#include "obstacle/errors.hpp"
#include "obstacle/two_phase.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace obstacle {

void SweepConfig::validate() const
{
  try {
    quad.validate();
  } catch (ConfigError const &e) {
    throw ConfigError(std::string("--quad-order/--angular-panels: ") + e.what());
  }
  if (grid_n && *grid_n < 2) { throw ConfigError("--grid must be >= 2"); }
  if (problem == ProblemKind::Classical) {
    if (!(R > 0 && R < 1)) { throw ConfigError("--R must satisfy 0 < R < 1"); }
    if (!(r > 0 && r < R)) { throw ConfigError("--r must satisfy 0 < r < R"); }
    if (k == 0) { throw ConfigError("--k must be a nonzero integer"); }
    if (eps_list.empty()) { throw ConfigError("--eps list is empty"); }
    for (double eps : eps_list) {
      if (!(eps >= 0) || !std::isfinite(eps)) { throw ConfigError("--eps values must be finite and >= 0"); }
    }
  } else {
    if (N_list.empty()) { throw ConfigError("--N list is empty"); }
    for (int N : N_list) {
      if (N < 2) { throw ConfigError("--N values must be >= 2"); }
    }
  }
}

std::vector<SweepRow> run_sweep(SweepConfig const &cfg)
{
  cfg.validate();
  std::vector<SweepRow> rows;
  if (cfg.problem == ProblemKind::Classical) {
    ClassicalProblem<double> const prob(cfg.R);
    for (double eps : cfg.eps_list) {
      Perturbation<double> const pert{cfg.r, cfg.k, eps};
      rows.push_back({eps, identity_report_classical(prob, pert, cfg.quad)});
    }
  } else {
    TwoPhaseProblem const prob;
    for (int N : cfg.N_list) {
      rows.push_back({double(N), identity_report_two_phase(N, prob, cfg.quad)});
    }
  }
  return rows;
}

// Reference tables ------------------------------------------------------------

void ReferenceTable::validate() const
{
  if (!(term_rel_tol > 0) || !(kappa_abs_tol > 0)) { throw ConfigError(name + ": tolerances must be > 0"); }
  if (term_digits < 1 || kappa_decimals < 0) { throw ConfigError(name + ": invalid print precision"); }
}

ReferenceTable two_phase_reference()
{
  ReferenceTable t;
  t.name = "two-phase (1D)";
  t.problem = ProblemKind::TwoPhase;
  t.term_digits = 3;
  t.kappa_decimals = 2;
  t.rows = {
    {2, 1.67e+00, 2.00e+00, 3.67e+00, 54.55},
    {5, 6.67e-01, 0.0, 6.67e-01, 0.00},
    {6, 3.59e-01, 7.20e-02, 4.31e-01, 16.72},
    {7, 2.59e-01, 7.41e-02, 3.33e-01, 22.22},
    {8, 2.16e-01, 2.62e-02, 2.42e-01, 10.82},
    {9, 1.67e-01, 0.0, 1.67e-01, 0.00},
    {10, 1.20e-01, 1.23e-02, 1.32e-01, 9.33},
    {30, 1.23e-02, 3.69e-04, 1.27e-02, 2.91},
    {60, 3.06e-03, 4.38e-05, 3.10e-03, 1.41},
    {120, 7.53e-04, 5.34e-06, 7.58e-04, 0.70},
  };
  return t;
}

ReferenceTable classical_reference()
{
  ReferenceTable t;
  t.name = "classical (2D)";
  t.problem = ProblemKind::Classical;
  t.term_digits = 5;
  t.kappa_decimals = 4;
  t.rows = {
    {1.0, 7.1531e+00, 4.4311e+00, 1.1584e+01, 38.2512},
    {0.1, 7.1531e-02, 4.4311e-01, 5.1464e-01, 86.1008},
    {0.01, 7.1531e-04, 4.4311e-02, 4.5027e-02, 98.4113},
    {0.001, 7.1531e-06, 4.4311e-03, 4.4388e-03, 99.8388},
    {0.0001, 7.1531e-08, 4.4311e-04, 4.4375e-04, 99.9839},
  };
  return t;
}

bool Comparison::all_pass() const
{
  return failures() == 0;
}

int Comparison::failures() const
{
  int n = 0;
  for (auto const &c : cells) { n += c.pass ? 0 : 1; }
  return n;
}

namespace {

std::string printf_e(double value, int significant)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", significant - 1, value);
  return buf;
}

std::string printf_f(double value, int decimals)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

CellVerdict check_term(double key, char const *column, double computed, double published, ReferenceTable const &ref)
{
  CellVerdict v{key, column, computed, published, {}, false};
  if (published == 0) {
    v.tolerance = "exact zero";
    v.pass = computed == 0;
    return v;
  }
  v.tolerance = printf_e(ref.term_rel_tol, 1) + " rel or " + std::to_string(ref.term_digits) + " printed digits";
  bool const digits_match = printf_e(computed, ref.term_digits) == printf_e(published, ref.term_digits);
  v.pass = digits_match || std::abs(computed - published) <= ref.term_rel_tol * std::abs(published);
  return v;
}

} // namespace

Comparison compare_reference(std::vector<SweepRow> const &rows, ReferenceTable const &ref)
{
  ref.validate();
  Comparison cmp;
  cmp.table = ref.name;
  for (auto const &row : rows) {
    auto const it = std::find_if(ref.rows.begin(), ref.rows.end(), [&](auto const &r) { return r.key == row.key; });
    if (it == ref.rows.end()) {
      throw ConfigError(ref.name + ": no published row for key " + format_key(row.key));
    }
    auto const &rep = row.report;
    cmp.cells.push_back(check_term(row.key, "energy_half_norm", rep.energy_half_norm, it->energy_half_norm, ref));
    cmp.cells.push_back(check_term(row.key, "nonlinear_measure", rep.nonlinear_measure, it->nonlinear_measure, ref));
    cmp.cells.push_back(check_term(row.key, "energy_gap", rep.energy_gap, it->energy_gap, ref));

    CellVerdict kappa{row.key, "kappa_percent", rep.kappa_percent.value_or(std::nan("")), it->kappa_percent,
                      printf_f(ref.kappa_abs_tol, 2) + " abs", false};
    kappa.pass = rep.kappa_percent && std::abs(*rep.kappa_percent - it->kappa_percent) <= ref.kappa_abs_tol;
    cmp.cells.push_back(kappa);
  }
  return cmp;
}

void print_comparison(std::ostream &os, Comparison const &cmp, bool verbose)
{
  for (auto const &c : cmp.cells) {
    if (c.pass && !verbose) { continue; }
    os << (c.pass ? "ok   " : "FAIL ") << cmp.table << " key=" << format_key(c.key) << ' ' << c.column
       << " computed=" << format_scientific(c.computed, 6) << " published=" << format_scientific(c.published, 6)
       << " tol=" << c.tolerance << '\n';
  }
  os << cmp.table << ": " << (cmp.cells.size() - cmp.failures()) << '/' << cmp.cells.size() << " cells pass\n";
}

// Formatting --------------------------------------------------------------------

std::string format_scientific(double value, int significant)
{
  if (std::isnan(value)) { return "nan"; }
  if (value == 0) { value = 0.0; } // drop the sign of -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, significant - 1);
  std::string s(buf, res.ptr);
  auto const  e = s.find('e');
  if (e == std::string::npos) { return s; }
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  bool const  negative = !exponent.empty() && exponent[0] == '-';
  if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) { exponent.erase(0, 1); }
  exponent.erase(0, std::min(exponent.find_first_not_of('0'), exponent.size() - 1));
  return mantissa + 'e' + (negative ? "-" : "") + exponent;
}

std::string format_key(double key)
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, key);
  return {buf, res.ptr};
}

std::string render(std::vector<SweepRow> const &rows, OutputFormat format, ProblemKind problem)
{
  std::ostringstream os;
  if (format == OutputFormat::Csv) {
    os << "key,energy_half_norm,nonlinear_measure,energy_gap,kappa_percent,residual\n";
    for (auto const &row : rows) {
      auto const &r = row.report;
      os << format_key(row.key) << ',' << format_scientific(r.energy_half_norm, 6) << ','
         << format_scientific(r.nonlinear_measure, 6) << ',' << format_scientific(r.energy_gap, 6) << ','
         << (r.kappa_percent ? printf_f(*r.kappa_percent, 4) : std::string()) << ','
         << format_scientific(r.residual, 6) << '\n';
    }
    return os.str();
  }

  bool const  classical = problem == ProblemKind::Classical;
  int const   digits = classical ? 5 : 3;
  int const   decimals = classical ? 4 : 2;
  char const *key_name = classical ? "eps" : "N";
  char        line[256];
  std::snprintf(line, sizeof line, "%-8s  %14s  %14s  %14s  %10s\n", key_name, "1/2|grad(u-v)|^2", "mu(v)",
                "J(v)-J(u)", "kappa[%]");
  os << line;
  for (auto const &row : rows) {
    auto const &r = row.report;
    std::string key = classical ? printf_f(row.key, 4) : format_key(row.key);
    if (classical && row.key != 0 && row.key < 1e-4) { key = printf_e(row.key, 2); }
    std::snprintf(line, sizeof line, "%-8s  %16s  %14s  %14s  %10s\n", key.c_str(),
                  printf_e(r.energy_half_norm, digits).c_str(), printf_e(r.nonlinear_measure, digits).c_str(),
                  printf_e(r.energy_gap, digits).c_str(),
                  r.kappa_percent ? printf_f(*r.kappa_percent, decimals).c_str() : "-");
    os << line;
  }
  return os.str();
}

void emit(std::vector<SweepRow> const &rows, OutputFormat format, ProblemKind problem,
          std::optional<std::string> const &path)
{
  std::string const text = render(rows, format, problem);
  if (!path || path->empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) { throw IoError("cannot open output file: " + *path); }
  out << text;
  if (!out) { throw IoError("failed writing output file: " + *path); }
}

namespace {

std::string grid_stem(std::optional<std::string> const &path)
{
  if (!path || path->empty()) { return "obstacle_grid"; }
  auto const slash = path->find_last_of('/');
  auto const dot = path->find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) { return path->substr(0, dot); }
  return *path;
}

void write_file(std::string const &path, std::string const &text, std::vector<std::string> &written)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) { throw IoError("cannot open grid file: " + path); }
  out << text;
  if (!out) { throw IoError("failed writing grid file: " + path); }
  written.push_back(path);
}

char const *label_name(CoincidenceLabel label)
{
  switch (label) {
  case CoincidenceLabel::Contact: return "contact";
  case CoincidenceLabel::Perturbed: return "perturbed";
  case CoincidenceLabel::Free: return "free";
  }
  return "?";
}

} // namespace

std::vector<std::string> emit_grid(SweepConfig const &cfg)
{
  cfg.validate();
  if (!cfg.grid_n) { throw InputError("emit_grid: grid size not set"); }
  int const                n = *cfg.grid_n;
  std::string const        stem = grid_stem(cfg.output_path);
  std::vector<std::string> written;

  if (cfg.problem == ProblemKind::Classical) {
    ClassicalProblem<double> const prob(cfg.R);
    // w and the labels do not depend on eps > 0; use the first positive one.
    double eps = 1.0;
    for (double e : cfg.eps_list) {
      if (e > 0) {
        eps = e;
        break;
      }
    }
    Perturbation<double> const pert{cfg.r, cfg.k, eps};
    auto const                 grid = coincidence_grid(prob, pert, n);

    std::ostringstream w_csv, label_csv, circle_csv;
    w_csv << "x,y,w\n";
    label_csv << "x,y,label\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double const x = grid.axis[j], y = grid.axis[i];
        double const w = w_eval(std::hypot(x, y), std::atan2(y, x), pert, cfg.R);
        w_csv << format_key(x) << ',' << format_key(y) << ',' << format_key(w) << '\n';
        label_csv << format_key(x) << ',' << format_key(y) << ',' << label_name(grid.at(i, j)) << '\n';
      }
    }
    circle_csv << "circle,radius,x,y\n";
    for (int c = 0; c < 3; ++c) {
      for (auto const &p : grid.circles[c]) {
        circle_csv << c << ',' << format_key(grid.circle_radii[c]) << ',' << format_key(p[0]) << ','
                   << format_key(p[1]) << '\n';
      }
    }
    write_file(stem + "_w.csv", w_csv.str(), written);
    write_file(stem + "_labels.csv", label_csv.str(), written);
    write_file(stem + "_circles.csv", circle_csv.str(), written);
  } else {
    TwoPhaseProblem const prob;
    auto const            u_sets = exact_sign_sets();
    for (int N : cfg.N_list) {
      auto const         v = interpolant(N);
      auto const         profile = measure_profile(v, prob, u_sets, n);
      std::ostringstream csv;
      csv << "x,u,v,density\n";
      for (int i = 0; i < n; ++i) {
        double const x = profile.x[i];
        csv << format_key(x) << ',' << format_key(u_exact_1d(x)) << ',' << format_key(v.value(x)) << ','
            << format_key(profile.density[i]) << '\n';
      }
      write_file(stem + "_N" + std::to_string(N) + "_profile.csv", csv.str(), written);
    }
  }
  return written;
}

} // namespace obstacle
