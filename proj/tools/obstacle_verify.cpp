// Command-line front end: identity sweeps, CSV/table output, field dumps and
// the comparison against the published tables.
//
// Exit status: 0 success, 1 a reference cell failed, 2 configuration or I/O
// error.

#include "obstacle/errors.hpp"
#include "obstacle/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

obstacle::SweepConfig with_problem(obstacle::SweepConfig cfg, obstacle::ProblemKind kind)
{
  cfg.problem = kind;
  return cfg;
}

} // namespace

int main(int argc, char **argv)
{
  using namespace obstacle;

  CLI::App app{"Verify primal energy error identities for obstacle benchmarks"};
  app.option_defaults()->always_capture_default();

  SweepConfig         cfg;
  std::string         problem;
  std::string         format = "text";
  std::vector<double> eps;
  std::vector<int>    Ns;
  std::optional<int>  angular_panels;
  std::optional<int>  grid;
  std::string         out;
  bool                check_paper = false;
  bool                corrupt = false;
  bool                verbose = false;

  std::map<std::string, ProblemKind> const problems{{"classical", ProblemKind::Classical},
                                                    {"twophase", ProblemKind::TwoPhase}};
  app.add_option("--problem", problem, "classical | twophase")->check(CLI::IsMember({"classical", "twophase"}));
  app.add_option("--R", cfg.R, "radius of the exact coincidence disk");
  app.add_option("--r", cfg.r, "plateau radius of the perturbation");
  app.add_option("--k", cfg.k, "angular wavenumber of the perturbation boundary");
  app.add_option("--eps", eps, "perturbation amplitudes (repeatable)");
  app.add_option("--N", Ns, "interpolation node counts (repeatable)");
  app.add_option("--quad-order", cfg.quad.order_1d, "Gauss order for 1D and angular panels");
  app.add_option("--radial-order", cfg.quad.radial_order, "Gauss order for radial pieces");
  app.add_option("--angular-panels", angular_panels, "angular panels (default max(64, 16|k|))");
  app.add_option("--format", format, "text | csv")->check(CLI::IsMember({"text", "csv"}));
  app.add_option("--out", out, "output file (default: standard output)");
  app.add_option("--grid", grid, "write field dumps sampled on this many points per axis");
  app.add_flag("--check-paper", check_paper, "compare against the embedded published tables");
  app.add_flag("--corrupt-reference", corrupt, "negative control: perturb one published cell by 1%");
  app.add_flag("-v,--verbose", verbose, "print every compared cell");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return kExitConfig;
  }

  if (!eps.empty()) { cfg.eps_list = eps; }
  if (!Ns.empty()) { cfg.N_list = Ns; }
  cfg.quad.angular_panels = angular_panels;
  cfg.grid_n = grid;
  cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::TextTable;
  if (!out.empty()) { cfg.output_path = out; }

  try {
    if (check_paper) {
      std::vector<ProblemKind> kinds;
      if (problem.empty()) {
        kinds = {ProblemKind::TwoPhase, ProblemKind::Classical};
      } else {
        kinds = {problems.at(problem)};
      }
      bool all_pass = true;
      for (auto kind : kinds) {
        auto ref = kind == ProblemKind::Classical ? classical_reference() : two_phase_reference();
        auto rows = run_sweep(with_problem(cfg, kind));
        if (corrupt && !rows.empty()) {
          for (auto &r : ref.rows) {
            if (r.key == rows.front().key) { r.energy_half_norm *= 1.01; }
          }
        }
        auto const cmp = compare_reference(rows, ref);
        print_comparison(std::cout, cmp, verbose);
        all_pass = all_pass && cmp.all_pass();
      }
      return all_pass ? 0 : kExitFail;
    }

    if (problem.empty()) { throw ConfigError("--problem is required unless --check-paper is given"); }
    cfg.problem = problems.at(problem);
    auto const rows = run_sweep(cfg);
    emit(rows, cfg.format, cfg.problem, cfg.output_path);
    if (cfg.grid_n) {
      for (auto const &file : emit_grid(cfg)) { std::cerr << "wrote " << file << '\n'; }
    }
    return 0;
  } catch (ConfigError const &e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (InputError const &e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (IoError const &e) {
    std::cerr << "I/O error: " << e.what() << '\n';
  }
  return kExitConfig;
}
