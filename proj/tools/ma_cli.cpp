// Command-line driver: single solves and convergence studies for the
// Monge-Ampere benchmark problems.
//
//   ma_solve solve --example c2 --n 31 --width 2 --scheme filtered --out report.json
//   ma_solve study --example cone --widths 1,2,3 --ns 31,63,127 \
//            --schemes monotone,filtered --out study.csv
//
// Exit status: 0 success, 1 solver failure, 2 configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ma/harness.hpp"
#include "ma/solver.hpp"

namespace {

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monge-Ampere solver: monotone wide-stencil and filtered schemes"};
  app.require_subcommand(1);

  ma::RunConfig cfg;
  double epsilon_override = 0.0;
  std::string out_path;
  std::string format = "json";
  std::string solution_path;

  CLI::App* solve = app.add_subcommand("solve", "Solve one configuration");
  solve->add_option("--example", cfg.example, "c2|c1|blowup|cone|eikonal1d")->required();
  solve->add_option("--n", cfg.n, "grid nodes per side")->required();
  solve->add_option("--width", cfg.width, "stencil width 1|2|3");
  solve->add_option("--scheme", cfg.scheme, "monotone|filtered");
  CLI::Option* eps_opt =
      solve->add_option("--epsilon", epsilon_override, "filter scale override");
  solve->add_option("--delta", cfg.delta, "second-derivative floor");
  solve->add_option("--tol", cfg.residual_tol, "residual max-norm stopping tolerance");
  solve->add_option("--max-iter", cfg.max_iter, "Newton iteration cap");
  solve->add_flag("--exact-filter-jacobian", cfg.exact_filter_jacobian,
                  "use the exact (possibly indefinite) filtered Jacobian");
  solve->add_option("--out", out_path, "report path ('-' for stdout)");
  solve->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("--solution", solution_path, "also write the solution CSV here");

  std::string study_example;
  std::vector<int> widths = {1, 2, 3};
  std::vector<int> ns = {31, 63, 127};
  std::vector<std::string> schemes = {"monotone", "filtered"};
  std::string study_out;
  std::string study_format = "csv";

  CLI::App* study = app.add_subcommand(
      "study", "Convergence study over schemes x widths x grid sizes "
               "(row parallelism via the MA_THREADS environment variable)");
  study->add_option("--example", study_example, "c2|c1|blowup|cone")->required();
  study->add_option("--widths", widths, "stencil widths")->delimiter(',');
  study->add_option("--ns", ns, "grid sizes")->delimiter(',');
  study->add_option("--schemes", schemes, "schemes")->delimiter(',');
  study->add_option("--delta", cfg.delta, "second-derivative floor");
  study->add_option("--tol", cfg.residual_tol, "residual stopping tolerance");
  study->add_option("--max-iter", cfg.max_iter, "Newton iteration cap");
  study->add_option("--out", study_out, "output path ('-' for stdout)");
  study->add_option("--format", study_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      if (eps_opt->count() > 0) cfg.epsilon = epsilon_override;
      ma::RunReport report;
      try {
        report = ma::run_single(cfg);
      } catch (const ma::ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        write_output(ma::error_report_json(cfg, e.what()), out_path);
        std::cerr << "solver failure: " << e.what() << "\n";
        return 1;
      }
      write_output(format == "csv" ? ma::run_report_csv(report)
                                   : ma::run_report_json(report),
                   out_path);
      if (!solution_path.empty()) {
        if (report.config.example == "eikonal1d")
          throw ma::ConfigError("--solution is only available for the 2D examples");
        ma::emit_solution(report.u, report.grid, solution_path);
      }
      if (!report.converged) {
        std::cerr << "solver failure: " << report.message << "\n";
        return 1;
      }
      return 0;
    }

    ma::RunConfig base = cfg;
    const auto rows = ma::convergence_study(study_example, widths, ns, schemes, base);
    write_output(study_format == "json" ? ma::study_json(study_example, rows)
                                        : ma::study_csv(rows),
                 study_out);
    return 0;
  } catch (const ma::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
