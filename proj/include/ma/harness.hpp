#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ma/grid.hpp"
#include "ma/types.hpp"

namespace ma {

// Invalid run configuration (unknown names, bad sizes, even-n cone, ...).
// The CLI maps this to exit status 2; solver failures map to 1.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string example = "c2";  // c2 | c1 | blowup | cone | eikonal1d
  int n = 31;
  int width = 2;                    // stencil width, in {1,2,3}
  std::string scheme = "filtered";  // monotone | filtered
  std::optional<double> epsilon;    // filter-scale override
  double delta = 1e-9;
  double residual_tol = 1e-8;
  int max_iter = 50;
  bool exact_filter_jacobian = false;
};

// Fractions of interior nodes per filter branch at the final iterate.
struct FilterFractions {
  double accurate = 0.0;  // |arg| <= 1
  double monotone = 0.0;  // |arg| >= 2
  double blend = 0.0;     // in between
};

struct RunReport {
  RunConfig config;
  double h = 0.0;
  double dtheta = 0.0;
  double epsilon = 0.0;
  std::optional<double> max_error;  // present iff the problem has an exact solution
  int iterations = 0;
  double wall_time = 0.0;  // seconds, Newton loop only
  double residual_norm = 0.0;
  bool converged = false;
  std::string message;  // diagnostic when not converged
  FilterFractions fractions;
  GridFunction u;  // final iterate (2D runs and the 1D demo)
  Grid grid;       // valid for 2D runs
};

// Builds grid, direction set and problem, initializes, and runs Newton on
// the selected scheme.  Throws ConfigError for invalid configurations and
// NewtonError/LinearSolveError on solver breakdown; a stalled or
// non-converged solve is returned with converged = false.
RunReport run_single(const RunConfig& config);

struct StudyRow {
  std::string example;
  std::string scheme;
  int width = 0;
  int n = 0;
  double h = 0.0;
  double dtheta = 0.0;
  double epsilon = 0.0;
  std::optional<double> max_error;
  int iterations = 0;
  double wall_time = 0.0;
  std::optional<double> order;  // vs the previous row when h roughly halves
  std::string status = "ok";
};

// Cross product of schemes x widths x ns for one example.  Per-row failures
// are recorded in the row's status and the study continues.  Rows run in
// parallel worker threads (override the count with the MA_THREADS
// environment variable); output order is by configuration, not completion.
// Observed convergence orders log(e1/e2)/log(h1/h2) are attached to the
// finer row of each consecutive pair whose spacing ratio is close to 2.
std::vector<StudyRow> convergence_study(const std::string& example,
                                        const std::vector<int>& widths,
                                        const std::vector<int>& ns,
                                        const std::vector<std::string>& schemes,
                                        const RunConfig& base = {});

// Serialization.  CSV columns are fixed:
//   example,scheme,width,n,h,dtheta,epsilon,max_error,iterations,wall_time,order,status
// Floating-point values use shortest round-trip formatting.
std::string study_csv(const std::vector<StudyRow>& rows);
std::string study_json(const std::string& example, const std::vector<StudyRow>& rows);
std::string run_report_json(const RunReport& report);
std::string run_report_csv(const RunReport& report);
std::string error_report_json(const RunConfig& config, const std::string& message);

// Writes `x,y,u,gx,gy` with centered-difference gradient samples at
// interior nodes; boundary rows carry empty gradient fields.  Values
// round-trip bit-exactly through the decimal text.
void emit_solution(const GridFunction& u, const Grid& grid, const std::string& path);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace ma
