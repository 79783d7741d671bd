#include "ma/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ma/filter.hpp"
#include "ma/operators.hpp"
#include "ma/problems.hpp"
#include "ma/solver.hpp"

namespace ma {

namespace {

const std::vector<std::string> k2dExamples = {"c2", "c1", "blowup", "cone"};

bool is_2d_example(const std::string& name) {
  for (const auto& e : k2dExamples)
    if (e == name) return true;
  return false;
}

void validate(const RunConfig& cfg) {
  if (!is_2d_example(cfg.example) && cfg.example != "eikonal1d")
    throw ConfigError("unknown example '" + cfg.example + "'");
  if (cfg.scheme != "monotone" && cfg.scheme != "filtered")
    throw ConfigError("unknown scheme '" + cfg.scheme + "' (use monotone or filtered)");
  if (cfg.n < 3) throw ConfigError("n must be >= 3");
  if (cfg.width < 1 || cfg.width > 3) throw ConfigError("width must be 1, 2 or 3");
  if (cfg.example == "cone" && cfg.n % 2 == 0)
    throw ConfigError("the cone example needs odd n so its vertex is a grid node");
  if (cfg.example == "eikonal1d" && (cfg.n < 5 || cfg.n % 2 == 0))
    throw ConfigError("eikonal1d needs odd n >= 5");
  if (cfg.epsilon && !(*cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(cfg.delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(cfg.residual_tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.max_iter < 1) throw ConfigError("max-iter must be >= 1");
}

FilterFractions classify_interior(const std::vector<double>& args,
                                  const std::vector<bool>& interior) {
  FilterFractions fr;
  long count = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!interior[i]) continue;
    ++count;
    const double a = std::abs(args[i]);
    if (a <= 1.0)
      fr.accurate += 1.0;
    else if (a >= 2.0)
      fr.monotone += 1.0;
    else
      fr.blend += 1.0;
  }
  if (count > 0) {
    fr.accurate /= count;
    fr.monotone /= count;
    fr.blend /= count;
  }
  return fr;
}

RunReport run_eikonal(const RunConfig& cfg) {
  SolverConfig sc;
  sc.residual_tol = cfg.residual_tol;
  sc.max_iter = cfg.max_iter;

  RunReport rep;
  rep.config = cfg;
  EikonalResult res = eikonal_filtered_solve(cfg.n, sc);
  rep.h = res.h;
  rep.epsilon = cfg.epsilon.value_or(res.h);  // the 1D demo filters at scale h
  rep.max_error = res.max_error;
  rep.iterations = res.report.iterations;
  rep.wall_time = res.report.wall_time;
  rep.residual_norm =
      res.report.residual_history.empty() ? 0.0 : res.report.residual_history.back();
  rep.converged = res.report.converged;
  rep.message = res.report.message;

  const auto args = filter_arguments(eikonal_monotone_eval(res.u, res.h),
                                     eikonal_accurate_eval(res.u, res.h), res.h);
  std::vector<bool> interior(args.size(), true);
  interior.front() = interior.back() = false;
  rep.fractions = classify_interior(args, interior);
  rep.u = std::move(res.u);
  return rep;
}

}  // namespace

RunReport run_single(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.example == "eikonal1d") return run_eikonal(cfg);

  const Grid grid = build_grid(cfg.n);
  const DirectionSet dirs = build_direction_set(cfg.width);
  const Problem prob = make_example(cfg.example, grid.h);
  const double eps = cfg.epsilon ? *cfg.epsilon : epsilon_rule(grid.h, dirs.dtheta);
  const MonotoneParams mp{cfg.delta};
  const FilterParams fp{eps, cfg.exact_filter_jacobian};

  SchemeEvaluator scheme;
  if (cfg.scheme == "monotone") {
    scheme = [&](const GridFunction& u) {
      return monotone_ma_eval(u, prob, grid, dirs, mp);
    };
  } else {
    scheme = [&](const GridFunction& u) {
      return filtered_eval(monotone_ma_eval(u, prob, grid, dirs, mp),
                           standard_ma_eval(u, prob, grid), fp);
    };
  }

  SolverConfig sc;
  sc.residual_tol = cfg.residual_tol;
  sc.max_iter = cfg.max_iter;

  GridFunction u0 = initial_guess(prob, grid);
  auto [u, solve] = newton_solve(scheme, std::move(u0), sc);

  RunReport rep;
  rep.config = cfg;
  rep.grid = grid;
  rep.h = grid.h;
  rep.dtheta = dirs.dtheta;
  rep.epsilon = eps;
  rep.iterations = solve.iterations;
  rep.wall_time = solve.wall_time;
  rep.residual_norm = solve.residual_history.back();
  rep.converged = solve.converged;
  rep.message = solve.message;

  if (prob.has_exact()) {
    double err = 0.0;
    for (int node = 0; node < grid.num_nodes(); ++node) {
      const double x = grid.x(grid.ix(node));
      const double y = grid.y(grid.iy(node));
      err = std::max(err, std::abs(u[node] - prob.exact(x, y)));
    }
    rep.max_error = err;
  }

  const auto args = filter_arguments(monotone_ma_eval(u, prob, grid, dirs, mp),
                                     standard_ma_eval(u, prob, grid), eps);
  std::vector<bool> interior(args.size());
  for (int node = 0; node < grid.num_nodes(); ++node)
    interior[node] = grid.is_interior(node);
  rep.fractions = classify_interior(args, interior);

  rep.u = std::move(u);
  return rep;
}

std::vector<StudyRow> convergence_study(const std::string& example,
                                        const std::vector<int>& widths,
                                        const std::vector<int>& ns,
                                        const std::vector<std::string>& schemes,
                                        const RunConfig& base) {
  if (!is_2d_example(example))
    throw ConfigError("convergence_study: example must be one of c2, c1, blowup, cone");

  std::vector<RunConfig> cfgs;
  for (const std::string& s : schemes)
    for (int w : widths)
      for (int n : ns) {
        RunConfig c = base;
        c.example = example;
        c.scheme = s;
        c.width = w;
        c.n = n;
        cfgs.push_back(c);
      }
  for (const RunConfig& c : cfgs) validate(c);

  std::vector<StudyRow> rows(cfgs.size());

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MA_THREADS")) {
    const unsigned v = unsigned(std::strtoul(env, nullptr, 10));
    if (v >= 1) threads = v;
  }
  threads = std::min(threads, unsigned(std::max<std::size_t>(cfgs.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cfgs.size()) return;
      StudyRow& row = rows[k];
      const RunConfig& c = cfgs[k];
      row.example = c.example;
      row.scheme = c.scheme;
      row.width = c.width;
      row.n = c.n;
      try {
        RunReport r = run_single(c);
        row.h = r.h;
        row.dtheta = r.dtheta;
        row.epsilon = r.epsilon;
        row.max_error = r.max_error;
        row.iterations = r.iterations;
        row.wall_time = r.wall_time;
        row.status = r.converged ? "ok" : "not converged: " + r.message;
      } catch (const std::exception& e) {
        row.h = c.n > 1 ? 1.0 / (c.n - 1) : 0.0;
        row.status = e.what();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Observed order between consecutive rows of the same (scheme, width)
  // group whenever the spacing roughly halves (the table sequence
  // 31, 63, 127, 255 steps by n -> 2n+1).
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const StudyRow& a = rows[k - 1];
    StudyRow& b = rows[k];
    if (a.scheme != b.scheme || a.width != b.width) continue;
    if (a.status != "ok" || b.status != "ok") continue;
    if (!a.max_error || !b.max_error) continue;
    const double ratio = a.h / b.h;
    if (ratio < 1.8 || ratio > 2.2) continue;
    if (*a.max_error <= 0.0 || *b.max_error <= 0.0) continue;
    b.order = std::log(*a.max_error / *b.max_error) / std::log(ratio);
  }
  return rows;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string row_csv(const StudyRow& r) {
  std::string line = r.example + "," + r.scheme + "," + std::to_string(r.width) + "," +
                     std::to_string(r.n) + "," + format_double(r.h) + "," +
                     format_double(r.dtheta) + "," + format_double(r.epsilon) + ",";
  if (r.max_error) line += format_double(*r.max_error);
  line += "," + std::to_string(r.iterations) + "," + format_double(r.wall_time) + ",";
  if (r.order) line += format_double(*r.order);
  line += "," + csv_escape(r.status);
  return line;
}

nlohmann::json row_json(const StudyRow& r) {
  nlohmann::json j;
  j["example"] = r.example;
  j["scheme"] = r.scheme;
  j["width"] = r.width;
  j["n"] = r.n;
  j["h"] = r.h;
  j["dtheta"] = r.dtheta;
  j["epsilon"] = r.epsilon;
  j["max_error"] = r.max_error ? nlohmann::json(*r.max_error) : nlohmann::json();
  j["iterations"] = r.iterations;
  j["wall_time"] = r.wall_time;
  j["order"] = r.order ? nlohmann::json(*r.order) : nlohmann::json();
  j["status"] = r.status;
  return j;
}

constexpr const char* kStudyHeader =
    "example,scheme,width,n,h,dtheta,epsilon,max_error,iterations,wall_time,order,status";

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["example"] = c.example;
  j["n"] = c.n;
  j["width"] = c.width;
  j["scheme"] = c.scheme;
  j["epsilon"] = c.epsilon ? nlohmann::json(*c.epsilon) : nlohmann::json();
  j["delta"] = c.delta;
  j["tol"] = c.residual_tol;
  j["max_iter"] = c.max_iter;
  return j;
}

StudyRow report_to_row(const RunReport& r) {
  StudyRow row;
  row.example = r.config.example;
  row.scheme = r.config.scheme;
  row.width = r.config.width;
  row.n = r.config.n;
  row.h = r.h;
  row.dtheta = r.dtheta;
  row.epsilon = r.epsilon;
  row.max_error = r.max_error;
  row.iterations = r.iterations;
  row.wall_time = r.wall_time;
  row.status = r.converged ? "ok" : "not converged: " + r.message;
  return row;
}

}  // namespace

std::string study_csv(const std::vector<StudyRow>& rows) {
  std::string out = std::string(kStudyHeader) + "\n";
  for (const StudyRow& r : rows) out += row_csv(r) + "\n";
  return out;
}

std::string study_json(const std::string& example, const std::vector<StudyRow>& rows) {
  nlohmann::json j;
  j["example"] = example;
  j["rows"] = nlohmann::json::array();
  for (const StudyRow& r : rows) j["rows"].push_back(row_json(r));
  return j.dump(2) + "\n";
}

std::string run_report_json(const RunReport& r) {
  nlohmann::json j;
  j["config"] = config_json(r.config);
  j["max_error"] = r.max_error ? nlohmann::json(*r.max_error) : nlohmann::json();
  j["iterations"] = r.iterations;
  j["wall_time"] = r.wall_time;
  j["residual_norm"] = r.residual_norm;
  j["filter_fractions"] = {{"accurate", r.fractions.accurate},
                           {"monotone", r.fractions.monotone},
                           {"blend", r.fractions.blend}};
  return j.dump(2) + "\n";
}

std::string run_report_csv(const RunReport& r) {
  return std::string(kStudyHeader) + "\n" + row_csv(report_to_row(r)) + "\n";
}

std::string error_report_json(const RunConfig& config, const std::string& message) {
  nlohmann::json j;
  j["error"] = message;
  j["config"] = config_json(config);
  return j.dump(2) + "\n";
}

void emit_solution(const GridFunction& u, const Grid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_solution: cannot open '" + path + "'");
  out << "x,y,u,gx,gy\n";
  const double i2h = 1.0 / (2.0 * grid.h);
  for (int node = 0; node < grid.num_nodes(); ++node) {
    const int i = grid.ix(node);
    const int j = grid.iy(node);
    out << format_double(grid.x(i)) << ',' << format_double(grid.y(j)) << ','
        << format_double(u[node]);
    if (grid.is_interior(i, j)) {
      const double gx = (u[grid.index(i + 1, j)] - u[grid.index(i - 1, j)]) * i2h;
      const double gy = (u[grid.index(i, j + 1)] - u[grid.index(i, j - 1)]) * i2h;
      out << ',' << format_double(gx) << ',' << format_double(gy) << '\n';
    } else {
      out << ",,\n";
    }
  }
  if (!out) throw std::runtime_error("emit_solution: write failed for '" + path + "'");
}

}  // namespace ma
