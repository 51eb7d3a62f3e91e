#include "lvie/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "lvie/problem.hpp"
#include "lvie/problem_config.hpp"
#include "lvie/rational.hpp"
#include "lvie/resolvent.hpp"
#include "lvie/study.hpp"

namespace lvie {
namespace {

struct ProblemSource {
  std::string builtin;
  std::string config;
  std::optional<double> lambda;

  void add_to(CLI::App& cmd) {
    auto* b = cmd.add_option("--builtin", builtin, "built-in problem (model1, model2)");
    auto* c = cmd.add_option("--config", config, "problem config file");
    b->excludes(c);
    cmd.add_option("--lambda", lambda, "override the problem's lambda");
  }

  Problem load() const {
    if (builtin.empty() && config.empty()) throw std::invalid_argument("one of --builtin or --config is required");
    Problem p = builtin.empty() ? load_problem_config(config) : builtin_problem(builtin);
    if (lambda) p.lambda = *lambda;
    if (const auto report = validate_problem(p); !report) {
      throw std::invalid_argument("invalid problem: " + report.message);
    }
    return p;
  }
};

Rational positive_step(const std::string& text, const char* what) {
  const Rational r = Rational::parse(text);
  if (r.num() <= 0) throw std::invalid_argument(std::string(what) + " must be positive");
  return r;
}

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LVIE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) cap = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // ignored: fall back to the hardware count
    }
  }
  return cap;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

std::string solution_csv(const PiecewiseLinearSolution& sol) {
  std::ostringstream csv;
  csv << "t,x\n";
  char buf[64];
  for (std::size_t i = 0; i < sol.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", sol.grid.nodes[i], sol.values[i]);
    csv << buf;
  }
  return csv.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piecewise-linear collocation solver for loaded Volterra integral equations", "lvie"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list-problems", "list the built-in problems");

  ProblemSource solve_src;
  std::string solve_h;
  std::string solve_solver = "auto";
  std::string solve_out;
  int solve_samples = 1;
  auto* solve_cmd = app.add_subcommand("solve", "solve one problem at one step size");
  solve_src.add_to(*solve_cmd);
  solve_cmd->add_option("--h", solve_h, "step size, e.g. 1/32")->required();
  solve_cmd->add_option("--solver", solve_solver, "dense, structured or auto");
  solve_cmd->add_option("--out", solve_out, "solution CSV (t,x); stdout when omitted");
  solve_cmd->add_option("--samples-per-interval", solve_samples, "error sampling points per subinterval");

  ProblemSource study_src;
  std::string study_h0 = "1/8";
  int study_levels = 6;
  std::string study_solver = "auto";
  std::string study_format = "csv";
  std::string study_out;
  bool no_timing = false;
  int study_samples = 1;
  auto* study_cmd = app.add_subcommand("study", "convergence study over h0, h0/2, h0/4, ...");
  study_src.add_to(*study_cmd);
  study_cmd->add_option("--h0", study_h0, "coarsest step");
  study_cmd->add_option("--levels", study_levels, "number of halvings + 1");
  study_cmd->add_option("--solver", study_solver, "dense, structured or auto");
  study_cmd->add_option("--format", study_format, "csv, md or plotdata");
  study_cmd->add_option("--out", study_out, "output file; stdout when omitted");
  study_cmd->add_flag("--no-timing", no_timing, "leave the wall_time_s column empty");
  study_cmd->add_option("--samples-per-interval", study_samples, "error sampling points per subinterval");

  ProblemSource analyze_src;
  std::optional<double> lambda_from, lambda_to;
  int steps = 0;
  ResolventConfig rcfg;
  ClassifyTolerance ctol;
  std::string analyze_out;
  auto* analyze_cmd = app.add_subcommand("analyze", "solvability of the load system over lambda");
  analyze_src.add_to(*analyze_cmd);
  analyze_cmd->add_option("--lambda-from", lambda_from, "sweep start");
  analyze_cmd->add_option("--lambda-to", lambda_to, "sweep end");
  analyze_cmd->add_option("--steps", steps, "sweep points, endpoints included");
  analyze_cmd->add_option("--quad-density", rcfg.quad_density, "trapezoid nodes per unit length");
  analyze_cmd->add_option("--max-terms", rcfg.max_terms, "resolvent series term budget");
  analyze_cmd->add_option("--term-tol", rcfg.term_tolerance, "resolvent series truncation tolerance");
  analyze_cmd->add_option("--rank-tol", ctol.rank, "relative rank tolerance");
  analyze_cmd->add_option("--orth-tol", ctol.orthogonality, "orthogonality tolerance");
  analyze_cmd->add_option("--out", analyze_out, "output file; stdout when omitted");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& name : builtin_names()) {
        const Problem p = builtin_problem(name);
        out << name << "  lambda=" << p.lambda << "  loads=" << p.loads.size()
            << "  exact=" << (p.exact ? p.exact->description() : "none") << "\n";
      }
      return 0;
    }

    if (solve_cmd->parsed()) {
      const Problem p = solve_src.load();
      const Rational h = positive_step(solve_h, "h");
      const auto sol = solve(p, h.value(), parse_solver(solve_solver));
      write_output(solve_out, solution_csv(sol), out);
      std::ostream& summary = solve_out.empty() ? err : out;
      summary << "nodes=" << sol.grid.size() << " N=" << sol.grid.last_index();
      if (p.exact) summary << " eps=" << format_sci(sup_error(sol, *p.exact, solve_samples));
      summary << "\n";
      return 0;
    }

    if (study_cmd->parsed()) {
      const Problem p = study_src.load();
      StudyOptions opts;
      opts.h0 = positive_step(study_h0, "h0");
      opts.levels = study_levels;
      opts.solver = parse_solver(study_solver);
      opts.samples_per_interval = study_samples;
      opts.max_threads = thread_cap();
      const EmitFormat format = parse_format(study_format);
      const auto rows = run_study(p, opts);
      write_output(study_out, emit(rows, format, !no_timing), out);
      return 0;
    }

    if (analyze_cmd->parsed()) {
      const Problem p = analyze_src.load();
      std::vector<double> lambdas;
      if (lambda_from || lambda_to || steps) {
        if (!lambda_from || !lambda_to || steps < 1) {
          throw std::invalid_argument("a sweep needs --lambda-from, --lambda-to and --steps >= 1");
        }
        for (int k = 0; k < steps; ++k) {
          const double w = steps == 1 ? 0.0 : static_cast<double>(k) / (steps - 1);
          lambdas.push_back(k == steps - 1 ? *lambda_to : *lambda_from + w * (*lambda_to - *lambda_from));
        }
      } else {
        lambdas.push_back(p.lambda);
      }
      std::ostringstream csv;
      csv << "lambda,detA,rank,classification,orthogonality_defect\n";
      for (double lambda : lambdas) {
        const ResolventSeries series(p, lambda, rcfg);
        const auto report = classify(series, ctol);
        if (!report.series_converged) {
          err << "warning: resolvent series not converged at lambda=" << format_sci(lambda) << "\n";
        }
        csv << format_sci(lambda) << ',' << format_sci(report.det) << ',' << report.rank << ',' << report.label()
            << ',' << format_sci(report.orthogonality_defect) << '\n';
      }
      write_output(analyze_out, csv.str(), out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lvie
