#include "lvie/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "lvie/assembly.hpp"
#include "lvie/linear_solve.hpp"
#include "lvie/structured_solve.hpp"

namespace lvie {

double PiecewiseLinearSolution::evaluate(double t) const {
  const auto& tau = grid.nodes;
  if (!(t >= tau.front() && t <= tau.back())) throw std::out_of_range("t outside the solution interval");
  const auto it = std::lower_bound(tau.begin(), tau.end(), t);
  const auto i = static_cast<std::size_t>(it - tau.begin());
  if (*it == t) return values[i];
  const double slope = (values[i] - values[i - 1]) / (tau[i] - tau[i - 1]);
  return values[i - 1] + slope * (t - tau[i - 1]);
}

SolverKind parse_solver(std::string_view name) {
  if (name == "dense") return SolverKind::Dense;
  if (name == "structured") return SolverKind::Structured;
  if (name == "auto") return SolverKind::Auto;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "' (dense, structured, auto)");
}

PiecewiseLinearSolution solve(const Problem& p, double h, SolverKind solver) {
  PiecewiseLinearSolution sol{build_grid(p, h), {}};
  if (solver == SolverKind::Auto) {
    solver = sol.grid.size() <= kMaxDenseUnknowns ? SolverKind::Dense : SolverKind::Structured;
  }
  if (solver == SolverKind::Dense) {
    CollocationSystem sys = assemble(p, sol.grid);
    sol.values = gauss_jordan(std::move(sys.matrix), sys.rhs);
  } else {
    sol.values = structured_solve(RowAssembler(p, sol.grid));
  }
  return sol;
}

double sup_error(const PiecewiseLinearSolution& sol, const ScalarFunction& exact, int samples_per_interval) {
  if (samples_per_interval < 1) throw std::invalid_argument("samples_per_interval must be >= 1");
  const auto& tau = sol.grid.nodes;
  double worst = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    worst = std::max(worst, std::abs(sol.values[i] - exact(tau[i])));
    if (i == 0) continue;
    for (int k = 1; k < samples_per_interval; ++k) {
      const double t = tau[i - 1] + (tau[i] - tau[i - 1]) * k / samples_per_interval;
      const double w = static_cast<double>(k) / samples_per_interval;
      const double interp = (1.0 - w) * sol.values[i - 1] + w * sol.values[i];
      worst = std::max(worst, std::abs(interp - exact(t)));
    }
  }
  return worst;
}

double convergence_order(double eps_prev, double eps_cur, double h_prev, double h_cur) {
  if (!(eps_prev > 0.0) || !(eps_cur > 0.0)) throw UndefinedOrder("convergence order needs positive errors");
  if (!(h_prev > 0.0) || !(h_cur > 0.0) || h_prev == h_cur) {
    throw UndefinedOrder("convergence order needs distinct positive steps");
  }
  return std::log(eps_prev / eps_cur) / std::log(h_prev / h_cur);
}

std::vector<StudyRow> run_study(const Problem& p, const StudyOptions& opts) {
  if (!p.exact) throw std::invalid_argument("a convergence study needs the exact solution");
  if (opts.levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (opts.h0.num() <= 0) throw std::invalid_argument("h0 must be positive");

  const int levels = opts.levels;
  std::vector<StudyRow> rows(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) rows[static_cast<std::size_t>(k)].h = opts.h0.halved(k);

  std::atomic<int> next{0};
  std::mutex failure_mutex;
  std::optional<StudyError> failure;

  auto worker = [&] {
    for (int k = next++; k < levels; k = next++) {
      StudyRow& row = rows[static_cast<std::size_t>(k)];
      try {
        const auto start = std::chrono::steady_clock::now();
        const auto sol = solve(p, row.h.value(), opts.solver);
        row.eps = sup_error(sol, *p.exact, opts.samples_per_interval);
        row.N = sol.grid.last_index();
        row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure || failure->level() > k) {
          failure.emplace("level " + std::to_string(k) + " (h=" + row.h.str() + "): " + e.what(), k);
        }
      }
    }
  };

  const unsigned threads = std::clamp<unsigned>(opts.max_threads, 1u, static_cast<unsigned>(levels));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) throw *failure;

  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k - 1].eps > 0.0 && rows[k].eps > 0.0) {
      rows[k].r = convergence_order(rows[k - 1].eps, rows[k].eps, rows[k - 1].h.value(), rows[k].h.value());
    }
  }
  return rows;
}

double loglog_slope(std::span<const StudyRow> rows) {
  if (rows.size() < 2) throw std::invalid_argument("slope needs at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(r.h.value());
    const double y = std::log(r.eps);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EmitFormat parse_format(std::string_view name) {
  if (name == "csv") return EmitFormat::Csv;
  if (name == "md" || name == "markdown") return EmitFormat::Markdown;
  if (name == "plotdata" || name == "plot") return EmitFormat::PlotData;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (csv, md, plotdata)");
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

std::string emit(std::span<const StudyRow> rows, EmitFormat format, bool timing) {
  std::ostringstream out;
  switch (format) {
    case EmitFormat::Csv:
      out << "h,N,eps,r,wall_time_s\n";
      for (const auto& r : rows) {
        out << format_sci(r.h.value()) << ',' << r.N << ',' << format_sci(r.eps) << ','
            << (r.r ? format_sci(*r.r) : "") << ',' << (timing ? format_sci(r.wall_time_s) : "") << '\n';
      }
      break;
    case EmitFormat::Markdown:
      out << "| h | eps_h | r |\n|---|---|---|\n";
      for (const auto& r : rows) {
        out << "| " << r.h.str() << " | " << format_sci(r.eps) << " | "
            << (r.r ? format_sci(*r.r) : "---") << " |\n";
      }
      break;
    case EmitFormat::PlotData:
      out << "# ln_h ln_eps\n";
      for (const auto& r : rows) out << format_sci(std::log(r.h.value())) << ' ' << format_sci(std::log(r.eps)) << '\n';
      break;
  }
  return out.str();
}

}  // namespace lvie
