#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lvie/grid.hpp"
#include "lvie/problem.hpp"
#include "lvie/rational.hpp"

namespace lvie {

/// X_N(t): linear interpolation of nodal values on the grid.
struct PiecewiseLinearSolution {
  Grid grid;
  std::vector<double> values;

  /// Throws std::out_of_range outside [tau_0, tau_N].
  double evaluate(double t) const;
};

enum class SolverKind {
  Dense,       // Gauss-Jordan with full pivoting on the assembled matrix
  Structured,  // streaming triangular-plus-loads superposition
  Auto,        // dense up to kMaxDenseUnknowns nodes, structured beyond
};

SolverKind parse_solver(std::string_view name);

PiecewiseLinearSolution solve(const Problem& p, double h, SolverKind solver = SolverKind::Auto);

/// max |X_N - x| over the nodes plus samples_per_interval - 1 equispaced
/// interior points of every subinterval.
double sup_error(const PiecewiseLinearSolution& sol, const ScalarFunction& exact, int samples_per_interval = 1);

class UndefinedOrder : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// ln(eps_prev/eps_cur) / ln(h_prev/h_cur).
double convergence_order(double eps_prev, double eps_cur, double h_prev, double h_cur);

struct StudyRow {
  Rational h;
  std::size_t N = 0;  // index of the last node; the grid has N + 1 nodes
  double eps = 0.0;
  std::optional<double> r;
  double wall_time_s = 0.0;
};

struct StudyOptions {
  Rational h0{1, 8};
  int levels = 6;
  SolverKind solver = SolverKind::Auto;
  int samples_per_interval = 1;
  unsigned max_threads = 1;  // levels solved concurrently
};

class StudyError : public std::runtime_error {
 public:
  StudyError(const std::string& what, int level) : std::runtime_error(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// Solves at h0 / 2^k for k = 0..levels-1; rows come back ordered by
/// decreasing h regardless of completion order.
std::vector<StudyRow> run_study(const Problem& p, const StudyOptions& opts);

/// Least-squares slope of ln(eps) against ln(h).
double loglog_slope(std::span<const StudyRow> rows);

enum class EmitFormat { Csv, Markdown, PlotData };

EmitFormat parse_format(std::string_view name);

/// csv:      header h,N,eps,r,wall_time_s; r empty on the first row
/// markdown: | h | eps_h | r | table, h written as a fraction
/// plotdata: "ln_h ln_eps" pairs, whitespace separated
/// Reals are printed in scientific notation with 6 significant digits. With
/// timing disabled the wall_time_s field is left empty.
std::string emit(std::span<const StudyRow> rows, EmitFormat format, bool timing = true);

std::string format_sci(double v);

}  // namespace lvie
