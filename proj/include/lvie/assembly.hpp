#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvie/dense_matrix.hpp"
#include "lvie/grid.hpp"
#include "lvie/problem.hpp"

namespace lvie {

/// A coefficient function failed while building row `row` at abscissa `abscissa`.
class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(const std::string& what, std::size_t row, double abscissa);
  std::size_t row() const noexcept { return row_; }
  double abscissa() const noexcept { return abscissa_; }

 private:
  std::size_t row_;
  double abscissa_;
};

/// Product midpoint weight J for subinterval p in row i:
/// (lambda/2) * (tau_p - tau_{p-1}) * K(tau_i, (tau_{p-1} + tau_p)/2).
/// It multiplies both x_{p-1} and x_p. Requires 1 <= p <= i <= N.
double quad_weight(std::size_t p, std::size_t i, const Grid& g, const ScalarFunction& kernel, double lambda);

/// Streams the collocation equations one row at a time.
///
/// Row i reads  sum_{p<=i} lower[p] x_p + sum_j load[j] x_{v_j} = rhs,
/// where lower holds a0(tau_i) on the diagonal minus the midpoint weights and
/// load[j] = a_j(tau_i). The load terms are kept apart from the triangular
/// part so solvers can treat them separately.
class RowAssembler {
 public:
  struct Row {
    std::vector<double> lower;  // columns 0..i
    std::vector<double> load;   // one entry per load column
    double rhs = 0.0;
  };

  RowAssembler(const Problem& p, const Grid& g);

  std::size_t size() const noexcept { return grid_->size(); }
  const Grid& grid() const noexcept { return *grid_; }
  const Problem& problem() const noexcept { return *problem_; }
  std::span<const std::size_t> load_columns() const noexcept { return grid_->load_indices; }

  /// Overwrites `out` with row i; reuses its storage.
  void fill(std::size_t i, Row& out) const;

 private:
  const Problem* problem_;
  const Grid* grid_;
  std::vector<double> midpoints_;
  std::vector<double> half_widths_;  // (tau_p - tau_{p-1}) / 2, index p
};

/// Largest system materialized densely; larger grids must stream.
inline constexpr std::size_t kMaxDenseUnknowns = 4097;

struct CollocationSystem {
  DenseMatrix matrix;
  std::vector<double> rhs;
  std::vector<std::size_t> load_columns;
  /// a_j(tau_i) for every row, one vector per load; already added into matrix.
  std::vector<std::vector<double>> load_coefficients;
  const Grid* grid = nullptr;
};

/// Throws ParameterError when the grid exceeds kMaxDenseUnknowns nodes.
CollocationSystem assemble(const Problem& p, const Grid& g);

/// Max-abs collocation residual of nodal values x; streams rows, so it works
/// at any grid size.
double residual(const Problem& p, const Grid& g, std::span<const double> x);

}  // namespace lvie
