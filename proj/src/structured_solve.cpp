#include "lvie/structured_solve.hpp"

#include <algorithm>
#include <cmath>

#include "lvie/linear_solve.hpp"

namespace lvie {
namespace {

// Forward substitution of [f, -c_1, ..., -c_{m-1}] through the triangular
// part, then the small consistency system for the load values.
template <class FillRow>
std::vector<double> superpose(std::size_t n, const std::vector<std::size_t>& load_cols, FillRow&& fill) {
  const std::size_t loads = load_cols.size();
  const std::size_t k = loads + 1;
  std::vector<double> sol(n * k, 0.0);  // sol[p * k + r], r = 0 is the f column
  std::vector<double> acc(k);
  RowAssembler::Row row;

  for (std::size_t i = 0; i < n; ++i) {
    fill(i, row);
    acc[0] = row.rhs;
    for (std::size_t j = 0; j < loads; ++j) acc[j + 1] = -row.load[j];
    double row_scale = 0.0;
    for (std::size_t p = 0; p < i; ++p) {
      const double l = row.lower[p];
      row_scale = std::max(row_scale, std::abs(l));
      if (l == 0.0) continue;
      const double* xp = &sol[p * k];
      for (std::size_t r = 0; r < k; ++r) acc[r] -= l * xp[r];
    }
    const double diag = row.lower[i];
    row_scale = std::max(row_scale, std::abs(diag));
    if (diag == 0.0 || std::abs(diag) <= 1e-14 * row_scale) {
      throw SolvabilityFailure("triangular part has a vanishing diagonal at row " + std::to_string(i));
    }
    for (std::size_t r = 0; r < k; ++r) sol[i * k + r] = acc[r] / diag;
  }

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = sol[i * k];
  if (loads == 0) return x;

  DenseMatrix consistency(loads);
  std::vector<double> target(loads);
  for (std::size_t a = 0; a < loads; ++a) {
    const std::size_t v = load_cols[a];
    target[a] = sol[v * k];
    for (std::size_t b = 0; b < loads; ++b) consistency(a, b) = (a == b ? 1.0 : 0.0) - sol[v * k + b + 1];
  }
  const double scale = std::max(1.0, consistency.max_abs());
  if (rank_and_det(consistency, kSingularTolerance, scale).rank < loads) {
    throw SolvabilityFailure("load subsystem is singular");
  }
  std::vector<double> y;
  try {
    y = gauss_jordan(consistency, target);
  } catch (const SingularMatrixError& e) {
    throw SolvabilityFailure(std::string("load subsystem is singular: ") + e.what());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < loads; ++j) x[i] += y[j] * sol[i * k + j + 1];
  return x;
}

}  // namespace

std::vector<double> structured_solve(const CollocationSystem& sys) {
  const std::size_t n = sys.matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = sys.matrix.row(i);
    for (std::size_t p = i + 1; p < n; ++p) {
      if (r[p] != 0.0 && std::find(sys.load_columns.begin(), sys.load_columns.end(), p) == sys.load_columns.end()) {
        throw std::invalid_argument("system is not lower triangular outside the load columns");
      }
    }
  }
  return superpose(n, sys.load_columns, [&](std::size_t i, RowAssembler::Row& out) {
    const auto r = sys.matrix.row(i);
    out.lower.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i + 1));
    out.load.resize(sys.load_columns.size());
    for (std::size_t j = 0; j < sys.load_columns.size(); ++j) {
      out.load[j] = sys.load_coefficients[j][i];
      if (sys.load_columns[j] <= i) out.lower[sys.load_columns[j]] -= out.load[j];
    }
    out.rhs = sys.rhs[i];
  });
}

std::vector<double> structured_solve(const RowAssembler& rows) {
  const std::vector<std::size_t> cols(rows.load_columns().begin(), rows.load_columns().end());
  return superpose(rows.size(), cols, [&](std::size_t i, RowAssembler::Row& out) { rows.fill(i, out); });
}

}  // namespace lvie
