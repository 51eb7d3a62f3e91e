#include "lvie/linear_solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace lvie {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto r = row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;
  double magnitude = -1.0;
};

Position largest_in(const DenseMatrix& a, std::size_t from) {
  Position best;
  for (std::size_t i = from; i < a.size(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = from; j < a.size(); ++j) {
      const double m = std::abs(r[j]);
      if (m > best.magnitude) best = {i, j, m};
    }
  }
  return best;
}

void swap_columns(DenseMatrix& a, std::size_t c1, std::size_t c2) {
  if (c1 == c2) return;
  for (std::size_t i = 0; i < a.size(); ++i) std::swap(a(i, c1), a(i, c2));
}

void swap_rows(DenseMatrix& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  auto x = a.row(r1);
  auto y = a.row(r2);
  std::swap_ranges(x.begin(), x.end(), y.begin());
}

double threshold(const DenseMatrix& a, double tol, double scale) {
  if (scale < 0.0) scale = a.max_abs();
  return tol * scale;
}

bool acceptable(double magnitude, double thresh) { return magnitude > 0.0 && magnitude >= thresh; }

}  // namespace

std::vector<double> gauss_jordan(DenseMatrix a, std::span<const double> b_in, double tol_singular) {
  const std::size_t n = a.size();
  if (b_in.size() != n) throw std::invalid_argument("right-hand side size mismatch");
  std::vector<double> b(b_in.begin(), b_in.end());
  std::vector<std::size_t> column_of(n);
  std::iota(column_of.begin(), column_of.end(), std::size_t{0});

  const double thresh = threshold(a, tol_singular, -1.0);
  Position pivot = largest_in(a, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!acceptable(pivot.magnitude, thresh)) {
      throw SingularMatrixError("matrix is singular at elimination step " + std::to_string(k), k);
    }
    swap_rows(a, pivot.row, k);
    std::swap(b[pivot.row], b[k]);
    swap_columns(a, pivot.col, k);
    std::swap(column_of[pivot.col], column_of[k]);

    auto prow = a.row(k);
    const double inv = 1.0 / prow[k];
    for (std::size_t j = k + 1; j < n; ++j) prow[j] *= inv;
    prow[k] = 1.0;
    b[k] *= inv;

    // Eliminate column k from every other row; search the next pivot in the
    // trailing block while its rows are hot.
    Position next;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      auto r = a.row(i);
      const double factor = r[k];
      if (factor != 0.0) {
        for (std::size_t j = k + 1; j < n; ++j) r[j] -= factor * prow[j];
        b[i] -= factor * b[k];
        r[k] = 0.0;
      }
      if (i > k) {
        for (std::size_t j = k + 1; j < n; ++j) {
          const double m = std::abs(r[j]);
          if (m > next.magnitude) next = {i, j, m};
        }
      }
    }
    pivot = next;
  }

  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[column_of[k]] = b[k];
  return x;
}

RankReport rank_and_det(DenseMatrix a, double tol, double scale) {
  const std::size_t n = a.size();
  RankReport report;
  report.tolerance = threshold(a, tol, scale);
  int sign = 1;
  double log_abs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Position p = largest_in(a, k);
    if (!acceptable(p.magnitude, report.tolerance)) break;
    report.pivot_magnitudes.push_back(p.magnitude);
    if (p.row != k) {
      swap_rows(a, p.row, k);
      sign = -sign;
    }
    if (p.col != k) {
      swap_columns(a, p.col, k);
      sign = -sign;
    }
    const double pv = a(k, k);
    if (pv < 0) sign = -sign;
    log_abs += std::log(std::abs(pv));
    ++report.rank;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / pv;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
      a(i, k) = 0.0;
    }
  }
  if (report.rank == n) {
    report.det_sign = sign;
    report.log_abs_det = log_abs;
    report.det = sign * std::exp(log_abs);
  } else {
    report.det_sign = 0;
    report.log_abs_det = -std::numeric_limits<double>::infinity();
    report.det = 0.0;
  }
  return report;
}

std::vector<std::vector<double>> null_space(DenseMatrix a, double tol, double scale) {
  const std::size_t n = a.size();
  const double thresh = threshold(a, tol, scale);

  // Reduced row echelon form with partial pivoting; columns without an
  // acceptable pivot are free.
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(n, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(best, col))) best = i;
    if (!acceptable(std::abs(a(best, col)), thresh)) continue;
    swap_rows(a, best, row);
    const double pv = a(row, col);
    for (std::size_t j = 0; j < n; ++j) a(row, j) /= pv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row) continue;
      const double factor = a(i, col);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= factor * a(row, j);
    }
    pivot_cols.push_back(col);
    is_pivot[col] = true;
    ++row;
  }

  std::vector<std::vector<double>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<double> y(n, 0.0);
    y[free] = 1.0;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) y[pivot_cols[r]] = -a(r, free);
    basis.push_back(std::move(y));
  }
  return basis;
}

}  // namespace lvie
