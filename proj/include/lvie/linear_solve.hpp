#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvie/dense_matrix.hpp"

namespace lvie {

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  /// Elimination step (0-based) at which no acceptable pivot remained.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

inline constexpr double kSingularTolerance = 1e-12;
inline constexpr double kRankTolerance = 1e-10;

/// Gauss-Jordan elimination with full (row and column) pivoting on the
/// largest remaining entry. A pivot smaller than tol_singular times the
/// largest initial |a_ij| is treated as singular.
std::vector<double> gauss_jordan(DenseMatrix a, std::span<const double> b,
                                 double tol_singular = kSingularTolerance);

struct RankReport {
  std::size_t rank = 0;
  double det = 0.0;          // 0 whenever rank < n
  int det_sign = 0;          // -1, 0, +1
  double log_abs_det = 0.0;  // -inf when rank < n
  std::vector<double> pivot_magnitudes;
  double tolerance = 0.0;    // absolute threshold actually applied
};

/// Gaussian elimination with full pivoting. A pivot counts towards the rank
/// when it is nonzero and >= tol * scale; scale defaults to the largest
/// initial |a_ij|.
RankReport rank_and_det(DenseMatrix a, double tol = kRankTolerance, double scale = -1.0);

/// Basis of {y : a y = 0}, with the same pivot threshold rule as rank_and_det.
std::vector<std::vector<double>> null_space(DenseMatrix a, double tol = kRankTolerance, double scale = -1.0);

}  // namespace lvie
