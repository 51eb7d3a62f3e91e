#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvie/dense_matrix.hpp"
#include "lvie/problem.hpp"

namespace lvie {

struct ResolventConfig {
  int quad_density = 512;        // trapezoid nodes per unit length
  int max_terms = 40;
  double term_tolerance = 1e-12;  // stop once |lambda|^n max|K_n| drops below this
};

/// Truncated Neumann series R(t,s) = sum_n lambda^n K_n(t,s) of the problem
/// kernel, after dividing the equation through by a0(t).
///
/// lambda enters with the sign it has in the problem equation
/// a0 x + sum a_j x(t_j) = lambda int K x + f, so F = f + int R f solves the
/// load-free part directly.
///
/// Iterated kernels are tabulated per evaluation row: for fixed t the values
/// K_n(t, s_b) on a uniform grid s_b in [lower, t] follow from
/// K_n(t,s) = int_s^t K_{n-1}(t,z) K(z,s) dz by the composite trapezoid rule.
class ResolventSeries {
 public:
  struct Row {
    std::vector<double> s_nodes;  // uniform, s_nodes.front() = lower, back() = t
    std::vector<double> values;   // R(t, s_b)
    int terms = 0;
    bool converged = true;
  };

  struct Value {
    double value = 0.0;
    int terms = 0;
    bool converged = true;
  };

  ResolventSeries(const Problem& p, double lambda, ResolventConfig cfg = {});
  explicit ResolventSeries(const Problem& p, ResolventConfig cfg = {}) : ResolventSeries(p, p.lambda, cfg) {}

  double lambda() const noexcept { return lambda_; }
  const ResolventConfig& config() const noexcept { return cfg_; }
  const Problem& problem() const noexcept { return *problem_; }

  /// K_n(t, s) of the normalized kernel K(t,s)/a0(t). Requires n >= 1, s <= t.
  double iterated_kernel(int n, double t, double s) const;

  Value resolvent(double t, double s) const;

  /// R(t, .) on a trapezoid grid over [t0, t].
  Row row(double t) const { return row(t, problem_->t0); }
  Row row(double t, double lower) const;

  /// Normalized coefficients, divided by a0(t).
  double kernel(double t, double s) const;
  double rhs(double t) const;
  double load_coeff(std::size_t j, double t) const;

 private:
  std::size_t intervals(double length) const;
  void check_order(double t, double s) const;

  const Problem* problem_;
  double lambda_;
  ResolventConfig cfg_;
};

struct ReducedCoefficients {
  double F = 0.0;
  std::vector<double> b;  // one per load
  bool converged = true;
};

/// F(t) = f(t) + int_{t0}^t R(t,s) f(s) ds and
/// b_j(t) = a_j(t) + int_{t0}^t R(t,s) a_j(s) ds (normalized by a0).
ReducedCoefficients reduced_coeffs(const ResolventSeries& series, double t);

struct LoadSystem {
  DenseMatrix A;          // delta_ij + b_j(t_i)
  std::vector<double> d;  // F(t_i)
  bool converged = true;
};

LoadSystem load_matrix(const ResolventSeries& series);

enum class Solvability { Unique, Family, NoSolution };

struct ClassifyTolerance {
  double rank = 1e-10;           // relative to max(1, max|A_ij|)
  double orthogonality = 1e-8;   // |<d,y>| <= tol |d| |y|
};

struct SolvabilityReport {
  double lambda = 0.0;
  double det = 0.0;
  std::size_t rank = 0;
  Solvability classification = Solvability::Unique;
  std::size_t family_dimension = 0;
  std::optional<std::vector<double>> load_values;
  double orthogonality_defect = 0.0;
  bool series_converged = true;

  /// "unique", "family(k)" or "no_solution".
  std::string label() const;
};

SolvabilityReport classify(const LoadSystem& system, double lambda, ClassifyTolerance tol = {});
SolvabilityReport classify(const ResolventSeries& series, ClassifyTolerance tol = {});

class NotUniquelySolvable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x(t) = F(t) - sum_j b_j(t) c_j with c solving the load system. Throws
/// NotUniquelySolvable unless the classification is unique.
std::vector<double> semi_analytic_solve(const ResolventSeries& series, std::span<const double> t_samples,
                                        ClassifyTolerance tol = {});

}  // namespace lvie
