#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lvie/expr.hpp"

namespace lvie {

/// A pure real function of t (arity 1) or of (t, s) (arity 2), backed either
/// by a parsed expression or by a compiled callable.
class ScalarFunction {
 public:
  using Unary = std::function<double(double)>;
  using Binary = std::function<double(double, double)>;

  ScalarFunction() = default;

  static ScalarFunction of_t(Unary f, std::string description);
  static ScalarFunction of_ts(Binary f, std::string description);

  /// Throws std::invalid_argument if arity is 1 and the expression uses s.
  static ScalarFunction from_expr(const expr::Expr& e, int arity);
  static ScalarFunction constant(double value);

  int arity() const noexcept { return arity_; }
  bool empty() const noexcept { return !fn_; }
  const std::string& description() const noexcept { return description_; }

  double operator()(double t) const { return fn_(t, 0.0); }
  double operator()(double t, double s) const { return fn_(t, s); }

 private:
  Binary fn_;
  int arity_ = 1;
  std::string description_;
};

struct LoadTerm {
  double point = 0.0;
  ScalarFunction coeff;
};

/// a0(t) x(t) + sum_j a_j(t) x(t_j) = lambda * int_{t0}^{t} K(t,s) x(s) ds + f(t),
/// t in [t0, t_end]. Loads are ordered by point; t_end never carries a load.
struct Problem {
  std::string name;
  double t0 = 0.0;
  double t_end = 1.0;
  double lambda = 0.0;
  std::vector<LoadTerm> loads;
  ScalarFunction a0;
  ScalarFunction kernel;
  ScalarFunction rhs;
  std::optional<ScalarFunction> exact;

  std::vector<double> load_points() const;
};

struct ValidationReport {
  bool ok = true;
  std::string message;

  explicit operator bool() const noexcept { return ok; }
};

inline constexpr int kDefaultValidationSamples = 1000;

/// Never throws for problem defects; the first violated invariant is reported.
ValidationReport validate_problem(const Problem& p, int samples = kDefaultValidationSamples);

class UnknownBuiltin : public std::invalid_argument {
 public:
  explicit UnknownBuiltin(const std::string& name)
      : std::invalid_argument("no such builtin: '" + name + "'") {}
};

/// "model1" (exact solution cos t) or "model2" (exact solution e^t).
Problem builtin_problem(std::string_view name);
std::vector<std::string> builtin_names();

double model1_rhs(double t);
double model2_rhs(double t);

}  // namespace lvie
