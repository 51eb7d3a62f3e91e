#include "lvie/problem.hpp"

#include <cmath>
#include <cstdio>
#include <exception>

namespace lvie {

ScalarFunction ScalarFunction::of_t(Unary f, std::string description) {
  ScalarFunction out;
  out.fn_ = [f = std::move(f)](double t, double) { return f(t); };
  out.arity_ = 1;
  out.description_ = std::move(description);
  return out;
}

ScalarFunction ScalarFunction::of_ts(Binary f, std::string description) {
  ScalarFunction out;
  out.fn_ = std::move(f);
  out.arity_ = 2;
  out.description_ = std::move(description);
  return out;
}

ScalarFunction ScalarFunction::from_expr(const expr::Expr& e, int arity) {
  if (arity != 1 && arity != 2) throw std::invalid_argument("arity must be 1 or 2");
  if (arity == 1 && e.references_s()) {
    throw std::invalid_argument("expression '" + e.source() + "' references s but only t is allowed here");
  }
  if (arity == 1) return of_t([e](double t) { return e.eval(t); }, e.source());
  return of_ts([e](double t, double s) { return e.eval(t, s); }, e.source());
}

ScalarFunction ScalarFunction::constant(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return of_t([value](double) { return value; }, buf);
}

std::vector<double> Problem::load_points() const {
  std::vector<double> points;
  points.reserve(loads.size());
  for (const auto& l : loads) points.push_back(l.point);
  return points;
}

namespace {

std::string fmt_point(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

ValidationReport fail(std::string message) { return {false, std::move(message)}; }

// Evaluates f, turning evaluation errors and non-finite values into a message.
template <class F>
std::optional<std::string> probe(const F& f, const std::string& what, double t, double& value) {
  try {
    value = f();
  } catch (const std::exception& e) {
    return what + " cannot be evaluated at t=" + fmt_point(t) + ": " + e.what();
  }
  if (!std::isfinite(value)) return what + " is not finite at t=" + fmt_point(t);
  return std::nullopt;
}

}  // namespace

ValidationReport validate_problem(const Problem& p, int samples) {
  if (samples < 2) return fail("at least 2 validation samples are required");
  if (!std::isfinite(p.t0) || !std::isfinite(p.t_end)) return fail("interval bounds must be finite");
  if (!(p.t0 < p.t_end)) return fail("interval must satisfy t0 < T");
  if (!std::isfinite(p.lambda)) return fail("lambda must be finite");
  if (p.a0.empty() || p.kernel.empty() || p.rhs.empty()) return fail("a0, kernel and f are required");

  for (std::size_t j = 0; j < p.loads.size(); ++j) {
    const double pt = p.loads[j].point;
    if (!(pt > p.t0 && pt < p.t_end)) {
      return fail("load point " + fmt_point(pt) + " is not inside (t0, T)");
    }
    if (j > 0 && !(pt > p.loads[j - 1].point)) return fail("load points not increasing");
    if (p.loads[j].coeff.empty()) return fail("load " + std::to_string(j + 1) + " has no coefficient");
  }

  const double step = (p.t_end - p.t0) / (samples - 1);
  auto sample = [&](int i) { return i == samples - 1 ? p.t_end : p.t0 + step * i; };

  double prev_a0 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = sample(i);
    double v = 0.0;
    if (auto err = probe([&] { return p.a0(t); }, "a0", t, v)) return fail(*err);
    if (v == 0.0) return fail("a0 vanishes near t=" + fmt_point(t));
    if (i > 0 && (v > 0) != (prev_a0 > 0)) {
      return fail("a0 vanishes near t=" + fmt_point(0.5 * (t + sample(i - 1))));
    }
    prev_a0 = v;

    if (auto err = probe([&] { return p.rhs(t); }, "f", t, v)) return fail(*err);
    for (std::size_t j = 0; j < p.loads.size(); ++j) {
      const std::string name = "a" + std::to_string(j + 1);
      if (auto err = probe([&] { return p.loads[j].coeff(t); }, name, t, v)) return fail(*err);
    }
    if (p.exact) {
      if (auto err = probe([&] { return (*p.exact)(t); }, "exact", t, v)) return fail(*err);
    }
  }

  // Kernel on the triangle s <= t, using a coarser s-grid to bound the cost.
  const int s_samples = std::min(samples, 64);
  const double s_step = (p.t_end - p.t0) / (s_samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double t = sample(i);
    for (int k = 0; k < s_samples; ++k) {
      const double s = k == s_samples - 1 ? p.t_end : p.t0 + s_step * k;
      if (s > t) break;
      double v = 0.0;
      auto err = probe([&] { return p.kernel(t, s); }, "kernel", t, v);
      if (err) return fail(*err + " (s=" + fmt_point(s) + ")");
    }
  }
  return {};
}

double model1_rhs(double t) {
  return (t * t + 1.0) * std::cos(t) + (1.0 - t * t * t) * std::cos(0.3) + (t - 2.0) * std::cos(0.5) +
         t * t / 2.0 * std::sin(t) - t / 4.0 * std::sin(t) + t * std::cos(t) - std::sin(t);
}

double model2_rhs(double t) {
  const double et = std::exp(t);
  return (2.0 + t) / 3.0 * et + (t * t * t - 0.5) * std::exp(0.3) + (2.0 * t - t * t) * std::exp(0.5) +
         et * t * t / 3.0 - 5.0 * t * et / 6.0 + 2.0 * et / 3.0 + t / 6.0 - 2.0 / 3.0;
}

namespace {

ScalarFunction model_kernel() {
  return ScalarFunction::of_ts([](double t, double s) { return t - 2.0 * s * s; }, "t-2*s^2");
}

Problem model1() {
  Problem p;
  p.name = "model1";
  p.t0 = 0.0;
  p.t_end = 1.0;
  p.lambda = 0.25;
  p.a0 = ScalarFunction::of_t([](double t) { return t * t + 1.0; }, "t^2+1");
  p.loads = {
      {0.3, ScalarFunction::of_t([](double t) { return 1.0 - t * t * t; }, "1-t^3")},
      {0.5, ScalarFunction::of_t([](double t) { return t - 2.0; }, "t-2")},
  };
  p.kernel = model_kernel();
  p.rhs = ScalarFunction::of_t(model1_rhs, "model1 f(t)");
  p.exact = ScalarFunction::of_t([](double t) { return std::cos(t); }, "cos(t)");
  return p;
}

Problem model2() {
  Problem p;
  p.name = "model2";
  p.t0 = 0.0;
  p.t_end = 1.0;
  p.lambda = 1.0 / 6.0;
  p.a0 = ScalarFunction::of_t([](double t) { return (2.0 + t) / 3.0; }, "(2+t)/3");
  p.loads = {
      {0.3, ScalarFunction::of_t([](double t) { return t * t * t - 0.5; }, "t^3-1/2")},
      {0.5, ScalarFunction::of_t([](double t) { return 2.0 * t - t * t; }, "2*t-t^2")},
  };
  p.kernel = model_kernel();
  p.rhs = ScalarFunction::of_t(model2_rhs, "model2 f(t)");
  p.exact = ScalarFunction::of_t([](double t) { return std::exp(t); }, "exp(t)");
  return p;
}

}  // namespace

Problem builtin_problem(std::string_view name) {
  if (name == "model1") return model1();
  if (name == "model2") return model2();
  throw UnknownBuiltin(std::string(name));
}

std::vector<std::string> builtin_names() { return {"model1", "model2"}; }

}  // namespace lvie
