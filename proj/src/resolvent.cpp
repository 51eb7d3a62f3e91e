#include "lvie/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lvie/linear_solve.hpp"

namespace lvie {

namespace {

// Lower-triangular table K(s_c, s_b), c >= b, stored column by column so the
// inner trapezoid loop over c is contiguous.
class KernelTable {
 public:
  KernelTable(const ResolventSeries& series, const std::vector<double>& nodes) : m_(nodes.size() - 1) {
    offsets_.resize(m_ + 1);
    std::size_t off = 0;
    for (std::size_t b = 0; b <= m_; ++b) {
      offsets_[b] = off;
      off += m_ - b + 1;
    }
    values_.resize(off);
    for (std::size_t b = 0; b <= m_; ++b)
      for (std::size_t c = b; c <= m_; ++c) values_[offsets_[b] + (c - b)] = series.kernel(nodes[c], nodes[b]);
  }

  // K(s_c, s_b) for c = b..M.
  const double* column(std::size_t b) const { return values_.data() + offsets_[b]; }
  double at(std::size_t c, std::size_t b) const { return column(b)[c - b]; }

 private:
  std::size_t m_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

// psi_next[b] = int_{s_b}^{t} psi[z] K(z, s_b) dz on the uniform grid.
void next_iterate(const KernelTable& table, const std::vector<double>& psi, double step,
                  std::vector<double>& out) {
  const std::size_t m = psi.size() - 1;
  out.assign(m + 1, 0.0);
  for (std::size_t b = 0; b < m; ++b) {
    const double* k = table.column(b);
    double sum = 0.0;
    for (std::size_t c = b; c <= m; ++c) sum += psi[c] * k[c - b];
    sum -= 0.5 * (psi[b] * k[0] + psi[m] * k[m - b]);
    out[b] = step * sum;
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double trapezoid(const std::vector<double>& values, double step) {
  if (values.size() < 2) return 0.0;
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  return step * (sum - 0.5 * (values.front() + values.back()));
}

std::vector<double> uniform_nodes(double lower, double upper, std::size_t intervals) {
  std::vector<double> nodes(intervals + 1);
  const double step = intervals == 0 ? 0.0 : (upper - lower) / static_cast<double>(intervals);
  for (std::size_t b = 0; b < intervals; ++b) nodes[b] = lower + step * static_cast<double>(b);
  nodes[intervals] = upper;
  return nodes;
}

}  // namespace

ResolventSeries::ResolventSeries(const Problem& p, double lambda, ResolventConfig cfg)
    : problem_(&p), lambda_(lambda), cfg_(cfg) {
  if (cfg_.quad_density < 1) throw std::invalid_argument("quadrature density must be positive");
  if (cfg_.max_terms < 1) throw std::invalid_argument("at least one series term is required");
}

double ResolventSeries::kernel(double t, double s) const { return problem_->kernel(t, s) / problem_->a0(t); }
double ResolventSeries::rhs(double t) const { return problem_->rhs(t) / problem_->a0(t); }
double ResolventSeries::load_coeff(std::size_t j, double t) const {
  return problem_->loads.at(j).coeff(t) / problem_->a0(t);
}

std::size_t ResolventSeries::intervals(double length) const {
  const double raw = cfg_.quad_density * length;
  const double nearest = std::round(raw);
  const double n = std::abs(raw - nearest) < 1e-9 ? nearest : std::ceil(raw);
  return static_cast<std::size_t>(n);
}

void ResolventSeries::check_order(double t, double s) const {
  if (s > t) throw std::invalid_argument("iterated kernels need s <= t");
  if (s < problem_->t0 || t > problem_->t_end) throw std::invalid_argument("(t, s) outside the problem interval");
}

double ResolventSeries::iterated_kernel(int n, double t, double s) const {
  if (n < 1) throw std::invalid_argument("iterated kernel order must be >= 1");
  check_order(t, s);
  if (n == 1) return kernel(t, s);
  const std::size_t m = intervals(t - s);
  if (m == 0) return 0.0;
  const auto nodes = uniform_nodes(s, t, m);
  const double step = (t - s) / static_cast<double>(m);
  const KernelTable table(*this, nodes);
  std::vector<double> psi(m + 1), next;
  for (std::size_t b = 0; b <= m; ++b) psi[b] = table.at(m, b);
  for (int order = 2; order <= n; ++order) {
    next_iterate(table, psi, step, next);
    psi.swap(next);
  }
  return psi[0];
}

ResolventSeries::Row ResolventSeries::row(double t, double lower) const {
  check_order(t, lower);
  const std::size_t m = intervals(t - lower);
  Row out;
  out.s_nodes = uniform_nodes(lower, t, m);
  if (m == 0) {
    // Every K_n(t,t) with n >= 2 is an empty integral.
    out.values = {lambda_ * kernel(t, t)};
    out.terms = 1;
    return out;
  }
  const double step = (t - lower) / static_cast<double>(m);
  const KernelTable table(*this, out.s_nodes);

  std::vector<double> psi(m + 1), next;
  for (std::size_t b = 0; b <= m; ++b) psi[b] = table.at(m, b);
  out.values.assign(m + 1, 0.0);
  out.converged = false;
  double lambda_power = 1.0;
  for (int n = 1; n <= cfg_.max_terms; ++n) {
    if (n > 1) {
      next_iterate(table, psi, step, next);
      psi.swap(next);
    }
    lambda_power *= lambda_;
    for (std::size_t b = 0; b <= m; ++b) out.values[b] += lambda_power * psi[b];
    out.terms = n;
    if (std::abs(lambda_power) * max_abs(psi) < cfg_.term_tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

ResolventSeries::Value ResolventSeries::resolvent(double t, double s) const {
  const Row r = row(t, s);
  return {r.values.front(), r.terms, r.converged};
}

ReducedCoefficients reduced_coeffs(const ResolventSeries& series, double t) {
  const Problem& p = series.problem();
  if (t < p.t0 || t > p.t_end) throw std::invalid_argument("t outside the problem interval");
  const auto row = series.row(t);
  const std::size_t loads = p.loads.size();
  ReducedCoefficients out;
  out.converged = row.converged;
  out.b.assign(loads, 0.0);
  out.F = series.rhs(t);
  for (std::size_t j = 0; j < loads; ++j) out.b[j] = series.load_coeff(j, t);
  if (row.s_nodes.size() < 2) return out;

  const double step = row.s_nodes[1] - row.s_nodes[0];
  std::vector<double> integrand(row.s_nodes.size());
  for (std::size_t b = 0; b < integrand.size(); ++b) integrand[b] = row.values[b] * series.rhs(row.s_nodes[b]);
  out.F += trapezoid(integrand, step);
  for (std::size_t j = 0; j < loads; ++j) {
    for (std::size_t b = 0; b < integrand.size(); ++b)
      integrand[b] = row.values[b] * series.load_coeff(j, row.s_nodes[b]);
    out.b[j] += trapezoid(integrand, step);
  }
  return out;
}

LoadSystem load_matrix(const ResolventSeries& series) {
  const Problem& p = series.problem();
  const std::size_t m = p.loads.size();
  LoadSystem sys{DenseMatrix(m), std::vector<double>(m), true};
  for (std::size_t i = 0; i < m; ++i) {
    const auto rc = reduced_coeffs(series, p.loads[i].point);
    sys.converged = sys.converged && rc.converged;
    for (std::size_t j = 0; j < m; ++j) sys.A(i, j) = (i == j ? 1.0 : 0.0) + rc.b[j];
    sys.d[i] = rc.F;
  }
  return sys;
}

std::string SolvabilityReport::label() const {
  switch (classification) {
    case Solvability::Unique: return "unique";
    case Solvability::Family: return "family(" + std::to_string(family_dimension) + ")";
    case Solvability::NoSolution: return "no_solution";
  }
  return "unknown";
}

SolvabilityReport classify(const LoadSystem& system, double lambda, ClassifyTolerance tol) {
  SolvabilityReport report;
  report.lambda = lambda;
  report.series_converged = system.converged;
  const std::size_t m = system.A.size();
  if (m == 0) {
    report.det = 1.0;
    report.load_values = std::vector<double>{};
    return report;
  }

  const double scale = std::max(1.0, system.A.max_abs());
  const RankReport rr = rank_and_det(system.A, tol.rank, scale);
  report.det = rr.det;
  report.rank = rr.rank;
  if (rr.rank == m) {
    report.classification = Solvability::Unique;
    report.load_values = gauss_jordan(system.A, system.d);
    return report;
  }

  const double d_norm = std::sqrt(std::inner_product(system.d.begin(), system.d.end(), system.d.begin(), 0.0));
  double worst = 0.0;
  if (d_norm > 0.0) {
    for (const auto& y : null_space(system.A.transposed(), tol.rank, scale)) {
      const double y_norm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
      const double dot = std::inner_product(system.d.begin(), system.d.end(), y.begin(), 0.0);
      worst = std::max(worst, std::abs(dot) / (d_norm * y_norm));
    }
  }
  report.orthogonality_defect = worst;
  if (worst <= tol.orthogonality) {
    report.classification = Solvability::Family;
    report.family_dimension = m - rr.rank;
  } else {
    report.classification = Solvability::NoSolution;
  }
  return report;
}

SolvabilityReport classify(const ResolventSeries& series, ClassifyTolerance tol) {
  return classify(load_matrix(series), series.lambda(), tol);
}

std::vector<double> semi_analytic_solve(const ResolventSeries& series, std::span<const double> t_samples,
                                        ClassifyTolerance tol) {
  const SolvabilityReport report = classify(series, tol);
  if (report.classification != Solvability::Unique) {
    throw NotUniquelySolvable("load system is " + report.label() + "; no unique solution to evaluate");
  }
  const auto& c = *report.load_values;
  std::vector<double> x;
  x.reserve(t_samples.size());
  for (double t : t_samples) {
    const auto rc = reduced_coeffs(series, t);
    double value = rc.F;
    for (std::size_t j = 0; j < c.size(); ++j) value -= rc.b[j] * c[j];
    x.push_back(value);
  }
  return x;
}

}  // namespace lvie
