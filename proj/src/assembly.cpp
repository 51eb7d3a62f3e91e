#include "lvie/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>

namespace lvie {

namespace {

std::string describe(std::size_t row, double t) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "row %zu (t=%.17g)", row, t);
  return buf;
}

}  // namespace

AssemblyError::AssemblyError(const std::string& what, std::size_t row, double abscissa)
    : std::runtime_error(describe(row, abscissa) + ": " + what), row_(row), abscissa_(abscissa) {}

double quad_weight(std::size_t p, std::size_t i, const Grid& g, const ScalarFunction& kernel, double lambda) {
  if (p < 1 || p > i || i > g.last_index()) {
    throw std::out_of_range("quadrature weight requires 1 <= p <= i <= N");
  }
  return 0.5 * lambda * g.spacing(p) * kernel(g.nodes[i], g.midpoint(p));
}

RowAssembler::RowAssembler(const Problem& p, const Grid& g) : problem_(&p), grid_(&g) {
  midpoints_.assign(g.size(), 0.0);
  half_widths_.assign(g.size(), 0.0);
  for (std::size_t q = 1; q < g.size(); ++q) {
    midpoints_[q] = g.midpoint(q);
    half_widths_[q] = 0.5 * g.spacing(q);
  }
}

void RowAssembler::fill(std::size_t i, Row& out) const {
  const Problem& p = *problem_;
  const double t = grid_->nodes[i];
  try {
    out.lower.assign(i + 1, 0.0);
    out.load.resize(p.loads.size());
    for (std::size_t j = 0; j < p.loads.size(); ++j) out.load[j] = p.loads[j].coeff(t);
    out.rhs = p.rhs(t);
    out.lower[i] = p.a0(t);
    if (p.lambda != 0.0) {
      for (std::size_t q = 1; q <= i; ++q) {
        const double w = p.lambda * half_widths_[q] * p.kernel(t, midpoints_[q]);
        out.lower[q - 1] -= w;
        out.lower[q] -= w;
      }
    }
  } catch (const AssemblyError&) {
    throw;
  } catch (const std::exception& e) {
    throw AssemblyError(e.what(), i, t);
  }
  const bool finite = std::isfinite(out.rhs) &&
                      std::all_of(out.lower.begin(), out.lower.end(), [](double v) { return std::isfinite(v); }) &&
                      std::all_of(out.load.begin(), out.load.end(), [](double v) { return std::isfinite(v); });
  if (!finite) throw AssemblyError("non-finite coefficient", i, t);
}

CollocationSystem assemble(const Problem& p, const Grid& g) {
  const std::size_t n = g.size();
  if (n > kMaxDenseUnknowns) {
    throw ParameterError("grid has " + std::to_string(n) + " nodes; dense assembly is limited to " +
                         std::to_string(kMaxDenseUnknowns));
  }
  CollocationSystem sys;
  sys.matrix = DenseMatrix(n);
  sys.rhs.assign(n, 0.0);
  sys.load_columns = g.load_indices;
  sys.load_coefficients.assign(p.loads.size(), std::vector<double>(n, 0.0));
  sys.grid = &g;

  RowAssembler rows(p, g);
  RowAssembler::Row r;
  for (std::size_t i = 0; i < n; ++i) {
    rows.fill(i, r);
    auto dst = sys.matrix.row(i);
    std::copy(r.lower.begin(), r.lower.end(), dst.begin());
    for (std::size_t j = 0; j < r.load.size(); ++j) {
      dst[sys.load_columns[j]] += r.load[j];
      sys.load_coefficients[j][i] = r.load[j];
    }
    sys.rhs[i] = r.rhs;
  }
  return sys;
}

double residual(const Problem& p, const Grid& g, std::span<const double> x) {
  if (x.size() != g.size()) throw std::invalid_argument("nodal vector length does not match the grid");
  RowAssembler rows(p, g);
  RowAssembler::Row r;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    rows.fill(i, r);
    double lhs = 0.0;
    for (std::size_t q = 0; q <= i; ++q) lhs += r.lower[q] * x[q];
    for (std::size_t j = 0; j < r.load.size(); ++j) lhs += r.load[j] * x[g.load_indices[j]];
    worst = std::max(worst, std::abs(lhs - r.rhs));
  }
  return worst;
}

}  // namespace lvie
