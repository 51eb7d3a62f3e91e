#include "lvie/grid.hpp"

#include <cmath>
#include <string>

namespace lvie {

std::size_t Grid::load_index(std::size_t j) const {
  if (j < 1 || j > load_indices.size()) {
    throw std::out_of_range("load ordinal " + std::to_string(j) + " outside 1.." +
                            std::to_string(load_indices.size()));
  }
  return load_indices[j - 1];
}

std::size_t snapped_floor(double ratio) {
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) < 1e-12) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(ratio));
}

Grid build_grid(double t0, double t_end, std::span<const double> load_points, double h) {
  if (!(h > 0.0)) throw ParameterError("h must be positive");
  if (!(h < t_end - t0)) throw ParameterError("h must be smaller than the interval length");

  std::vector<double> breaks;
  breaks.reserve(load_points.size() + 2);
  breaks.push_back(t0);
  for (double pt : load_points) {
    if (!(pt > breaks.back() && pt < t_end)) {
      throw ParameterError("load points must be strictly increasing inside (t0, T)");
    }
    breaks.push_back(pt);
  }
  breaks.push_back(t_end);

  Grid g;
  g.h_requested = h;
  g.nodes.push_back(t0);
  for (std::size_t k = 1; k < breaks.size(); ++k) {
    const double a = breaks[k - 1];
    const double b = breaks[k];
    const std::size_t n = snapped_floor((b - a) / h) + 1;
    const double step = (b - a) / static_cast<double>(n);
    g.segment_counts.push_back(n);
    for (std::size_t l = 1; l < n; ++l) g.nodes.push_back(a + step * static_cast<double>(l));
    g.nodes.push_back(b);
    if (k + 1 < breaks.size()) g.load_indices.push_back(g.nodes.size() - 1);
  }
  return g;
}

Grid build_grid(const Problem& p, double h) {
  const auto points = p.load_points();
  return build_grid(p.t0, p.t_end, points, h);
}

}  // namespace lvie
