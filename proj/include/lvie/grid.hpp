#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "lvie/problem.hpp"

namespace lvie {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Collocation mesh aligned with the load points.
///
/// Each segment [t_{k-1}, t_k] between consecutive breakpoints
/// (t0, load points, T) is split into n_k = floor((t_k - t_{k-1})/h) + 1 equal
/// pieces. Shared segment endpoints appear once, and every load point is a
/// node, bit-for-bit.
struct Grid {
  std::vector<double> nodes;               // tau_0 .. tau_N
  double h_requested = 0.0;
  std::vector<std::size_t> segment_counts;  // n_1 .. n_m
  std::vector<std::size_t> load_indices;    // v_1 .. v_{m-1}

  std::size_t size() const noexcept { return nodes.size(); }
  /// N, the index of the last node (= sum of n_k).
  std::size_t last_index() const noexcept { return nodes.size() - 1; }
  double spacing(std::size_t i) const { return nodes[i] - nodes[i - 1]; }
  double midpoint(std::size_t i) const { return 0.5 * (nodes[i - 1] + nodes[i]); }

  /// v_j for the 1-based load ordinal j; throws std::out_of_range.
  std::size_t load_index(std::size_t j) const;
};

/// Throws ParameterError unless 0 < h < t_end - t0.
Grid build_grid(double t0, double t_end, std::span<const double> load_points, double h);
Grid build_grid(const Problem& p, double h);

/// floor(ratio), snapping ratios within 1e-12 of an integer onto it first.
std::size_t snapped_floor(double ratio);

}  // namespace lvie
