#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lvie/grid.hpp"

using namespace lvie;

TEST_CASE("model 1 layout at h = 1/8") {
  const double loads[] = {0.3, 0.5};
  const Grid g = build_grid(0.0, 1.0, loads, 0.125);
  CHECK(g.segment_counts == std::vector<std::size_t>{3, 2, 5});
  CHECK(g.last_index() == 10);
  REQUIRE(g.size() == 11);
  for (std::size_t i = 0; i <= 10; ++i) CHECK(g.nodes[i] == doctest::Approx(0.1 * i).epsilon(1e-15));
  CHECK(g.load_indices == std::vector<std::size_t>{3, 5});
  CHECK(g.nodes[3] == 0.3);
  CHECK(g.nodes[5] == 0.5);
  CHECK(g.load_index(1) == 3);
  CHECK(g.load_index(2) == 5);
  CHECK_THROWS_AS(g.load_index(3), std::out_of_range);
  CHECK_THROWS_AS(g.load_index(0), std::out_of_range);
}

TEST_CASE("no-load interval") {
  const Grid g = build_grid(0.0, 1.0, {}, 0.25);
  CHECK(g.segment_counts == std::vector<std::size_t>{5});
  REQUIRE(g.size() == 6);
  for (std::size_t k = 0; k <= 5; ++k) CHECK(g.nodes[k] == doctest::Approx(k / 5.0).epsilon(1e-15));
  CHECK(g.load_indices.empty());
}

TEST_CASE("step must fit the interval") {
  CHECK_THROWS_AS(build_grid(0.0, 1.0, {}, 2.0), ParameterError);
  CHECK_THROWS_AS(build_grid(0.0, 1.0, {}, 1.0), ParameterError);
  CHECK_THROWS_AS(build_grid(0.0, 1.0, {}, 0.0), ParameterError);
  CHECK_THROWS_AS(build_grid(0.0, 1.0, {}, -0.1), ParameterError);
  const double unordered[] = {0.5, 0.3};
  CHECK_THROWS_AS(build_grid(0.0, 1.0, unordered, 0.1), ParameterError);
}

TEST_CASE("floor snapping near integer ratios") {
  CHECK(snapped_floor(4.0) == 4);
  CHECK(snapped_floor(3.9999999999999) == 4);
  CHECK(snapped_floor(4.0000000000001) == 4);
  CHECK(snapped_floor(3.99) == 3);
  CHECK(snapped_floor(0.5) == 0);
  // 0.3 / 0.1 is 2.9999999999999996 in floating point.
  const double loads[] = {0.3};
  CHECK(build_grid(0.0, 1.0, loads, 0.1).segment_counts.front() == 4);
}

TEST_CASE("grid invariants over random layouts") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> load_count(0, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const double t0 = -2.0 + 4.0 * u(rng);
    const double len = 0.1 + 5.0 * u(rng);
    const double t_end = t0 + len;
    std::vector<double> loads;
    for (int j = load_count(rng); j > 0; --j) loads.push_back(t0 + len * (0.01 + 0.98 * u(rng)));
    std::sort(loads.begin(), loads.end());
    loads.erase(std::unique(loads.begin(), loads.end()), loads.end());
    const double h = len * std::pow(10.0, -3.0 * u(rng)) * 0.999;

    const Grid g = build_grid(t0, t_end, loads, h);
    CAPTURE(trial);
    CHECK(g.nodes.front() == t0);
    CHECK(g.nodes.back() == t_end);
    std::size_t total = 0;
    for (auto n : g.segment_counts) total += n;
    CHECK(g.last_index() == total);
    REQUIRE(g.load_indices.size() == loads.size());
    for (std::size_t j = 0; j < loads.size(); ++j) CHECK(g.nodes[g.load_indices[j]] == loads[j]);

    std::vector<double> breaks{t0};
    breaks.insert(breaks.end(), loads.begin(), loads.end());
    breaks.push_back(t_end);
    bool increasing = true, within_h = true, counts_ok = true;
    for (std::size_t i = 1; i < g.size(); ++i) {
      increasing = increasing && g.nodes[i] > g.nodes[i - 1];
      // node arithmetic rounding only
      within_h = within_h && g.spacing(i) <= h * (1 + 1e-12);
    }
    for (std::size_t k = 1; k < breaks.size(); ++k) {
      const double width = breaks[k] - breaks[k - 1];
      const auto n = g.segment_counts[k - 1];
      counts_ok = counts_ok && n == snapped_floor(width / h) + 1 && width / static_cast<double>(n) < h;
    }
    CHECK(increasing);
    CHECK(within_h);
    CHECK(counts_ok);

    // Halving the step at least doubles each count, up to rounding.
    const Grid fine = build_grid(t0, t_end, loads, h / 2);
    for (std::size_t k = 0; k < g.segment_counts.size(); ++k) {
      CHECK(fine.segment_counts[k] >= 2 * g.segment_counts[k] - 1);
    }
  }
}
