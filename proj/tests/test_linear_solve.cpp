#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lvie/linear_solve.hpp"

using namespace lvie;

namespace {

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double diag_boost = 0.0) {
  std::normal_distribution<double> g;
  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = g(rng) + (i == j ? diag_boost : 0.0);
  return a;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("gauss_jordan small cases") {
  const std::vector<double> b{3, -1, 4};
  CHECK(gauss_jordan(DenseMatrix::identity(3), b) == b);

  DenseMatrix swap(2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  const auto x = gauss_jordan(swap, std::vector<double>{2, 5});
  CHECK(x == std::vector<double>{5, 2});
}

TEST_CASE("gauss_jordan recovers a constructed solution") {
  std::mt19937_64 rng(6);
  const DenseMatrix a = random_matrix(rng, 6, 3.0);
  std::vector<double> want(6);
  std::normal_distribution<double> g;
  for (auto& v : want) v = g(rng);
  const auto x = gauss_jordan(a, a.multiply(want));
  CHECK(max_diff(x, want) <= 1e-12);
}

TEST_CASE("gauss_jordan round trip on random systems") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = dim(rng);
    const DenseMatrix a = random_matrix(rng, n, 2.0 * std::sqrt(static_cast<double>(n)));
    std::vector<double> want(n);
    std::normal_distribution<double> g;
    for (auto& v : want) v = g(rng);
    CHECK(max_diff(gauss_jordan(a, a.multiply(want)), want) <= 1e-10);
  }
}

TEST_CASE("gauss_jordan reports singularity with the step") {
  DenseMatrix a(3);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 4;
  a(2, 2) = 5;
  try {
    (void)gauss_jordan(a, std::vector<double>{1, 2, 3});
    FAIL("expected singular");
  } catch (const SingularMatrixError& e) {
    CHECK(e.step() == 2);
  }
  CHECK_THROWS_AS(gauss_jordan(DenseMatrix(2), std::vector<double>{0, 0}), SingularMatrixError);
  CHECK_THROWS_AS(gauss_jordan(DenseMatrix::identity(2), std::vector<double>{0}), std::invalid_argument);
}

TEST_CASE("rank and determinant") {
  const auto id = rank_and_det(DenseMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.det == doctest::Approx(1.0));
  CHECK(id.det_sign == 1);
  CHECK(id.log_abs_det == doctest::Approx(0.0));

  DenseMatrix prop(2);
  prop(0, 0) = 1;
  prop(0, 1) = 2;
  prop(1, 0) = 2;
  prop(1, 1) = 4;
  const auto r = rank_and_det(prop);
  CHECK(r.rank == 1);
  CHECK(r.det == 0.0);
  CHECK(r.det_sign == 0);

  DenseMatrix neg(2);
  neg(0, 1) = 3;
  neg(1, 0) = 2;
  const auto rn = rank_and_det(neg);
  CHECK(rn.det == doctest::Approx(-6.0));
  CHECK(rn.det_sign == -1);

  CHECK(rank_and_det(DenseMatrix(3)).rank == 0);
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix a = random_matrix(rng, 3);
    const double cof = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                       a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                       a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    CHECK(rank_and_det(a).det == doctest::Approx(cof).epsilon(1e-12));
  }
}

TEST_CASE("rank of outer-product sums, invariant under permutations") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const std::size_t k = 1 + trial % 3;
    DenseMatrix a(n);
    for (std::size_t term = 0; term < k; ++term) {
      std::vector<double> u(n), v(n);
      for (auto& x : u) x = g(rng);
      for (auto& x : v) x = g(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) += u[i] * v[j];
    }
    CHECK(rank_and_det(a).rank == k);

    std::vector<std::size_t> rp(n), cp(n);
    std::iota(rp.begin(), rp.end(), std::size_t{0});
    std::iota(cp.begin(), cp.end(), std::size_t{0});
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    DenseMatrix pq(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pq(i, j) = a(rp[i], cp[j]);
    CHECK(rank_and_det(pq).rank == k);

    const auto basis = null_space(a);
    CHECK(basis.size() == n - k);
    for (const auto& y : basis) {
      const auto ay = a.multiply(y);
      for (double v : ay) CHECK(std::abs(v) <= 1e-9);
    }
  }
}

TEST_CASE("null space of small matrices") {
  CHECK(null_space(DenseMatrix::identity(3)).empty());
  const auto zero = null_space(DenseMatrix(1));
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == std::vector<double>{1.0});
}
