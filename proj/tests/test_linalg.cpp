#include <random>

#include "catch_amalgamated.hpp"

#include "cellsheaf/feasibility.hpp"
#include "cellsheaf/linalg.hpp"
#include "support.hpp"

using namespace cellsheaf;

TEST_CASE("sparse and dense rank agree on random sparse rational matrices") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> size(0, 14), coin(0, 3), val(-4, 4), den(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = size(rng), c = size(rng);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (coin(rng) == 0) m(i, j) = Rational(val(rng), den(rng));
    // duplicate some rows to force dependence
    if (r > 2) {
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Rational(2) - m(1, j);
    }
    REQUIRE(rank(m) == rank_dense(m));
    REQUIRE(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("rank of structured matrices") {
  REQUIRE(rank(Matrix::identity(5)) == 5);
  REQUIRE(rank(Matrix(3, 4)) == 0);
  REQUIRE(rank(Matrix::from_rows({{1, 2}, {2, 4}})) == 1);
  REQUIRE(rank(Matrix::from_rows({{Rational(1, 3), Rational(1, 2)}, {2, 3}})) == 1);
}

TEST_CASE("kernel basis spans the null space") {
  Matrix m = Matrix::from_rows({{1, 1, 0, 2}, {0, 1, 1, 1}});
  Matrix k = kernel_basis(m);
  REQUIRE(k.cols() == 2);
  REQUIRE((m * k).is_zero());
  REQUIRE(rank(k) == 2);
}

TEST_CASE("cohomology of the simplicial circle") {
  auto x = circle_complex();
  GradedDims h = testing::cochain_cohomology(constant_sheaf(x));
  REQUIRE(h == GradedDims{{0, 1}, {1, 1}});
}

TEST_CASE("graded dims shift and euler") {
  GradedDims g{{0, 2}, {1, 3}, {4, 1}};
  REQUIRE(g.euler() == 2 - 3 + 1);
  REQUIRE(g.shifted(1)[0] == 3);
  REQUIRE(g.shifted(-1)[1] == 2);
  GradedDims z = GradedDims::sequence({0, 0, 0});
  REQUIRE(z.is_zero());
}

TEST_CASE("complex and its cohomology with zero differentials agree") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_matrix(3, 4, rng);
    Matrix k = kernel_basis(a);
    // d1 = a, d0 chosen with image inside ker a.
    Matrix d0 = k * random_matrix(k.cols(), 2, rng);
    SpaceComplex c(0, {2, 4, 3}, {d0, a});
    GradedDims h = cohomology(c);
    std::vector<std::size_t> dims;
    for (int d = 0; d <= 2; ++d) dims.push_back(h[d]);
    SpaceComplex split(0, dims, {Matrix(dims[1], dims[0]), Matrix(dims[2], dims[1])});
    REQUIRE(cohomology(split) == h);
  }
}

TEST_CASE("space complex rejects d squared nonzero") {
  Matrix d0 = Matrix::from_rows({{1}});
  Matrix d1 = Matrix::from_rows({{1}});
  SpaceComplex c(0, {1, 1, 1}, {d0, d1});
  REQUIRE_THROWS(c.verify());
}

TEST_CASE("strict feasibility finds interior points") {
  // x > 0, y > 0, x > y is feasible; x > 0, -x > 0 is not.
  Matrix a = Matrix::from_rows({{1, 0}, {0, 1}, {1, -1}});
  auto y = find_strict_solution(a);
  REQUIRE(y.has_value());
  REQUIRE((*y)[0] > 0);
  REQUIRE((*y)[1] > 0);
  REQUIRE((*y)[0] > (*y)[1]);
  Matrix b = Matrix::from_rows({{1}, {-1}});
  REQUIRE_FALSE(find_strict_solution(b).has_value());
}
