#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace cellsheaf;

TEST_CASE("corpus complexes have the expected face counts") {
  REQUIRE(interval_complex()->f_vector() == std::vector<std::size_t>{2, 1});
  REQUIRE(circle_complex()->f_vector() == std::vector<std::size_t>{3, 3});
  REQUIRE(octahedron_complex()->f_vector() == std::vector<std::size_t>{6, 12, 8});
  REQUIRE(two_hemisphere_sphere()->f_vector() == std::vector<std::size_t>{8, 18, 12});
  REQUIRE(staircase_torus()->f_vector() == std::vector<std::size_t>{9, 27, 18});
  REQUIRE(octahedron_complex()->euler_characteristic() == 2);
  REQUIRE(staircase_torus()->euler_characteristic() == 0);
}

TEST_CASE("boundary of a boundary vanishes") {
  for (auto x : {octahedron_complex(), two_hemisphere_sphere(), staircase_torus()})
    for (int k = 2; k <= x->dimension(); ++k) REQUIRE((x->boundary_matrix(k - 1) * x->boundary_matrix(k)).is_zero());
}

TEST_CASE("simplicial cohomology of the torus") {
  REQUIRE(simplicial_cohomology(*staircase_torus()) == GradedDims{{0, 1}, {1, 2}, {2, 1}});
  REQUIRE(simplicial_cohomology(*octahedron_complex()) == GradedDims{{0, 1}, {2, 1}});
}

TEST_CASE("build rejects degenerate and overlapping simplices") {
  Point a{0, 0}, b{1, 0}, c{2, 0}, d{0, 1}, e{1, 1};
  REQUIRE_THROWS_AS(SimplicialComplex::build(2, {{0, a}, {1, b}, {2, c}}, {{0, 1, 2}}), GeometryError);
  // Two triangles overlapping in their interiors.
  REQUIRE_THROWS_AS(SimplicialComplex::build(2, {{0, a}, {1, c}, {2, d}, {3, e}}, {{0, 1, 2}, {0, 1, 3}}), GeometryError);
  // Crossing edges.
  REQUIRE_THROWS_AS(SimplicialComplex::build(2, {{0, a}, {1, e}, {2, b}, {3, d}}, {{0, 1}, {2, 3}}), GeometryError);
  REQUIRE_THROWS_AS(SimplicialComplex::build(2, {{0, a}}, {{0, 7}}), GeometryError);
}

TEST_CASE("regions must be locally closed") {
  auto x = interval_complex();
  CellId v0 = x->id_of({0}), v1 = x->id_of({1}), e = x->id_of({0, 1});
  REQUIRE(CellRegion(*x, {e}).is_open());
  REQUIRE(CellRegion(*x, {v0}).is_closed());
  REQUIRE(CellRegion(*x, {v0, e}).kind() == RegionKind::open);
  auto y = subdivided_interval_complex();
  // Vertex 0 and edge 1-2 without the middle vertex is still open in its closure.
  REQUIRE_NOTHROW(CellRegion(*y, {y->id_of({0}), y->id_of({0, 1}), y->id_of({1, 2}), y->id_of({2})}));
  auto o = octahedron_complex();
  // A vertex and a triangle without the edge between them.
  REQUIRE_THROWS_AS(CellRegion(*o, {o->id_of({4}), o->id_of({0, 2, 4})}), GeometryError);
  (void)v1;
}

TEST_CASE("barycentric subdivision keeps the euler characteristic and carriers") {
  for (auto x : {circle_complex(), octahedron_complex(), staircase_torus()}) {
    Subdivision s = barycentric_subdivision(x);
    REQUIRE(s.refined->euler_characteristic() == x->euler_characteristic());
    std::size_t top = 0;
    for (CellId c : x->cells_of_dim(x->dimension())) top += 1, (void)c;
    std::size_t factorial = 1;
    for (int k = 2; k <= x->dimension() + 1; ++k) factorial *= k;
    REQUIRE(s.refined->cells_of_dim(x->dimension()).size() == top * factorial);
    for (CellId c = 0; c < s.refined->cell_count(); ++c) REQUIRE(x->dim(s.carrier(c)) >= s.refined->dim(c));
  }
}

TEST_CASE("level cuts separate the sides of the hyperplane") {
  auto x = octahedron_complex();
  Point l{1, 2, 3};
  Rational level(1, 2);
  Subdivision s = subdivide_along_level(x, l, level);
  const auto& y = *s.refined;
  for (CellId c = 0; c < y.cell_count(); ++c) {
    int lo = 0, hi = 0;
    for (VertexId v : y.cell(c).vertices) {
      int sg = sgn(dot(l, y.coordinates(v)) - level);
      lo += sg < 0;
      hi += sg > 0;
    }
    REQUIRE_FALSE((lo > 0 && hi > 0));
  }
  REQUIRE(y.euler_characteristic() == 2);
}

TEST_CASE("staircase product projections are simplicial") {
  ProductComplex p = staircase_product(interval_complex(), interval_complex());
  REQUIRE(p.product->f_vector() == std::vector<std::size_t>{4, 5, 2});
  for (CellId c = 0; c < p.product->cell_count(); ++c) {
    REQUIRE(p.first(c) < p.first.target()->cell_count());
    REQUIRE(p.second(c) < p.second.target()->cell_count());
  }
}

TEST_CASE("cell maps compose") {
  auto fib = testing::fibrations();
  const CellMap& f = fib[1].map;  // torus -> circle
  CellMap g = testing::to_point(circle_complex());
  CellMap h = CellMap::simplicial(f.target(), g.target(), {{0, 0}, {1, 0}, {2, 0}});
  CellMap fg = f.then(h);
  for (CellId c = 0; c < fg.source()->cell_count(); ++c) REQUIRE(fg(c) == 0);
}

TEST_CASE("star and link of a vertex on the octahedron") {
  auto x = octahedron_complex();
  CellId top = x->vertex_cell(4);
  REQUIRE(link_vertices(*x, top) == std::vector<VertexId>{0, 1, 2, 3});
  REQUIRE(x->star_cells(top).size() == 1 + 4 + 4);
}
