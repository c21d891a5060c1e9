#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace cellsheaf;
using testing::cochain_cohomology;

TEST_CASE("non-commuting restrictions are rejected") {
  auto x = octahedron_complex();
  CellularSheaf f = constant_sheaf(x);
  CellId v = x->id_of({0}), e = x->id_of({0, 2});
  f.set_restriction(v, e, Matrix::from_rows({{2}}));
  REQUIRE_THROWS_AS(f.validate(), SheafError);
  REQUIRE_THROWS(f.set_restriction(v, e, Matrix(2, 1)));
}

TEST_CASE("derived sections agree with the cellular cochain oracle") {
  for (const auto& item : corpus()) {
    for (const auto& s : item.sheaves) {
      if (!testing::is_single(s.sheaf)) continue;
      INFO(item.name << " / " << s.name);
      REQUIRE(derived_sections(s.sheaf) == cochain_cohomology(s.sheaf.term(0)));
    }
  }
}

TEST_CASE("known cohomology of corpus sheaves") {
  auto circle = corpus_item("circle");
  REQUIRE(derived_sections(circle.sheaf("constant")) == GradedDims{{0, 1}, {1, 1}});
  REQUIRE(derived_sections(circle.sheaf("constant_rank2")) == GradedDims{{0, 2}, {1, 2}});
  // j_! of an open arc has H_c of an open interval.
  REQUIRE(derived_sections(circle.sheaf("extension_star")) == GradedDims{{1, 1}});
  REQUIRE(derived_sections(circle.sheaf("pushforward_star")) == GradedDims{{0, 1}});
  auto mob = corpus_item("mobius-circle");
  REQUIRE(derived_sections(mob.sheaf("local_system")).is_zero());
  REQUIRE(derived_sections(mob.sheaf("local_system_squared")) == GradedDims{{0, 1}, {1, 1}});
  REQUIRE(derived_sections(mob.sheaf("local_system_rank2")).is_zero());
  auto oct = corpus_item("octahedron");
  REQUIRE(derived_sections(oct.sheaf("equator")) == GradedDims{{0, 1}, {1, 1}});
  REQUIRE(derived_sections(oct.sheaf("pushforward_north")) == GradedDims{{0, 1}});
  REQUIRE(derived_sections(oct.sheaf("extension_north")) == GradedDims{{2, 1}});
}

TEST_CASE("mapping cone of the identity is acyclic") {
  auto x = interval_complex();
  SheafComplex c = SheafComplex::concentrated(constant_sheaf(x));
  SheafComplex cone = mapping_cone(SheafMorphism::identity(c));
  REQUIRE(cohomology_sheaves(cone).empty());
  for (CellId s = 0; s < x->cell_count(); ++s) REQUIRE(stalk(cone, s).is_zero());
}

TEST_CASE("mapping triangle has the expected long exact stalk sequence") {
  std::mt19937 rng(5);
  auto item = corpus_item("octahedron");
  SheafMorphism u = random_morphism(item.sheaf("constant"), rng);
  Triangle t = mapping_triangle(u);
  t.cone.validate();
  for (CellId c = 0; c < item.complex->cell_count(); ++c) {
    // χ is additive along the triangle at every stalk.
    long a = stalk(u.source(), c).euler(), b = stalk(u.target(), c).euler(), k = stalk(t.cone, c).euler();
    REQUIRE(k == b - a);
  }
}

TEST_CASE("shift moves cohomology") {
  auto item = corpus_item("circle");
  const auto& f = item.sheaf("constant");
  REQUIRE(derived_sections(shift(f, 2)) == derived_sections(f).shifted(2));
  REQUIRE(stalk(shift(f, -1), 0) == GradedDims{{1, 1}});
}

TEST_CASE("local and cohomology-sheaf euler characteristics agree") {
  for (const auto& item : corpus()) {
    for (const auto& s : item.sheaves) {
      ConstructibleFunction a = chi_local(s.sheaf);
      ConstructibleFunction b{item.complex, std::vector<long>(item.complex->cell_count(), 0)};
      for (const auto& [k, h] : cohomology_sheaves(s.sheaf))
        for (CellId c = 0; c < item.complex->cell_count(); ++c) b.values[c] += (k % 2 == 0 ? 1 : -1) * long(h.stalk(c));
      REQUIRE(a.values == b.values);
    }
  }
}

TEST_CASE("tensor with the constant sheaf is the identity on stalks") {
  auto item = corpus_item("two-hemisphere-sphere");
  const auto& c = item.sheaf("constant");
  for (const auto& s : item.sheaves) REQUIRE(same_stalk_cohomology(tensor(c, s.sheaf), s.sheaf));
}

TEST_CASE("local systems rejects non-flat transport") {
  auto x = octahedron_complex();
  Matrix two = Matrix::identity(1) * Rational(2);
  REQUIRE_THROWS_AS(local_system(x, 1, {{{0, 2}, two}}), SheafError);
}

TEST_CASE("extension by zero and restriction") {
  auto x = octahedron_complex();
  CellRegion north(*x, x->star_cells(x->vertex_cell(4)));
  SheafComplex f = extension_by_zero(x, north);
  for (CellId c = 0; c < x->cell_count(); ++c) REQUIRE(stalk(f, c)[0] == (north.contains(c) ? 1u : 0u));
  SheafComplex r = restrict_to(SheafComplex::concentrated(constant_sheaf(x)), north);
  REQUIRE(r.domain() == north);
  REQUIRE(derived_sections(r) == GradedDims{{0, 1}});
}
