#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace cellsheaf;

TEST_CASE("euler integral of chi_local equals compact euler characteristic") {
  for (const auto& item : corpus())
    for (const auto& s : item.sheaves) {
      INFO(item.name << " / " << s.name);
      REQUIRE(euler_integral(chi_local(s.sheaf)) == euler_global_compact(s.sheaf));
    }
}

TEST_CASE("euler integral of the indicator of a complex is its euler characteristic") {
  for (const auto& item : corpus()) {
    ConstructibleFunction one{item.complex, std::vector<long>(item.complex->cell_count(), 1)};
    REQUIRE(euler_integral(one) == item.complex->euler_characteristic());
  }
}

TEST_CASE("pushforward of functions matches proper pushforward of sheaves") {
  std::mt19937 rng(12);
  for (const auto& fb : testing::fibrations()) {
    for (int t = 0; t < 2; ++t) {
      SheafComplex f = random_injective_complex(fb.map.source(), rng);
      INFO(fb.name);
      REQUIRE(pushforward_function(fb.map, chi_local(f)).values == chi_local(pushforward_proper(fb.map, f)).values);
    }
  }
}

TEST_CASE("pullback of functions matches pullback of sheaves") {
  std::mt19937 rng(13);
  for (const auto& fb : testing::fibrations()) {
    SheafComplex g = random_injective_complex(fb.map.target(), rng);
    REQUIRE(pullback_function(fb.map, chi_local(g)).values == chi_local(pullback(fb.map, g)).values);
  }
}

TEST_CASE("euler integral is additive and pushes forward to a point") {
  auto item = corpus_item("staircase-torus");
  ConstructibleFunction a = chi_local(item.sheaf("random_0")), b = chi_local(item.sheaf("pushforward_star"));
  REQUIRE(euler_integral(a + b) == euler_integral(a) + euler_integral(b));
  REQUIRE(euler_integral(a - b) == euler_integral(a) - euler_integral(b));
  CellMap p = testing::to_point(item.complex);
  REQUIRE(pushforward_function(p, a).values[0] == euler_integral(a));
}
