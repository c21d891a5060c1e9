#include <filesystem>

#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace cellsheaf;

TEST_CASE("complexes, sheaves and cycles round-trip") {
  for (const auto& item : corpus()) {
    ComplexPtr x = complex_from_json(Json::parse(complex_to_json(*item.complex).dump()));
    REQUIRE(complex_to_json(*x) == complex_to_json(*item.complex));
    for (const auto& s : item.sheaves) {
      Json j = Json::parse(sheaf_to_json(s.sheaf).dump());
      SheafComplex back = sheaf_from_json(j);
      REQUIRE(sheaf_to_json(back) == sheaf_to_json(s.sheaf));
      REQUIRE(back.domain() == CellRegion::whole(*back.complex()));
      for (int k = s.sheaf.lowest_degree(); k <= s.sheaf.highest_degree(); ++k) REQUIRE(back.term(k) == s.sheaf.term(k));
    }
    ConormalCycle cc = characteristic_cycle(item.sheaves.front().sheaf);
    REQUIRE(cycle_from_json(Json::parse(cycle_to_json(cc).dump())) == cc);
  }
}

TEST_CASE("domains and maps round-trip") {
  auto x = octahedron_complex();
  CellRegion north(*x, x->star_cells(x->vertex_cell(4)));
  SheafComplex f = constant_on(x, north, 2);
  SheafComplex back = sheaf_from_json(sheaf_to_json(f));
  REQUIRE(back.domain().cells() == north.cells());
  for (const auto& fb : testing::fibrations()) {
    CellMap m = map_from_json(map_to_json(fb.map));
    REQUIRE(m.images() == fb.map.images());
  }
}

TEST_CASE("rationals are written exactly") {
  Point p{Rational(-3, 4), Rational(5)};
  REQUIRE(point_to_json(p) == Json::array({"-3/4", "5"}));
  REQUIRE(point_from_json(Json::array({"-3/4", 5})) == p);
}

TEST_CASE("malformed documents are format errors") {
  REQUIRE_THROWS_AS(complex_from_json(Json::object()), FormatError);
  REQUIRE_THROWS_AS(point_from_json(Json::array({"1/0"})), FormatError);
  REQUIRE_THROWS_AS(point_from_json(Json::array({"x"})), FormatError);
  auto x = interval_complex();
  REQUIRE_THROWS_AS(parse_cell_key(*x, "0,2"), FormatError);
  REQUIRE_THROWS_AS(parse_cell_key(*x, "a"), FormatError);
  Json bad = sheaf_to_json(corpus_item("interval").sheaf("constant"));
  bad["degrees"]["0"]["restrictions"]["0<0,1"] = Json::array({Json::array({1, 2})});
  REQUIRE_THROWS_AS(sheaf_from_json(bad), FormatError);
}

TEST_CASE("non-commuting data in a file is rejected") {
  auto item = corpus_item("octahedron");
  Json j = sheaf_to_json(item.sheaf("constant"));
  j["degrees"]["0"]["restrictions"]["0<0,2"] = Json::array({Json::array({2})});
  REQUIRE_THROWS_AS(sheaf_from_json(j), SheafError);
}

TEST_CASE("files on disk resolve complex paths relative to the sheaf") {
  auto dir = std::filesystem::temp_directory_path() / "cellsheaf_io_test";
  std::filesystem::create_directories(dir);
  auto item = corpus_item("circle");
  write_json(dir / "circle.json", complex_to_json(*item.complex));
  Json j = sheaf_to_json(item.sheaf("pushforward_star"));
  j["complex"] = "circle.json";
  write_json(dir / "f.json", j);
  SheafComplex back = sheaf_from_json(read_json(dir / "f.json"), dir);
  REQUIRE(derived_sections(back) == derived_sections(item.sheaf("pushforward_star")));
  REQUIRE_THROWS_AS(read_json(dir / "missing.json"), FormatError);
  std::filesystem::remove_all(dir);
}
