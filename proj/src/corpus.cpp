#include "cellsheaf/corpus.hpp"

namespace cellsheaf {

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

CellRegion star_region(const SimplicialComplex& x, VertexId v) { return CellRegion(x, x.star_cells(x.vertex_cell(v))); }

NamedSheaf named(std::string name, SheafComplex f) { return NamedSheaf{std::move(name), std::move(f)}; }

void add_random(CorpusItem& item, std::mt19937& rng) {
  for (int i = 0; i < 2; ++i) item.sheaves.push_back(named("random_" + std::to_string(i), random_injective_complex(item.complex, rng)));
}

}  // namespace

ComplexPtr interval_complex() {
  return SimplicialComplex::build(1, {{0, pt({0})}, {1, pt({1})}}, {{0, 1}});
}

ComplexPtr subdivided_interval_complex() {
  return SimplicialComplex::build(1, {{0, pt({0})}, {1, Point{Rational(1, 2)}}, {2, pt({1})}}, {{0, 1}, {1, 2}});
}

ComplexPtr circle_complex() {
  return SimplicialComplex::build(2, {{0, pt({0, 0})}, {1, pt({1, 0})}, {2, pt({0, 1})}}, {{0, 1}, {1, 2}, {0, 2}});
}

ComplexPtr octahedron_complex() {
  std::map<VertexId, Point> c{{0, pt({1, 0, 0})}, {1, pt({-1, 0, 0})}, {2, pt({0, 1, 0})},
                              {3, pt({0, -1, 0})}, {4, pt({0, 0, 1})}, {5, pt({0, 0, -1})}};
  std::vector<std::vector<VertexId>> cells;
  for (VertexId a : {0, 1})
    for (VertexId b : {2, 3})
      for (VertexId z : {4, 5}) cells.push_back({a, b, z});
  return SimplicialComplex::build(3, c, cells);
}

ComplexPtr two_hemisphere_sphere() {
  std::map<VertexId, Point> c{{0, pt({2, 0, 0})},  {1, pt({1, 2, 0})},   {2, pt({-1, 2, 0})}, {3, pt({-2, 0, 0})},
                              {4, pt({-1, -2, 0})}, {5, pt({1, -2, 0})}, {6, pt({0, 0, 1})},  {7, pt({0, 0, -1})}};
  std::vector<std::vector<VertexId>> cells;
  for (VertexId i = 0; i < 6; ++i)
    for (VertexId pole : {6, 7}) cells.push_back({i, (i + 1) % 6, pole});
  return SimplicialComplex::build(3, c, cells);
}

ComplexPtr staircase_torus() { return staircase_product(circle_complex(), circle_complex()).product; }

const SheafComplex& CorpusItem::sheaf(const std::string& wanted) const {
  for (const auto& s : sheaves)
    if (s.name == wanted) return s.sheaf;
  throw Error("corpus item " + name + " has no sheaf " + wanted);
}

SheafComplex pushforward_from_open(const ComplexPtr& complex, const CellRegion& open, std::size_t rank) {
  return pushforward_derived(CellMap::identity(complex), constant_on(complex, open, rank));
}

std::vector<std::string> corpus_names() {
  return {"interval", "subdivided-interval", "circle", "mobius-circle", "octahedron", "two-hemisphere-sphere",
          "staircase-torus"};
}

CorpusItem corpus_item(const std::string& name, unsigned seed) {
  std::mt19937 rng(seed);
  CorpusItem item;
  item.name = name;
  auto constant = [&](std::size_t r = 1) { return SheafComplex::concentrated(constant_sheaf(item.complex, r)); };
  auto sky = [&](const std::vector<VertexId>& cell) {
    return SheafComplex::concentrated(skyscraper(item.complex, item.complex->id_of(cell)));
  };
  auto closed = [&](const std::vector<std::vector<VertexId>>& cells) {
    return extension_by_zero(item.complex, closure(*item.complex, region_from_simplices(*item.complex, cells).cells()));
  };

  if (name == "interval") {
    item.complex = interval_complex();
    CellRegion open = region_from_simplices(*item.complex, {{0, 1}});
    item.sheaves = {named("constant", constant()),
                    named("extension_open_edge", extension_by_zero(item.complex, open)),
                    named("pushforward_open_edge", pushforward_from_open(item.complex, open)),
                    named("closed_endpoint", closed({{0}})),
                    named("skyscraper_edge", sky({0, 1}))};
  } else if (name == "subdivided-interval") {
    item.complex = subdivided_interval_complex();
    CellRegion open = region_from_simplices(*item.complex, {{0, 1}, {1}, {1, 2}});
    item.sheaves = {named("constant", constant()),
                    named("extension_interior", extension_by_zero(item.complex, open)),
                    named("pushforward_interior", pushforward_from_open(item.complex, open)),
                    named("closed_midpoint", closed({{1}})),
                    named("skyscraper_left_edge", sky({0, 1}))};
  } else if (name == "circle" || name == "mobius-circle") {
    item.complex = circle_complex();
    item.closed_manifold_dim = 1;
    CellRegion open = star_region(*item.complex, 1);
    if (name == "circle") {
      item.sheaves = {named("constant", constant()),
                      named("constant_rank2", constant(2)),
                      named("extension_star", extension_by_zero(item.complex, open)),
                      named("pushforward_star", pushforward_from_open(item.complex, open)),
                      named("closed_vertex", closed({{0}})),
                      named("skyscraper_edge", sky({1, 2}))};
    } else {
      Matrix minus = Matrix::identity(1) * Rational(-1);
      CellularSheaf mobius = local_system(item.complex, 1, {{{0, 1}, minus}});
      SheafComplex l = SheafComplex::concentrated(mobius);
      Matrix rotation = Matrix::from_rows({{0, -1}, {1, 0}});
      CellularSheaf twisted = local_system(item.complex, 2, {{{1, 2}, rotation}});
      item.sheaves = {named("local_system", l),
                      named("local_system_squared", tensor(l, l)),
                      named("local_system_rank2", SheafComplex::concentrated(twisted)),
                      named("extension_star", extension_by_zero(restrict_to(l, open))),
                      named("pushforward_star", pushforward_derived(CellMap::identity(item.complex), restrict_to(l, open)))};
    }
  } else if (name == "octahedron") {
    item.complex = octahedron_complex();
    item.closed_manifold_dim = 2;
    CellRegion north = star_region(*item.complex, 4);
    item.sheaves = {named("constant", constant()),
                    named("extension_north", extension_by_zero(item.complex, north)),
                    named("pushforward_north", pushforward_from_open(item.complex, north)),
                    named("equator", closed({{0, 2}, {2, 1}, {1, 3}, {3, 0}})),
                    named("skyscraper_vertex", sky({5})),
                    named("skyscraper_triangle", sky({0, 2, 4}))};
  } else if (name == "two-hemisphere-sphere") {
    item.complex = two_hemisphere_sphere();
    item.closed_manifold_dim = 2;
    CellRegion south = star_region(*item.complex, 7);
    item.sheaves = {named("constant", constant()),
                    named("extension_south", extension_by_zero(item.complex, south)),
                    named("pushforward_south", pushforward_from_open(item.complex, south)),
                    named("equator", closed({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}})),
                    named("skyscraper_pole", sky({6}))};
  } else if (name == "staircase-torus") {
    item.complex = staircase_torus();
    item.closed_manifold_dim = 2;
    CellRegion open = star_region(*item.complex, 4);
    item.sheaves = {named("constant", constant()),
                    named("extension_star", extension_by_zero(item.complex, open)),
                    named("pushforward_star", pushforward_from_open(item.complex, open)),
                    named("meridian", closed({{0, 3}, {3, 6}, {0, 6}})),
                    named("skyscraper_vertex", sky({0}))};
  } else {
    throw Error("unknown corpus item '" + name + "'");
  }
  add_random(item, rng);
  for (const auto& s : item.sheaves) s.sheaf.validate();
  return item;
}

std::vector<CorpusItem> corpus(unsigned seed) {
  std::vector<CorpusItem> out;
  for (const auto& name : corpus_names()) out.push_back(corpus_item(name, seed));
  return out;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

SheafComplex random_injective_complex(const ComplexPtr& complex, std::mt19937& rng, std::size_t max_mult) {
  const auto& x = *complex;
  std::uniform_int_distribution<std::size_t> mult(0, max_mult);
  InjectiveComplex i;
  i.complex = complex;
  i.domain = CellRegion::whole(x);
  i.lowest = 0;
  i.summands.resize(2);
  for (auto& list : i.summands)
    for (CellId c = 0; c < x.cell_count(); ++c) {
      std::size_t m = mult(rng);
      if (m) list.push_back({c, m});
    }
  Matrix d(i.rank(1), i.rank(0));
  std::size_t row = 0;
  for (const auto& t : i.summands[1]) {
    std::size_t col = 0;
    for (const auto& s : i.summands[0]) {
      if (x.is_face(t.cell, s.cell)) d.set_block(row, col, random_matrix(t.multiplicity, s.multiplicity, rng));
      col += s.multiplicity;
    }
    row += t.multiplicity;
  }
  i.differentials.push_back(std::move(d));
  i.validate();
  return i.to_sheaf();
}

SheafMorphism random_morphism(const SheafComplex& source, std::mt19937& rng, std::size_t max_mult) {
  if (source.lowest_degree() != 0 || source.highest_degree() != 0)
    throw SheafError("random morphisms start from a single sheaf in degree 0");
  const auto& x = *source.complex();
  const CellularSheaf& f = source.term(0);
  std::uniform_int_distribution<std::size_t> mult(0, max_mult);
  InjectiveComplex target;
  target.complex = source.complex();
  target.domain = CellRegion::whole(x);
  target.summands.resize(1);
  std::vector<Matrix> coefficient;
  for (CellId c = 0; c < x.cell_count(); ++c) {
    std::size_t m = mult(rng);
    if (!m) continue;
    target.summands[0].push_back({c, m});
    coefficient.push_back(random_matrix(m, f.stalk(c), rng));
  }
  SheafComplex tsheaf = target.to_sheaf();
  // At a cell t the component into the summand over s ⊇ t is M_s ∘ ρ_{t s}.
  SheafMap comp;
  for (CellId t = 0; t < x.cell_count(); ++t) {
    Matrix m(tsheaf.term(0).stalk(t), f.stalk(t));
    std::size_t row = 0;
    for (std::size_t i = 0; i < target.summands[0].size(); ++i) {
      const auto& s = target.summands[0][i];
      if (!x.is_face(t, s.cell)) continue;
      m.set_block(row, 0, coefficient[i] * f.composite_restriction(t, s.cell));
      row += s.multiplicity;
    }
    comp.components.push_back(std::move(m));
  }
  SheafMorphism out(source, tsheaf, {{0, comp}});
  out.validate();
  return out;
}

}  // namespace cellsheaf
