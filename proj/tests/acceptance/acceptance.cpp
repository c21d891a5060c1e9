// One line per acceptance criterion. Exit status is nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace cellsheaf;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits. All numeric comparisons are exact integers.
constexpr double kTableSeconds = 1.0;
constexpr double kIndexSuiteSeconds = 60.0;
constexpr std::size_t kCovectorsPerSheaf = 20;
constexpr std::size_t kRandomMorphisms = 50;
constexpr std::size_t kLevelCuts = 5;
constexpr unsigned kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checked = 0;

  void fail(const std::string& what) {
    if (pass) detail = what;
    pass = false;
  }
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) fail(what);
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string signs_text(const std::map<VertexId, int>& s) {
  if (s.empty()) return "zero";
  std::string out;
  for (const auto& [v, x] : s) out += std::to_string(v) + (x > 0 ? "+" : "-");
  return out;
}

std::string entry_text(const SimplicialComplex& x, const ConormalChamber& c) {
  return "(" + cell_key(x, c.cell) + ", " + signs_text(c.signs) + ")";
}

SheafComplex constant(const ComplexPtr& x) { return SheafComplex::concentrated(constant_sheaf(x)); }

// Compares a cycle with an expected multiplicity function on all chambers.
void compare_table(Outcome& o, const ConormalCycle& cc, const std::function<long(const ConormalChamber&)>& expected,
                   const std::string& label) {
  const auto& x = *cc.complex();
  std::size_t wrong = 0;
  std::string first;
  for (const auto& e : cc.entries()) {
    long want = expected(e.chamber);
    ++o.checked;
    if (e.multiplicity != want) {
      if (wrong++ == 0)
        first = entry_text(x, e.chamber) + " has " + std::to_string(e.multiplicity) + ", expected " + std::to_string(want);
    }
  }
  if (wrong) o.fail(label + ": " + std::to_string(wrong) + " of " + std::to_string(cc.entries().size()) + " chambers differ, first " + first);
}

void print(int n, const std::string& title, const Outcome& o, double secs) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", secs);
  std::cout << "criterion " << (n < 10 ? " " : "") << n << "  " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  ["
            << o.checked << " checks, " << buf << "]";
  if (!o.detail.empty()) std::cout << "  " << o.detail;
  std::cout << std::endl;
}

// --------------------------------------------------------------------------------

Outcome open_edge_table() {
  Outcome o;
  auto x = interval_complex();
  CellRegion open(*x, {x->id_of({0, 1})});
  ConormalCycle cc = characteristic_cycle(pushforward_from_open(x, open));
  // Chambers at a vertex of the line are named by the sign of the covector.
  auto at = [&](VertexId v, int sign) -> long {
    CellId c = x->id_of({v});
    for (const auto& e : cc.entries())
      if (e.chamber.cell == c && sgn(e.chamber.witness[0]) == sign) return e.multiplicity;
    return -999;
  };
  o.expect(at(0, 1) == 1, "(v0,+) != 1");
  o.expect(at(0, -1) == 0, "(v0,-) != 0");
  o.expect(at(1, -1) == 1, "(v1,-) != 1");
  o.expect(at(1, 1) == 0, "(v1,+) != 0");
  o.expect(cc.multiplicity(x->id_of({0, 1}), {}) == 1, "(edge,zero) != 1");
  o.expect(cc.entries().size() == 5, "unexpected chamber count");
  return o;
}

Outcome index_theorem(const std::vector<CorpusItem>& items) {
  Outcome o;
  std::mt19937 rng(kSeed);
  for (const auto& item : items) {
    std::vector<Point> xis;
    for (std::size_t i = 0; i < kCovectorsPerSheaf; ++i) xis.push_back(random_generic_covector(*item.complex, rng));
    for (const auto& s : item.sheaves) {
      long chi = euler_global(s.sheaf);
      ConormalCycle cc = characteristic_cycle(s.sheaf);
      for (const auto& xi : xis) {
        long p = index_pairing(cc, xi);
        o.expect(p == chi, item.name + "/" + s.name + ": pairing " + std::to_string(p) + " vs chi " + std::to_string(chi));
      }
    }
  }
  o.detail = o.pass ? "seed " + std::to_string(kSeed) : o.detail + " (seed " + std::to_string(kSeed) + ")";
  return o;
}

Outcome normalization() {
  Outcome o;
  for (const auto& name : {"interval", "circle", "octahedron", "staircase-torus"}) {
    auto item = corpus_item(name);
    const auto& x = *item.complex;
    ConormalCycle cc = characteristic_cycle(constant(item.complex));
    compare_table(o, cc, [&](const ConormalChamber& c) -> long {
      return c.is_zero() && x.dim(c.cell) == x.dimension() ? 1 : 0;
    }, name);
  }
  return o;
}

Outcome equator_conormal() {
  Outcome o;
  auto item = corpus_item("octahedron");
  const auto& x = *item.complex;
  std::vector<CellId> edges{x.id_of({0, 2}), x.id_of({1, 2}), x.id_of({1, 3}), x.id_of({0, 3})};
  ConormalCycle cc = characteristic_cycle(item.sheaf("equator"));
  compare_table(o, cc, [&](const ConormalChamber& c) -> long {
    return std::count(edges.begin(), edges.end(), c.cell) ? 1 : 0;
  }, "octahedron equator");
  return o;
}

Outcome hemisphere_cycle() {
  Outcome o;
  auto item = corpus_item("two-hemisphere-sphere");
  const auto& x = *item.complex;
  ConormalCycle cc = characteristic_cycle(item.sheaf("pushforward_south"));
  const VertexId south = 7;
  auto is_equator_edge = [&](CellId c) {
    const auto& v = x.cell(c).vertices;
    return v.size() == 2 && v[1] < 6;
  };
  std::map<CellId, int> per_edge;
  std::size_t southern_top = 0, southern_hit = 0;
  for (const auto& e : cc.entries()) {
    const auto& v = x.cell(e.chamber.cell).vertices;
    bool southern_zero = e.chamber.is_zero() && x.dim(e.chamber.cell) == 2 && v.back() == south;
    if (southern_zero) {
      ++southern_top;
      o.expect(e.multiplicity == 1, "southern zero chamber " + entry_text(x, e.chamber) + " has " + std::to_string(e.multiplicity));
      southern_hit += e.multiplicity == 1;
      continue;
    }
    if (e.multiplicity == 0) continue;
    if (is_equator_edge(e.chamber.cell)) {
      ++per_edge[e.chamber.cell];
      o.expect(e.multiplicity == 1, "equator chamber " + entry_text(x, e.chamber) + " has " + std::to_string(e.multiplicity));
      continue;
    }
    o.expect(false, "support outside the expected set at " + entry_text(x, e.chamber) + " with " + std::to_string(e.multiplicity));
  }
  for (CellId c : x.cells_of_dim(1))
    if (is_equator_edge(c))
      o.expect(per_edge[c] == 1, "equator edge " + cell_key(x, c) + " has " + std::to_string(per_edge[c]) + " nonzero chambers");
  o.expect(southern_top == 6 && southern_hit == 6, "southern zero chambers incomplete");
  return o;
}

Outcome additivity(const std::vector<CorpusItem>& items) {
  Outcome o;
  std::mt19937 rng(kSeed + 1);
  std::vector<std::pair<const CorpusItem*, const NamedSheaf*>> sources;
  for (const auto& item : items)
    for (const auto& s : item.sheaves)
      if (testing::is_single(s.sheaf)) sources.emplace_back(&item, &s);
  for (std::size_t n = 0; n < kRandomMorphisms; ++n) {
    const auto& [item, s] = sources[n % sources.size()];
    CheckReport r = cc_additivity_check(random_morphism(s->sheaf, rng));
    o.expect(r.holds(), item->name + "/" + s->name + ": " + (r.holds() ? "" : r.failures.front()));
  }
  return o;
}

Outcome duality(const std::vector<CorpusItem>& items) {
  Outcome o;
  for (const auto& item : items)
    for (const auto& s : item.sheaves)
      o.expect(same_stalk_cohomology(verdier_dual(verdier_dual(s.sheaf)), s.sheaf), "biduality fails for " + item.name + "/" + s.name);
  for (const auto& name : {"circle", "octahedron", "staircase-torus"}) {
    auto item = corpus_item(name);
    int n = item.closed_manifold_dim;
    GradedDims h = derived_sections(item.sheaf(name == std::string("circle") ? "constant" : "constant"));
    GradedDims hc = derived_sections_compact(item.sheaf("constant"));
    for (int p = 0; p <= n; ++p)
      o.expect(hc[n - p] == h[p], std::string(name) + ": dim H^" + std::to_string(n - p) + "_c != dim H^" + std::to_string(p));
  }
  auto interval = corpus_item("interval");
  const auto& x = interval.complex;
  SheafComplex dual_u = verdier_dual(constant_on(x, CellRegion(*x, {x->id_of({0, 1})})));
  o.expect(same_stalk_cohomology(verdier_dual(interval.sheaf("pushforward_open_edge")), extension_by_zero(dual_u)),
           "D(Rj_*) and j_!D differ on the interval");
  return o;
}

Outcome adjunctions() {
  Outcome o;
  std::mt19937 rng(kSeed + 2);
  for (const auto& fb : testing::fibrations()) {
    for (int t = 0; t < 2; ++t) {
      SheafComplex g = t == 0 ? constant(fb.map.target()) : random_injective_complex(fb.map.target(), rng, 1);
      SheafComplex f = random_injective_complex(fb.map.source(), rng, 1);
      o.expect(hyperext(pullback(fb.map, g), f) == hyperext(g, pushforward_derived(fb.map, f)), fb.name + ": pullback adjunction");
      o.expect(hyperext(pushforward_proper(fb.map, f), g) == hyperext(f, upper_shriek(fb.map, g)), fb.name + ": shriek adjunction");
    }
  }
  std::size_t yoneda = 0;
  for (const auto& name : {"interval", "circle", "mobius-circle", "octahedron"}) {
    auto item = corpus_item(name);
    for (std::size_t i = 0; i < item.sheaves.size(); ++i) {
      const auto& f = item.sheaves[i].sheaf;
      const auto& g = item.sheaves[(i + 1) % item.sheaves.size()].sheaf;
      if (!testing::is_single(f) || !testing::is_single(g)) continue;
      ++yoneda;
      o.expect(hyperext(f, g)[0] == hom_dimension(f.term(0), g.term(0)), std::string(name) + ": Ext^0 != Hom");
    }
  }
  o.expect(yoneda >= 10, "fewer than 10 Yoneda instances");
  return o;
}

Outcome local_cohomology_suite() {
  Outcome o;
  std::size_t triples = 0, excisions = 0;
  auto oct = corpus_item("octahedron");
  const auto& x = *oct.complex;
  CellRegion whole = CellRegion::whole(x);
  CellRegion equator = closure(x, {x.id_of({0, 2}), x.id_of({1, 2}), x.id_of({1, 3}), x.id_of({0, 3})});
  CellRegion pole(x, {x.vertex_cell(4)});
  CellRegion north_star(x, x.star_cells(x.vertex_cell(4)));
  for (const auto& s : oct.sheaves) {
    TripleReport t = local_cohomology_triple(whole, equator, s.sheaf);
    o.expect(t.exact && t.alternating_sum == 0, "triple not exact for " + s.name);
    ++triples;
    o.expect(excision(pole, north_star, s.sheaf).holds, "excision fails for " + s.name);
    ++excisions;
  }
  auto sphere = corpus_item("two-hemisphere-sphere");
  const auto& y = *sphere.complex;
  CellRegion south_star(y, y.star_cells(y.vertex_cell(7)));
  CellRegion south_pole(y, {y.vertex_cell(7)});
  for (const auto& s : sphere.sheaves) {
    TripleReport t = local_cohomology_triple(south_star, south_pole, s.sheaf);
    o.expect(t.exact && t.alternating_sum == 0, "triple not exact for " + s.name);
    ++triples;
  }
  o.expect(triples >= 5 && excisions >= 5, "too few instances");
  auto interval = corpus_item("interval");
  o.expect(local_cohomology(CellRegion(*interval.complex, {interval.complex->id_of({0})}), interval.sheaf("constant")).is_zero(),
           "endpoint local cohomology is nonzero");
  auto sub = corpus_item("subdivided-interval");
  CellRegion mid(*sub.complex, {sub.complex->id_of({1})});
  for (auto route : {LocalRoute::direct, LocalRoute::cone, LocalRoute::ext}) {
    GradedDims h = local_cohomology(mid, sub.sheaf("constant"), route);
    o.expect(h == GradedDims{{1, 1}}, "midpoint local cohomology is " + h.to_string());
  }
  return o;
}

Outcome base_change() {
  Outcome o;
  std::mt19937 rng(kSeed + 3);
  std::size_t maps = 0;
  bool has_cylinder = false;
  for (const auto& fb : testing::fibrations()) {
    ++maps;
    has_cylinder = has_cylinder || fb.name == "circle x edge -> edge";
    std::vector<SheafComplex> sheaves{constant(fb.map.source()), random_injective_complex(fb.map.source(), rng)};
    for (const auto& f : sheaves)
      for (CellId y = 0; y < fb.map.target()->cell_count(); ++y) {
        BaseChangeReport r = base_change_point_fiber(fb.map, f, y);
        o.expect(r.holds, fb.name + " at " + cell_key(*fb.map.target(), y) + ": " + r.stalk_side.to_string() + " vs " +
                              r.fiber_side.to_string());
      }
  }
  o.expect(maps >= 5 && has_cylinder, "fibration list incomplete");
  return o;
}

// m(σ, chamber) against the multiplicity at a refined cell of the same dimension inside σ.
void refinement_agrees(Outcome& o, const CorpusItem& item, const Subdivision& s, std::mt19937& rng,
                       const std::string& label) {
  const auto& x = *item.complex;
  for (const auto& sh : item.sheaves) {
    SheafComplex refined = pullback(s.carrier, sh.sheaf);
    ConormalCycle cc = characteristic_cycle(sh.sheaf);
    for (const auto& e : cc.entries()) {
      std::optional<Point> xi;
      CellId target = 0;
      for (CellId r = 0; r < s.refined->cell_count() && !xi; ++r)
        if (s.carrier(r) == e.chamber.cell && s.refined->dim(r) == x.dim(e.chamber.cell)) {
          target = r;
          xi = testing::refine_witness(x, e.chamber, *s.refined, r, rng);
        }
      if (!xi) {
        o.expect(false, label + ": no generic witness for " + entry_text(x, e.chamber));
        continue;
      }
      long m = microlocal_multiplicity(refined, target, *xi);
      o.expect(m == e.multiplicity, label + " " + item.name + "/" + sh.name + " at " + entry_text(x, e.chamber) + ": " +
                                        std::to_string(m) + " vs " + std::to_string(e.multiplicity));
    }
  }
}

Outcome oracles(const std::vector<CorpusItem>& items) {
  Outcome o;
  std::mt19937 rng(kSeed + 4);
  for (const auto& item : items) {
    if (item.name == "staircase-torus") continue;  // refinement is covered by the six smaller items
    refinement_agrees(o, item, barycentric_subdivision(item.complex), rng, "barycentric");
  }
  auto oct = corpus_item("octahedron");
  std::uniform_int_distribution<int> d(-5, 5);
  for (std::size_t k = 0; k < kLevelCuts; ++k) {
    Point l{d(rng), d(rng), d(rng)};
    if (l == Point{0, 0, 0}) l[0] = 1;
    Rational level(d(rng), 7);
    refinement_agrees(o, oct, subdivide_along_level(oct.complex, l, level), rng, "level cut");
  }
  for (const auto& item : items)
    for (const auto& s : item.sheaves)
      o.expect(euler_integral(chi_local(s.sheaf)) == euler_global_compact(s.sheaf), "integral route differs for " + item.name + "/" + s.name);
  return o;
}

Outcome local_system_vanishing() {
  Outcome o;
  auto item = corpus_item("mobius-circle");
  const auto& l = item.sheaf("local_system");
  o.expect(derived_sections(l).is_zero(), "H^*(S^1, L) = " + derived_sections(l).to_string());
  o.expect(testing::cochain_cohomology(l.term(0)).is_zero(), "cochain oracle gives nonzero cohomology");
  ConormalCycle cc = characteristic_cycle(l);
  std::mt19937 rng(kSeed + 5);
  for (std::size_t i = 0; i < kCovectorsPerSheaf; ++i)
    o.expect(index_pairing(cc, random_generic_covector(*item.complex, rng)) == 0, "nonzero index pairing");
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto run = [&](int n, const std::string& title, const std::function<Outcome()>& body, double limit = 0) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = seconds_since(t0);
    if (limit > 0 && secs >= limit) o.fail("took " + std::to_string(secs) + "s, limit " + std::to_string(limit) + "s");
    failed += !o.pass;
    print(n, title, o, secs);
  };

  run(1, "multiplicity table of Rj_* C on the open edge of [0,1]", open_edge_table, kTableSeconds);
  std::vector<CorpusItem> items;
  run(2, "index pairing equals euler characteristic on the corpus", [&] {
    items = corpus();
    return index_theorem(items);
  }, kIndexSuiteSeconds);
  if (items.empty()) items = corpus();
  run(3, "CC of the constant sheaf is the zero-section table", normalization);
  run(4, "CC of the equator sheaf on the octahedron is its conormal table", equator_conormal);
  run(5, "CC of Rj_* C on the southern hemisphere", hemisphere_cycle);
  run(6, "euler and CC additivity on 50 random mapping cones", [&] { return additivity(items); });
  run(7, "biduality, Poincare duality, D Rj_* vs j_! D", [&] { return duality(items); });
  run(8, "adjunction dimensions and Ext^0 = Hom", adjunctions);
  run(9, "local cohomology sequences, excision, points of [0,1]", local_cohomology_suite);
  run(10, "base change at point fibers", base_change);
  run(11, "multiplicities under refinement; euler integral route", [&] { return oracles(items); });
  run(12, "monodromy -1 local system on the circle", local_system_vanishing);

  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
