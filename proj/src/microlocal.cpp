#include "cellsheaf/microlocal.hpp"


#include <algorithm>
#include <exception>
#include <random>

#include "cellsheaf/feasibility.hpp"

namespace cellsheaf {

namespace {

std::string cell_name(const SimplicialComplex& x, CellId c) {
  std::string out = "[";
  const auto& vs = x.cell(c).vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
  return out + "]";
}

const Point& base_point(const SimplicialComplex& x, CellId cell) {
  return x.coordinates(x.cell(cell).vertices.front());
}

void require_constant_on(const SimplicialComplex& x, CellId cell, const Point& xi) {
  if (xi.size() != x.ambient_dim()) throw GeometryError("covector has the wrong dimension");
  const Point& p = base_point(x, cell);
  for (VertexId v : x.cell(cell).vertices)
    if (dot(xi, subtract(x.coordinates(v), p)) != 0)
      throw GeometryError("covector is not constant on " + cell_name(x, cell));
}

bool is_zero_point(const Point& xi) {
  return std::all_of(xi.begin(), xi.end(), [](const Rational& r) { return r == 0; });
}

// Multiplicity from the local Euler characteristic of a sheaf on the whole complex.
long multiplicity_from_chi(const SimplicialComplex& x, const std::vector<long>& chi, CellId cell, const Point& xi) {
  require_constant_on(x, cell, xi);
  if (is_zero_point(xi)) return chi[cell];
  const Rational level = dot(xi, base_point(x, cell));
  ComplexPtr star = closed_star_complex(x, cell);
  Subdivision sub = subdivide_along_level(star, xi, level);
  const auto& refined = *sub.refined;
  std::vector<long> refined_chi(refined.cell_count());
  std::vector<CellId> lower;
  for (CellId c = 0; c < refined.cell_count(); ++c) {
    CellId original = x.id_of(star->cell(sub.carrier(c)).vertices);
    refined_chi[c] = chi[original];
    if (!x.is_face(cell, original)) continue;
    bool below = false, above = false;
    for (VertexId v : refined.cell(c).vertices) {
      int s = sgn(dot(xi, refined.coordinates(v)) - level);
      below = below || s < 0;
      above = above || s > 0;
    }
    if (below && !above) lower.push_back(c);
  }
  CellRegion whole = CellRegion::whole(refined);
  CellRegion region(refined, lower);
  return chi[cell] - open_sections_euler(refined, whole, std::move(refined_chi), region);
}

long multiplicity_by_cohomology(const SheafComplex& f, CellId cell, const Point& xi) {
  const auto& x = *f.complex();
  require_constant_on(x, cell, xi);
  long stalk_chi = stalk(f, cell).euler();
  if (is_zero_point(xi)) return stalk_chi;
  const Rational level = dot(xi, base_point(x, cell));
  ComplexPtr star = closed_star_complex(x, cell);
  Subdivision sub = subdivide_along_level(star, xi, level);
  CellMap to_x = sub.carrier.then(CellMap::inclusion(star, f.complex()));
  SheafComplex refined = pullback(to_x, f);
  const auto& r = *sub.refined;
  std::vector<CellId> lower;
  for (CellId c = 0; c < r.cell_count(); ++c) {
    if (!x.is_face(cell, to_x(c))) continue;
    bool below = false, above = false;
    for (VertexId v : r.cell(c).vertices) {
      int s = sgn(dot(xi, r.coordinates(v)) - level);
      below = below || s < 0;
      above = above || s > 0;
    }
    if (below && !above) lower.push_back(c);
  }
  return stalk_chi - derived_sections(CellRegion(r, lower), refined).euler();
}

void require_whole_domain(const SheafComplex& f) {
  if (f.domain().size() != f.complex()->cell_count())
    throw SheafError("characteristic cycles need a complex on the whole space; extend by zero or push forward first");
}

template <class Body>
void run_indexed(std::size_t n, Execution execution, Body body) {
  if (execution == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<CycleEntry> all_chambers(const SimplicialComplex& x, Execution execution) {
  std::vector<std::vector<ConormalChamber>> per_cell(x.cell_count());
  run_indexed(x.cell_count(), execution, [&](std::size_t c) { per_cell[c] = chambers(x, c); });
  std::vector<CycleEntry> out;
  for (auto& list : per_cell)
    for (auto& ch : list) out.push_back(CycleEntry{std::move(ch), 0});
  return out;
}

}  // namespace

Matrix conormal_basis(const SimplicialComplex& x, CellId cell) {
  const auto& vs = x.cell(cell).vertices;
  const Point& p = x.coordinates(vs.front());
  Matrix directions(vs.size() - 1, x.ambient_dim());
  for (std::size_t i = 1; i < vs.size(); ++i) {
    Point d = subtract(x.coordinates(vs[i]), p);
    for (std::size_t j = 0; j < d.size(); ++j) directions(i - 1, j) = d[j];
  }
  return kernel_basis(directions);
}

std::vector<ConormalChamber> chambers(const SimplicialComplex& x, CellId cell) {
  const Matrix basis = conormal_basis(x, cell);
  const std::size_t d = basis.cols();
  const Point& p = base_point(x, cell);
  const std::vector<VertexId> link = link_vertices(x, cell);
  if (d == 0 || link.empty()) return {ConormalChamber{cell, {}, Point(x.ambient_dim())}};

  // Hyperplane normals in conormal coordinates.
  std::vector<std::vector<Rational>> normals;
  for (VertexId w : link) {
    Point diff = subtract(x.coordinates(w), p);
    std::vector<Rational> a(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < diff.size(); ++j) a[k] += basis(j, k) * diff[j];
    normals.push_back(std::move(a));
  }

  std::vector<ConormalChamber> out;
  std::vector<int> signs;
  auto system = [&]() {
    Matrix a(signs.size(), d);
    for (std::size_t i = 0; i < signs.size(); ++i)
      for (std::size_t k = 0; k < d; ++k) a(i, k) = normals[i][k] * signs[i];
    return a;
  };
  auto search = [&](auto&& self) -> void {
    auto y = find_strict_solution(system());
    if (!y) return;
    if (signs.size() == link.size()) {
      ConormalChamber ch{cell, {}, Point(x.ambient_dim())};
      for (std::size_t i = 0; i < link.size(); ++i) ch.signs[link[i]] = signs[i];
      for (std::size_t j = 0; j < x.ambient_dim(); ++j)
        for (std::size_t k = 0; k < d; ++k) ch.witness[j] += basis(j, k) * (*y)[k];
      out.push_back(std::move(ch));
      return;
    }
    for (int s : {1, -1}) {
      signs.push_back(s);
      self(self);
      signs.pop_back();
    }
  };
  search(search);
  return out;
}

std::map<VertexId, int> chamber_signs(const SimplicialComplex& x, CellId cell, const Point& xi) {
  require_constant_on(x, cell, xi);
  const Point& p = base_point(x, cell);
  std::map<VertexId, int> out;
  for (VertexId w : link_vertices(x, cell)) {
    int s = sgn(dot(xi, subtract(x.coordinates(w), p)));
    if (s == 0) throw GenericityError("covector lies on a chamber wall at " + cell_name(x, cell));
    out[w] = s;
  }
  return out;
}

long microlocal_multiplicity(const SheafComplex& f, CellId cell, const Point& xi, MorseRoute route) {
  require_whole_domain(f);
  if (route == MorseRoute::cohomology) return multiplicity_by_cohomology(f, cell, xi);
  return multiplicity_from_chi(*f.complex(), chi_local(f).values, cell, xi);
}

long microlocal_multiplicity(const SheafComplex& f, const ConormalChamber& chamber, MorseRoute route) {
  return microlocal_multiplicity(f, chamber.cell, chamber.witness, route);
}

// ---------------------------------------------------------------- cycles

ConormalCycle::ConormalCycle(ComplexPtr complex) : complex_(std::move(complex)) {
  entries_ = all_chambers(*complex_, Execution::serial);
}

long ConormalCycle::multiplicity(CellId cell, const std::map<VertexId, int>& signs) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), cell,
                             [](const CycleEntry& e, CellId c) { return e.chamber.cell < c; });
  for (; it != entries_.end() && it->chamber.cell == cell; ++it)
    if (it->chamber.signs == signs) return it->multiplicity;
  return 0;
}

long ConormalCycle::multiplicity_at(CellId cell, const Point& xi) const {
  return multiplicity(cell, chamber_signs(*complex_, cell, xi));
}

bool ConormalCycle::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CycleEntry& e) { return e.multiplicity == 0; });
}

void ConormalCycle::require_compatible(const ConormalCycle& other) const {
  if (!same_complex(complex_, other.complex_) || entries_.size() != other.entries_.size())
    throw GeometryError("cycles live on different complexes");
}

ConormalCycle& ConormalCycle::operator+=(const ConormalCycle& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i].multiplicity += other.entries_[i].multiplicity;
  return *this;
}

ConormalCycle& ConormalCycle::operator-=(const ConormalCycle& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i].multiplicity -= other.entries_[i].multiplicity;
  return *this;
}

ConormalCycle& ConormalCycle::operator*=(long k) {
  for (auto& e : entries_) e.multiplicity *= k;
  return *this;
}

bool operator==(const ConormalCycle& a, const ConormalCycle& b) {
  if (!same_complex(a.complex_, b.complex_) || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    if (a.entries_[i].multiplicity != b.entries_[i].multiplicity || a.entries_[i].chamber.signs != b.entries_[i].chamber.signs)
      return false;
  return true;
}

ConormalCycle characteristic_cycle_of(const ConstructibleFunction& chi, Execution execution) {
  const auto& x = *chi.complex;
  ConormalCycle cycle;
  cycle = ConormalCycle(chi.complex);
  auto& entries = cycle.entries();
  run_indexed(entries.size(), execution, [&](std::size_t i) {
    entries[i].multiplicity = multiplicity_from_chi(x, chi.values, entries[i].chamber.cell, entries[i].chamber.witness);
  });
  return cycle;
}

ConormalCycle characteristic_cycle(const SheafComplex& f, Execution execution) {
  require_whole_domain(f);
  return characteristic_cycle_of(chi_local(f), execution);
}

void require_generic(const SimplicialComplex& x, const Point& xi) {
  if (xi.size() != x.ambient_dim()) throw GeometryError("covector has the wrong dimension");
  for (CellId e : x.cells_of_dim(1)) {
    const auto& vs = x.cell(e).vertices;
    if (dot(xi, subtract(x.coordinates(vs[1]), x.coordinates(vs[0]))) == 0)
      throw GenericityError("covector is constant on edge " + cell_name(x, e));
  }
}

long index_pairing(const ConormalCycle& cycle, const Point& xi) {
  const auto& x = *cycle.complex();
  require_generic(x, xi);
  long total = 0;
  for (CellId v : x.cells_of_dim(0)) total += cycle.multiplicity_at(v, xi);
  return total;
}

ConormalCycle cc_pushforward_closed(const ConormalCycle& cycle, const CellMap& inclusion) {
  if (inclusion.source() != cycle.complex()) throw GeometryError("cycle does not live on the source of the inclusion");
  const auto& x = *inclusion.source();
  const auto& y = *inclusion.target();
  if (x.ambient_dim() != y.ambient_dim()) throw GeometryError("inclusion must share ambient coordinates");
  std::map<CellId, CellId> preimage;
  for (CellId c = 0; c < x.cell_count(); ++c) {
    if (x.cell(c).vertices != y.cell(inclusion(c)).vertices) throw GeometryError("source is not a subcomplex of the target");
    preimage[inclusion(c)] = c;
  }
  ConormalCycle out(inclusion.target());
  for (auto& e : out.entries()) {
    auto it = preimage.find(e.chamber.cell);
    if (it == preimage.end()) continue;
    e.multiplicity = cycle.multiplicity_at(it->second, e.chamber.witness);
  }
  return out;
}

// ---------------------------------------------------------------- checks

CheckReport external_multiplicativity(const SheafComplex& f, const SheafComplex& g, std::size_t samples, unsigned seed) {
  require_whole_domain(f);
  require_whole_domain(g);
  const auto& x = *f.complex();
  const auto& z = *g.complex();
  ProductComplex prod = staircase_product(f.complex(), g.complex());
  SheafComplex boxed = tensor(pullback(prod.first, f), pullback(prod.second, g));
  const auto chi_f = chi_local(f).values, chi_g = chi_local(g).values, chi_p = chi_local(boxed).values;

  CheckReport report;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-7, 7);
  auto draw = [&](std::size_t n) {
    Point p(n);
    for (auto& c : p) c = coef(rng);
    return p;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    Point xi, eta, joint;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw GenericityError("could not draw a generic product covector");
      xi = draw(x.ambient_dim());
      eta = draw(z.ambient_dim());
      joint = xi;
      joint.insert(joint.end(), eta.begin(), eta.end());
      try {
        require_generic(x, xi);
        require_generic(z, eta);
        require_generic(*prod.product, joint);
        break;
      } catch (const GenericityError&) {
      }
    }
    for (const auto& [pair, id] : prod.pair_ids) {
      CellId v = x.vertex_cell(pair.first), w = z.vertex_cell(pair.second);
      CellId pv = prod.product->vertex_cell(id);
      long lhs = multiplicity_from_chi(*prod.product, chi_p, pv, joint);
      long rhs = multiplicity_from_chi(x, chi_f, v, xi) * multiplicity_from_chi(z, chi_g, w, eta);
      ++report.checked;
      if (lhs != rhs)
        report.failures.push_back("vertex pair (" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
                                  "): " + std::to_string(lhs) + " != " + std::to_string(rhs));
    }
  }
  long chi_prod = euler_global(boxed), chi_x = euler_global(f), chi_z = euler_global(g);
  ++report.checked;
  if (chi_prod != chi_x * chi_z)
    report.failures.push_back("Euler characteristic " + std::to_string(chi_prod) + " != " + std::to_string(chi_x) +
                              " * " + std::to_string(chi_z));
  return report;
}

CheckReport cc_additivity_check(const SheafMorphism& phi) {
  CheckReport report;
  const SheafComplex& a = phi.source();
  const SheafComplex& b = phi.target();
  require_whole_domain(a);
  require_whole_domain(b);
  SheafComplex cone = mapping_cone(phi);
  cone = cone.with_domain(CellRegion::whole(*cone.complex()));
  const auto& x = *a.complex();

  ConstructibleFunction ca = chi_local(a), cb = chi_local(b), cc = chi_local(cone);
  ++report.checked;
  if (!(cc == cb - ca)) report.failures.push_back("local Euler characteristic is not additive on the cone");
  ++report.checked;
  if (euler_global(cone) != euler_global(b) - euler_global(a))
    report.failures.push_back("global Euler characteristic is not additive on the cone");

  auto compare = [&](const ConormalCycle& lhs, const ConormalCycle& rhs, const std::string& what) {
    for (std::size_t i = 0; i < lhs.entries().size(); ++i) {
      ++report.checked;
      const auto& e = lhs.entries()[i];
      if (e.multiplicity != rhs.entries()[i].multiplicity)
        report.failures.push_back(what + " at " + cell_name(x, e.chamber.cell) + ": " + std::to_string(e.multiplicity) +
                                  " != " + std::to_string(rhs.entries()[i].multiplicity));
    }
  };
  ConormalCycle cca = characteristic_cycle(a), ccb = characteristic_cycle(b);
  compare(characteristic_cycle(cone), ccb - cca, "CC(cone) vs CC(target) - CC(source)");
  for (const SheafComplex* s : {&a, &b}) {
    ConormalCycle sum(s->complex());
    for (const auto& [k, h] : cohomology_sheaves(*s)) {
      ConormalCycle term = characteristic_cycle(SheafComplex::concentrated(h));
      if (k % 2 == 0) sum += term;
      else sum -= term;
    }
    compare(characteristic_cycle(*s), sum, "CC vs alternating sum over cohomology sheaves");
  }
  return report;
}

}  // namespace cellsheaf
