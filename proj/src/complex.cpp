#include "cellsheaf/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "cellsheaf/feasibility.hpp"
#include "cellsheaf/linalg.hpp"

namespace cellsheaf {

namespace {

std::string describe(const std::vector<VertexId>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(vs[i]);
  }
  return out + "]";
}

void all_faces(const std::vector<VertexId>& cell, std::set<std::vector<VertexId>>& out) {
  if (cell.empty() || !out.insert(cell).second) return;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    std::vector<VertexId> face = cell;
    face.erase(face.begin() + static_cast<long>(i));
    all_faces(face, out);
  }
}

bool affinely_independent(const std::vector<const Point*>& pts) {
  if (pts.size() <= 1) return true;
  const std::size_t n = pts.front()->size();
  if (pts.size() - 1 > n) return false;
  Matrix m(pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i - 1, j) = (*pts[i])[j] - (*pts[0])[j];
  return rank(m) == pts.size() - 1;
}

// Do the relative interiors of two simplices meet?
bool open_cells_meet(const std::vector<const Point*>& a, const std::vector<const Point*>& b, std::size_t n) {
  // lambda = 1 + x, mu = 1 + y with x, y >= 0 and sum lambda v = sum mu w, sum lambda = sum mu.
  Matrix m(n + 1, a.size() + b.size());
  std::vector<Rational> rhs(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      m(j, i) = (*a[i])[j];
      rhs[j] -= (*a[i])[j];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      m(j, a.size() + i) = -(*b[i])[j];
      rhs[j] += (*b[i])[j];
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) m(n, i) = 1;
  for (std::size_t i = 0; i < b.size(); ++i) m(n, a.size() + i) = -1;
  rhs[n] = static_cast<long>(b.size()) - static_cast<long>(a.size());
  return find_nonnegative_solution(m, rhs).has_value();
}

std::vector<VertexId> sorted_unique(std::vector<VertexId> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace

bool Simplex::has_face(const Simplex& face) const {
  return std::includes(vertices.begin(), vertices.end(), face.vertices.begin(), face.vertices.end());
}

ComplexPtr SimplicialComplex::build(std::size_t ambient_dim, std::map<VertexId, Point> coordinates,
                                    const std::vector<std::vector<VertexId>>& maximal_cells, Check check) {
  auto out = std::make_shared<SimplicialComplex>();
  SimplicialComplex& x = *out;
  x.ambient_dim_ = ambient_dim;
  for (const auto& [v, p] : coordinates)
    if (p.size() != ambient_dim)
      throw GeometryError("vertex " + std::to_string(v) + " has " + std::to_string(p.size()) +
                          " coordinates, expected " + std::to_string(ambient_dim));

  std::set<std::vector<VertexId>> closed;
  for (const auto& raw : maximal_cells) {
    if (raw.empty()) throw GeometryError("empty cell");
    std::vector<VertexId> cell = sorted_unique(raw);
    if (cell.size() != raw.size()) throw GeometryError("repeated vertex in cell " + describe(raw));
    for (VertexId v : cell)
      if (!coordinates.count(v)) throw GeometryError("unknown vertex id " + std::to_string(v));
    all_faces(cell, closed);
  }
  std::vector<std::vector<VertexId>> order(closed.begin(), closed.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  x.coordinates_ = std::move(coordinates);
  for (const auto& vs : order) {
    x.index_.emplace(vs, x.cells_.size());
    x.cells_.push_back(Simplex{vs});
    x.dimension_ = std::max(x.dimension_, static_cast<int>(vs.size()) - 1);
  }
  x.faces_.resize(x.cells_.size());
  x.cofaces_.resize(x.cells_.size());
  for (CellId id = 0; id < x.cells_.size(); ++id) {
    const auto& vs = x.cells_[id].vertices;
    if (vs.size() < 2) continue;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::vector<VertexId> face = vs;
      face.erase(face.begin() + static_cast<long>(i));
      CellId f = x.index_.at(face);
      int sign = (i % 2 == 0) ? 1 : -1;
      x.faces_[id].push_back({f, sign});
      x.cofaces_[f].push_back({id, sign});
    }
  }
  for (auto& list : x.cofaces_)
    std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.cell < b.cell; });

  if (check == Check::full) {
    const std::size_t n = x.cells_.size();
    std::vector<std::vector<const Point*>> pts(n);
    std::vector<Point> lo(n), hi(n);
    for (CellId id = 0; id < n; ++id) {
      for (VertexId v : x.cells_[id].vertices) pts[id].push_back(&x.coordinates_.at(v));
      if (!affinely_independent(pts[id]))
        throw GeometryError("affinely dependent vertices in cell " + describe(x.cells_[id].vertices));
      lo[id] = hi[id] = *pts[id].front();
      for (const Point* p : pts[id])
        for (std::size_t j = 0; j < ambient_dim; ++j) {
          if ((*p)[j] < lo[id][j]) lo[id][j] = (*p)[j];
          if ((*p)[j] > hi[id][j]) hi[id][j] = (*p)[j];
        }
    }
    for (CellId a = 0; a < n; ++a)
      for (CellId b = a + 1; b < n; ++b) {
        if (x.cells_[b].has_face(x.cells_[a])) continue;
        bool separated = false;
        for (std::size_t j = 0; j < ambient_dim && !separated; ++j)
          separated = hi[a][j] < lo[b][j] || hi[b][j] < lo[a][j];
        if (separated) continue;
        if (open_cells_meet(pts[a], pts[b], ambient_dim))
          throw GeometryError("cells " + describe(x.cells_[a].vertices) + " and " +
                              describe(x.cells_[b].vertices) + " intersect");
      }
  }
  return out;
}

std::optional<CellId> SimplicialComplex::find(const std::vector<VertexId>& sorted_vertices) const {
  auto it = index_.find(sorted_vertices);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CellId SimplicialComplex::id_of(const std::vector<VertexId>& vertices) const {
  auto id = find(sorted_unique(vertices));
  if (!id) throw GeometryError("no cell " + describe(vertices));
  return *id;
}

CellId SimplicialComplex::vertex_cell(VertexId v) const { return id_of({v}); }

int SimplicialComplex::incidence(CellId face, CellId coface) const {
  for (const auto& inc : faces_.at(coface))
    if (inc.cell == face) return inc.sign;
  return 0;
}

bool SimplicialComplex::is_face(CellId face, CellId cell) const { return cells_.at(cell).has_face(cells_.at(face)); }

std::vector<CellId> SimplicialComplex::star_cells(CellId id) const {
  std::vector<bool> seen(cells_.size());
  std::vector<CellId> stack{id}, out;
  seen[id] = true;
  while (!stack.empty()) {
    CellId c = stack.back();
    stack.pop_back();
    out.push_back(c);
    for (const auto& inc : cofaces_[c])
      if (!seen[inc.cell]) {
        seen[inc.cell] = true;
        stack.push_back(inc.cell);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CellId> SimplicialComplex::face_cells(CellId id) const {
  std::vector<bool> seen(cells_.size());
  std::vector<CellId> stack{id}, out;
  seen[id] = true;
  while (!stack.empty()) {
    CellId c = stack.back();
    stack.pop_back();
    out.push_back(c);
    for (const auto& inc : faces_[c])
      if (!seen[inc.cell]) {
        seen[inc.cell] = true;
        stack.push_back(inc.cell);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CellId> SimplicialComplex::cells_of_dim(int d) const {
  std::vector<CellId> out;
  for (CellId id = 0; id < cells_.size(); ++id)
    if (cells_[id].dimension() == d) out.push_back(id);
  return out;
}

std::vector<CellId> SimplicialComplex::maximal_cells() const {
  std::vector<CellId> out;
  for (CellId id = 0; id < cells_.size(); ++id)
    if (cofaces_[id].empty()) out.push_back(id);
  return out;
}

const Point& SimplicialComplex::coordinates(VertexId v) const {
  auto it = coordinates_.find(v);
  if (it == coordinates_.end()) throw GeometryError("unknown vertex id " + std::to_string(v));
  return it->second;
}

VertexId SimplicialComplex::max_vertex_id() const { return coordinates_.empty() ? -1 : coordinates_.rbegin()->first; }

Matrix SimplicialComplex::boundary_matrix(int k) const {
  auto rows = cells_of_dim(k - 1);
  auto cols = cells_of_dim(k);
  Matrix m(rows.size(), cols.size());
  if (k <= 0) return m;
  std::map<CellId, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& inc : faces_[cols[j]]) m(row_of.at(inc.cell), j) = inc.sign;
  return m;
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (const auto& c : cells_) chi += (c.dimension() % 2 == 0) ? 1 : -1;
  return chi;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f(static_cast<std::size_t>(dimension_ + 1));
  for (const auto& c : cells_) ++f[static_cast<std::size_t>(c.dimension())];
  return f;
}

// ---------------------------------------------------------------- regions

CellRegion::CellRegion(const SimplicialComplex& complex, std::vector<CellId> cells) {
  const std::size_t n = complex.cell_count();
  mask_.assign(n, false);
  for (CellId c : cells) {
    if (c >= n) throw GeometryError("cell id " + std::to_string(c) + " out of range");
    mask_[c] = true;
  }
  for (CellId c = 0; c < n; ++c)
    if (mask_[c]) cells_.push_back(c);

  std::vector<bool> up(n), down(n);
  for (CellId c : cells_) {
    for (CellId s : complex.star_cells(c)) up[s] = true;
    for (CellId f : complex.face_cells(c)) down[f] = true;
  }
  open_ = closed_ = true;
  for (CellId c = 0; c < n; ++c) {
    if (up[c] && down[c] && !mask_[c]) throw GeometryError("region is not locally closed");
    if (up[c] && !mask_[c]) open_ = false;
    if (down[c] && !mask_[c]) closed_ = false;
  }
}

CellRegion CellRegion::whole(const SimplicialComplex& complex) {
  std::vector<CellId> all(complex.cell_count());
  std::iota(all.begin(), all.end(), CellId{0});
  return CellRegion(complex, std::move(all));
}

CellRegion CellRegion::none(const SimplicialComplex& complex) { return CellRegion(complex, {}); }

RegionKind CellRegion::kind() const {
  if (open_) return RegionKind::open;
  if (closed_) return RegionKind::closed;
  return RegionKind::locally_closed;
}

bool CellRegion::is_subset_of(const CellRegion& other) const {
  for (CellId c : cells_)
    if (!other.contains(c)) return false;
  return true;
}

bool CellRegion::is_open_in(const SimplicialComplex& complex, const CellRegion& ambient) const {
  if (!is_subset_of(ambient)) return false;
  for (CellId c : cells_)
    for (const auto& inc : complex.cofaces(c))
      if (ambient.contains(inc.cell) && !contains(inc.cell)) return false;
  return true;
}

bool CellRegion::is_closed_in(const SimplicialComplex& complex, const CellRegion& ambient) const {
  if (!is_subset_of(ambient)) return false;
  for (CellId c : cells_)
    for (const auto& inc : complex.faces(c))
      if (ambient.contains(inc.cell) && !contains(inc.cell)) return false;
  return true;
}

CellRegion intersection(const SimplicialComplex& complex, const CellRegion& a, const CellRegion& b) {
  std::vector<CellId> cells;
  for (CellId c : a.cells())
    if (b.contains(c)) cells.push_back(c);
  return CellRegion(complex, std::move(cells));
}

CellRegion difference(const SimplicialComplex& complex, const CellRegion& a, const CellRegion& b) {
  std::vector<CellId> cells;
  for (CellId c : a.cells())
    if (!b.contains(c)) cells.push_back(c);
  return CellRegion(complex, std::move(cells));
}

CellRegion closure(const SimplicialComplex& complex, const std::vector<CellId>& cells) {
  std::set<CellId> out;
  for (CellId c : cells)
    for (CellId f : complex.face_cells(c)) out.insert(f);
  return CellRegion(complex, std::vector<CellId>(out.begin(), out.end()));
}

CellRegion region_from_simplices(const SimplicialComplex& complex, const std::vector<std::vector<VertexId>>& cells) {
  std::vector<CellId> ids;
  for (const auto& vs : cells) ids.push_back(complex.id_of(vs));
  return CellRegion(complex, std::move(ids));
}

StarLink star_link(const SimplicialComplex& complex, CellId cell) {
  auto star = complex.star_cells(cell);
  std::set<CellId> link;
  const auto& own = complex.cell(cell).vertices;
  for (CellId s : star)
    for (CellId f : complex.face_cells(s)) {
      const auto& vs = complex.cell(f).vertices;
      bool disjoint = std::none_of(vs.begin(), vs.end(),
                                   [&](VertexId v) { return std::binary_search(own.begin(), own.end(), v); });
      if (disjoint) link.insert(f);
    }
  return StarLink{CellRegion(complex, star), std::vector<CellId>(link.begin(), link.end())};
}

std::vector<VertexId> link_vertices(const SimplicialComplex& complex, CellId cell) {
  std::vector<VertexId> out;
  for (CellId c : star_link(complex, cell).link)
    if (complex.dim(c) == 0) out.push_back(complex.cell(c).vertices.front());
  return out;
}

// ---------------------------------------------------------------- maps

CellMap CellMap::simplicial(ComplexPtr source, ComplexPtr target, const std::map<VertexId, VertexId>& vertex_map) {
  CellMap f;
  f.images_.resize(source->cell_count());
  for (CellId id = 0; id < source->cell_count(); ++id) {
    std::vector<VertexId> image;
    for (VertexId v : source->cell(id).vertices) {
      auto it = vertex_map.find(v);
      if (it == vertex_map.end()) throw GeometryError("vertex map misses vertex " + std::to_string(v));
      image.push_back(it->second);
    }
    image = sorted_unique(image);
    auto target_id = target->find(image);
    if (!target_id)
      throw GeometryError("non-simplicial map: image " + describe(image) + " of " +
                          describe(source->cell(id).vertices) + " is not a cell");
    f.images_[id] = *target_id;
  }
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.vertex_map_ = vertex_map;
  return f;
}

CellMap CellMap::identity(ComplexPtr complex) {
  std::map<VertexId, VertexId> vm;
  for (const auto& [v, p] : complex->coordinates()) vm[v] = v;
  return simplicial(complex, complex, vm);
}

CellMap CellMap::inclusion(ComplexPtr sub, ComplexPtr ambient) {
  std::map<VertexId, VertexId> vm;
  for (const auto& [v, p] : sub->coordinates()) {
    if (ambient->coordinates(v) != p) throw GeometryError("vertex " + std::to_string(v) + " moved under inclusion");
    vm[v] = v;
  }
  return simplicial(std::move(sub), std::move(ambient), vm);
}

CellMap CellMap::from_images(ComplexPtr source, ComplexPtr target, std::vector<CellId> images) {
  if (images.size() != source->cell_count()) throw GeometryError("cell map has wrong number of images");
  for (CellId img : images)
    if (img >= target->cell_count()) throw GeometryError("cell map image out of range");
  for (CellId id = 0; id < images.size(); ++id)
    for (const auto& inc : source->faces(id))
      if (!target->is_face(images[inc.cell], images[id])) throw GeometryError("cell map is not order preserving");
  CellMap f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.images_ = std::move(images);
  return f;
}

CellMap CellMap::then(const CellMap& g) const {
  if (g.source_ != target_) throw GeometryError("composing cell maps with mismatched complexes");
  std::vector<CellId> images(images_.size());
  for (CellId id = 0; id < images_.size(); ++id) images[id] = g.images_[images_[id]];
  CellMap out;
  out.source_ = source_;
  out.target_ = g.target_;
  out.images_ = std::move(images);
  if (vertex_map_ && g.vertex_map_) {
    std::map<VertexId, VertexId> vm;
    for (const auto& [v, w] : *vertex_map_) vm[v] = g.vertex_map_->at(w);
    out.vertex_map_ = std::move(vm);
  }
  return out;
}

// ---------------------------------------------------------------- constructions

namespace {

// Carrier of each refined cell from the carriers of its vertices.
CellMap carrier_from_vertices(const ComplexPtr& refined, const ComplexPtr& original,
                              const std::map<VertexId, CellId>& vertex_carrier) {
  std::vector<CellId> images(refined->cell_count());
  for (CellId id = 0; id < refined->cell_count(); ++id) {
    std::vector<VertexId> vs;
    for (VertexId v : refined->cell(id).vertices) {
      const auto& cv = original->cell(vertex_carrier.at(v)).vertices;
      vs.insert(vs.end(), cv.begin(), cv.end());
    }
    images[id] = original->id_of(sorted_unique(vs));
  }
  return CellMap::from_images(refined, original, std::move(images));
}

std::vector<std::vector<VertexId>> maximal_vertex_lists(const SimplicialComplex& x) {
  std::vector<std::vector<VertexId>> out;
  for (CellId id : x.maximal_cells()) out.push_back(x.cell(id).vertices);
  return out;
}

}  // namespace

Subdivision subdivide_along_level(const ComplexPtr& complex, const Point& functional, const Rational& level) {
  if (functional.size() != complex->ambient_dim()) throw GeometryError("functional has wrong dimension");
  auto coords = complex->coordinates();
  auto cells = maximal_vertex_lists(*complex);
  std::map<VertexId, CellId> carrier;
  for (const auto& [v, p] : coords) carrier[v] = complex->vertex_cell(v);
  VertexId next = complex->max_vertex_id() + 1;

  auto height = [&](VertexId v) -> Rational { return dot(functional, coords.at(v)) - level; };
  for (;;) {
    std::optional<std::pair<VertexId, VertexId>> edge;
    for (const auto& cell : cells) {
      for (std::size_t i = 0; i < cell.size() && !edge; ++i)
        for (std::size_t j = i + 1; j < cell.size() && !edge; ++j)
          if (sgn(height(cell[i])) * sgn(height(cell[j])) < 0) edge = std::make_pair(cell[i], cell[j]);
      if (edge) break;
    }
    if (!edge) break;
    auto [u, w] = *edge;
    Rational hu = height(u), hw = height(w);
    Rational t = hu / (hu - hw);
    Point p(coords.at(u).size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = coords.at(u)[j] + t * (coords.at(w)[j] - coords.at(u)[j]);
    VertexId m = next++;
    coords[m] = std::move(p);
    std::vector<VertexId> span = complex->cell(carrier.at(u)).vertices;
    const auto& sw = complex->cell(carrier.at(w)).vertices;
    span.insert(span.end(), sw.begin(), sw.end());
    carrier[m] = complex->id_of(sorted_unique(span));

    std::vector<std::vector<VertexId>> refined;
    for (const auto& cell : cells) {
      bool has_u = std::count(cell.begin(), cell.end(), u) > 0;
      bool has_w = std::count(cell.begin(), cell.end(), w) > 0;
      if (!(has_u && has_w)) {
        refined.push_back(cell);
        continue;
      }
      for (VertexId drop : {u, w}) {
        std::vector<VertexId> half = cell;
        std::replace(half.begin(), half.end(), drop, m);
        refined.push_back(sorted_unique(half));
      }
    }
    cells = std::move(refined);
  }
  auto refined = SimplicialComplex::build(complex->ambient_dim(), coords, cells, SimplicialComplex::Check::trusted);
  return Subdivision{refined, carrier_from_vertices(refined, complex, carrier)};
}

Subdivision barycentric_subdivision(const ComplexPtr& complex) {
  const auto& x = *complex;
  std::map<VertexId, Point> coords;
  std::map<CellId, VertexId> vertex_of;
  std::map<VertexId, CellId> carrier;
  VertexId next = x.max_vertex_id() + 1;
  for (CellId id = 0; id < x.cell_count(); ++id) {
    const auto& vs = x.cell(id).vertices;
    VertexId v = vs.size() == 1 ? vs.front() : next++;
    Point p(x.ambient_dim());
    for (VertexId u : vs)
      for (std::size_t j = 0; j < p.size(); ++j) p[j] += x.coordinates(u)[j];
    for (auto& c : p) c /= static_cast<long>(vs.size());
    coords[v] = std::move(p);
    vertex_of[id] = v;
    carrier[v] = id;
  }
  std::vector<std::vector<VertexId>> cells;
  // Full flags below each maximal cell, built top down.
  std::vector<CellId> chain;
  auto descend = [&](auto&& self, CellId c) -> void {
    chain.push_back(c);
    if (x.faces(c).empty()) {
      std::vector<VertexId> vs;
      for (CellId f : chain) vs.push_back(vertex_of.at(f));
      cells.push_back(sorted_unique(vs));
    } else {
      for (const auto& inc : x.faces(c)) self(self, inc.cell);
    }
    chain.pop_back();
  };
  for (CellId top : x.maximal_cells()) descend(descend, top);
  auto refined = SimplicialComplex::build(x.ambient_dim(), coords, cells, SimplicialComplex::Check::trusted);
  return Subdivision{refined, carrier_from_vertices(refined, complex, carrier)};
}

ProductComplex staircase_product(const ComplexPtr& first, const ComplexPtr& second) {
  std::vector<VertexId> va, vb;
  for (const auto& [v, p] : first->coordinates()) va.push_back(v);
  for (const auto& [v, p] : second->coordinates()) vb.push_back(v);
  std::map<VertexId, std::size_t> rank_a, rank_b;
  for (std::size_t i = 0; i < va.size(); ++i) rank_a[va[i]] = i;
  for (std::size_t i = 0; i < vb.size(); ++i) rank_b[vb[i]] = i;

  ProductComplex out;
  std::map<VertexId, Point> coords;
  std::map<VertexId, VertexId> to_first, to_second;
  for (VertexId a : va)
    for (VertexId b : vb) {
      VertexId id = static_cast<VertexId>(rank_a[a] * vb.size() + rank_b[b]);
      Point p = first->coordinates(a);
      const Point& q = second->coordinates(b);
      p.insert(p.end(), q.begin(), q.end());
      coords[id] = std::move(p);
      out.pair_ids[{a, b}] = id;
      to_first[id] = a;
      to_second[id] = b;
    }

  std::vector<std::vector<VertexId>> cells;
  for (CellId s : first->maximal_cells())
    for (CellId t : second->maximal_cells()) {
      const auto& sa = first->cell(s).vertices;
      const auto& tb = second->cell(t).vertices;
      // Monotone lattice paths from (0,0) to (p,q).
      std::vector<VertexId> path;
      auto walk = [&](auto&& self, std::size_t i, std::size_t j) -> void {
        path.push_back(out.pair_ids.at({sa[i], tb[j]}));
        if (i + 1 == sa.size() && j + 1 == tb.size()) {
          cells.push_back(sorted_unique(path));
        } else {
          if (i + 1 < sa.size()) self(self, i + 1, j);
          if (j + 1 < tb.size()) self(self, i, j + 1);
        }
        path.pop_back();
      };
      walk(walk, 0, 0);
    }
  out.product = SimplicialComplex::build(first->ambient_dim() + second->ambient_dim(), coords, cells,
                                         SimplicialComplex::Check::trusted);
  out.first = CellMap::simplicial(out.product, first, to_first);
  out.second = CellMap::simplicial(out.product, second, to_second);
  return out;
}

ComplexPtr closed_star_complex(const SimplicialComplex& complex, CellId cell) {
  std::vector<std::vector<VertexId>> cells;
  std::map<VertexId, Point> coords;
  for (CellId s : complex.star_cells(cell))
    if (complex.cofaces(s).empty()) {
      cells.push_back(complex.cell(s).vertices);
      for (VertexId v : complex.cell(s).vertices) coords[v] = complex.coordinates(v);
    }
  return SimplicialComplex::build(complex.ambient_dim(), coords, cells, SimplicialComplex::Check::trusted);
}

Rational dot(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw GeometryError("dimension mismatch in dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point subtract(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw GeometryError("dimension mismatch");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace cellsheaf
