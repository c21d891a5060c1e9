#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cellsheaf/matrix.hpp"

namespace cellsheaf {

using VertexId = long;
using CellId = std::size_t;
using Point = std::vector<Rational>;

/// Oriented by increasing vertex id.
struct Simplex {
  std::vector<VertexId> vertices;

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }
  bool has_face(const Simplex& face) const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct Incidence {
  CellId cell;
  int sign;  // (-1)^i where i is the position of the omitted vertex
};

class SimplicialComplex;
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Finite geometric simplicial complex with exact rational vertex coordinates.
/// Cells are numbered by (dimension, lexicographic vertex list); numbering is
/// stable and deterministic. Immutable once built.
class SimplicialComplex {
 public:
  enum class Check {
    full,     // affine independence and pairwise disjointness of open cells
    trusted,  // caller guarantees the embedding (derived complexes)
  };

  /// Face closure of the maximal cells. Throws GeometryError on unknown ids,
  /// affinely dependent simplices or intersecting open cells.
  static ComplexPtr build(std::size_t ambient_dim, std::map<VertexId, Point> coordinates,
                          const std::vector<std::vector<VertexId>>& maximal_cells, Check check = Check::full);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t cell_count() const { return cells_.size(); }
  int dimension() const { return dimension_; }

  const Simplex& cell(CellId id) const { return cells_.at(id); }
  int dim(CellId id) const { return cells_.at(id).dimension(); }
  std::optional<CellId> find(const std::vector<VertexId>& sorted_vertices) const;
  /// Throws GeometryError when the cell is absent.
  CellId id_of(const std::vector<VertexId>& vertices) const;
  CellId vertex_cell(VertexId v) const;

  const std::vector<Incidence>& faces(CellId id) const { return faces_.at(id); }
  const std::vector<Incidence>& cofaces(CellId id) const { return cofaces_.at(id); }
  /// [face : coface] for a codimension-1 pair, 0 otherwise.
  int incidence(CellId face, CellId coface) const;
  bool is_face(CellId face, CellId cell) const;

  /// All cells containing id (including id), ascending.
  std::vector<CellId> star_cells(CellId id) const;
  /// All faces of id (including id), ascending.
  std::vector<CellId> face_cells(CellId id) const;
  std::vector<CellId> cells_of_dim(int d) const;
  std::vector<CellId> maximal_cells() const;

  const std::map<VertexId, Point>& coordinates() const { return coordinates_; }
  const Point& coordinates(VertexId v) const;
  VertexId max_vertex_id() const;

  /// Same coordinates and cells, hence the same numbering.
  bool same_as(const SimplicialComplex& other) const {
    return ambient_dim_ == other.ambient_dim_ && coordinates_ == other.coordinates_ && cells_ == other.cells_;
  }

  /// Rows: (k-1)-cells, columns: k-cells, entries: incidence signs.
  Matrix boundary_matrix(int k) const;
  long euler_characteristic() const;
  std::vector<std::size_t> f_vector() const;

 private:
  std::size_t ambient_dim_ = 0;
  int dimension_ = -1;
  std::map<VertexId, Point> coordinates_;
  std::vector<Simplex> cells_;
  std::map<std::vector<VertexId>, CellId> index_;
  std::vector<std::vector<Incidence>> faces_;
  std::vector<std::vector<Incidence>> cofaces_;
};

enum class RegionKind { open, closed, locally_closed };

/// A locally closed set of open cells (equivalently, a convex subset of the face poset).
class CellRegion {
 public:
  CellRegion() = default;
  /// Throws GeometryError when the cells do not form a locally closed set.
  CellRegion(const SimplicialComplex& complex, std::vector<CellId> cells);

  static CellRegion whole(const SimplicialComplex& complex);
  static CellRegion none(const SimplicialComplex& complex);

  bool contains(CellId id) const { return id < mask_.size() && mask_[id]; }
  const std::vector<CellId>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  std::size_t universe() const { return mask_.size(); }

  bool is_open() const { return open_; }
  bool is_closed() const { return closed_; }
  RegionKind kind() const;

  bool is_subset_of(const CellRegion& other) const;
  /// Relatively coface-closed inside `ambient`.
  bool is_open_in(const SimplicialComplex& complex, const CellRegion& ambient) const;
  bool is_closed_in(const SimplicialComplex& complex, const CellRegion& ambient) const;

  friend bool operator==(const CellRegion& a, const CellRegion& b) { return a.mask_ == b.mask_; }

 private:
  std::vector<bool> mask_;
  std::vector<CellId> cells_;
  bool open_ = false;
  bool closed_ = false;
};

CellRegion intersection(const SimplicialComplex& complex, const CellRegion& a, const CellRegion& b);
/// a \ b; the caller is responsible for the result being locally closed.
CellRegion difference(const SimplicialComplex& complex, const CellRegion& a, const CellRegion& b);
/// Smallest face-closed region containing the cells.
CellRegion closure(const SimplicialComplex& complex, const std::vector<CellId>& cells);
/// Region from vertex lists, e.g. {{0},{0,1}}.
CellRegion region_from_simplices(const SimplicialComplex& complex, const std::vector<std::vector<VertexId>>& cells);

struct StarLink {
  CellRegion star;
  std::vector<CellId> link;
};

/// Open star (all cofaces) and link (faces of the closed star disjoint from the cell).
StarLink star_link(const SimplicialComplex& complex, CellId cell);
/// Vertex ids of the link, ascending.
std::vector<VertexId> link_vertices(const SimplicialComplex& complex, CellId cell);

/// Order-preserving map of face posets. Simplicial maps, subdivision carriers
/// and inclusions are all represented this way.
class CellMap {
 public:
  /// Throws GeometryError when the image of some cell is not a cell of the target.
  static CellMap simplicial(ComplexPtr source, ComplexPtr target, const std::map<VertexId, VertexId>& vertex_map);
  static CellMap identity(ComplexPtr complex);
  /// Vertex ids of `sub` must be vertex ids of `ambient` with the same coordinates.
  static CellMap inclusion(ComplexPtr sub, ComplexPtr ambient);
  /// Throws GeometryError unless the images are order preserving.
  static CellMap from_images(ComplexPtr source, ComplexPtr target, std::vector<CellId> images);

  CellId operator()(CellId id) const { return images_.at(id); }
  const ComplexPtr& source() const { return source_; }
  const ComplexPtr& target() const { return target_; }
  const std::vector<CellId>& images() const { return images_; }
  const std::optional<std::map<VertexId, VertexId>>& vertex_map() const { return vertex_map_; }

  /// g after *this.
  CellMap then(const CellMap& g) const;

 private:
  ComplexPtr source_;
  ComplexPtr target_;
  std::vector<CellId> images_;
  std::optional<std::map<VertexId, VertexId>> vertex_map_;
};

struct Subdivision {
  ComplexPtr refined;
  CellMap carrier;  // refined cell -> the unique original open cell containing it
};

/// Refinement in which every open cell lies in {l<c}, {l=c} or {l>c}.
/// Crossing edges are bisected at their level point, one at a time.
Subdivision subdivide_along_level(const ComplexPtr& complex, const Point& functional, const Rational& level);

/// First barycentric subdivision. Vertices of the original complex keep their ids.
Subdivision barycentric_subdivision(const ComplexPtr& complex);

struct ProductComplex {
  ComplexPtr product;
  CellMap first;   // projection onto the first factor
  CellMap second;  // projection onto the second factor
  /// Vertex id of the pair (v, w).
  std::map<std::pair<VertexId, VertexId>, VertexId> pair_ids;
};

/// Staircase triangulation of |X| x |Z| with concatenated coordinates.
ProductComplex staircase_product(const ComplexPtr& first, const ComplexPtr& second);

/// Closed star of a cell as a standalone complex (vertex ids preserved).
ComplexPtr closed_star_complex(const SimplicialComplex& complex, CellId cell);

inline bool same_complex(const ComplexPtr& a, const ComplexPtr& b) { return a == b || (a && b && a->same_as(*b)); }

Rational dot(const Point& a, const Point& b);
Point subtract(const Point& a, const Point& b);

}  // namespace cellsheaf
