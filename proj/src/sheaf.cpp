#include "cellsheaf/sheaf.hpp"

#include <algorithm>
#include <string>

namespace cellsheaf {

namespace {

std::string cell_name(const SimplicialComplex& x, CellId c) {
  std::string out = "[";
  const auto& vs = x.cell(c).vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
  return out + "]";
}

void require_same_complex(const ComplexPtr& a, const ComplexPtr& b) {
  if (a != b) throw SheafError("objects live on different complexes");
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

CellularSheaf direct_sum(const CellularSheaf& a, const CellularSheaf& b) {
  require_same_complex(a.complex(), b.complex());
  const auto& x = *a.complex();
  std::vector<std::size_t> stalks(x.cell_count());
  for (CellId c = 0; c < stalks.size(); ++c) stalks[c] = a.stalk(c) + b.stalk(c);
  CellularSheaf s(a.complex(), stalks);
  for (CellId t = 0; t < x.cell_count(); ++t)
    for (const auto& inc : x.faces(t))
      s.set_restriction(inc.cell, t, block_diagonal(a.restriction(inc.cell, t), b.restriction(inc.cell, t)));
  return s;
}

bool region_union_is_locally_closed(const SimplicialComplex& x, const CellRegion& a, const CellRegion& b,
                                    CellRegion& out) {
  if (a == b) {
    out = a;
    return true;
  }
  std::vector<CellId> cells = a.cells();
  for (CellId c : b.cells())
    if (!a.contains(c)) cells.push_back(c);
  try {
    out = CellRegion(x, cells);
    return true;
  } catch (const GeometryError&) {
    return false;
  }
}

CellRegion joint_domain(const SimplicialComplex& x, const CellRegion& a, const CellRegion& b) {
  CellRegion out;
  if (!region_union_is_locally_closed(x, a, b, out)) out = CellRegion::whole(x);
  return out;
}

// Columns of a basis of ker(d_out) completing a basis of im(d_in) (representatives of cohomology).
Matrix cohomology_representatives(const Matrix& d_in, const Matrix& d_out, std::size_t dim) {
  Matrix cycles = d_out.rows() == 0 ? Matrix::identity(dim) : kernel_basis(d_out);
  Matrix chosen = d_in.cols() == 0 ? Matrix(dim, 0) : column_space_basis(d_in);
  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < cycles.cols(); ++j) {
    Matrix trial = chosen.hconcat(cycles.select_cols({j}));
    if (rank(trial) == trial.cols()) {
      chosen = std::move(trial);
      picked.push_back(j);
    }
  }
  return cycles.select_cols(picked);
}

}  // namespace

// ---------------------------------------------------------------- CellularSheaf

CellularSheaf::CellularSheaf(ComplexPtr complex, std::vector<std::size_t> stalks)
    : complex_(std::move(complex)), stalks_(std::move(stalks)) {
  if (stalks_.size() != complex_->cell_count()) throw SheafError("stalk count does not match the complex");
  restrictions_.resize(complex_->cell_count());
  for (CellId t = 0; t < complex_->cell_count(); ++t)
    for (const auto& inc : complex_->faces(t)) restrictions_[t].emplace_back(stalks_[t], stalks_[inc.cell]);
}

CellularSheaf CellularSheaf::zero(ComplexPtr complex) {
  std::size_t n = complex->cell_count();
  return CellularSheaf(std::move(complex), std::vector<std::size_t>(n, 0));
}

std::size_t CellularSheaf::total_dim() const {
  std::size_t s = 0;
  for (auto d : stalks_) s += d;
  return s;
}

std::size_t CellularSheaf::slot(CellId face, CellId coface) const {
  const auto& faces = complex_->faces(coface);
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].cell == face) return i;
  throw SheafError("no codimension-1 relation " + cell_name(*complex_, face) + " < " + cell_name(*complex_, coface));
}

const Matrix& CellularSheaf::restriction(CellId face, CellId coface) const {
  return restrictions_.at(coface)[slot(face, coface)];
}

void CellularSheaf::set_restriction(CellId face, CellId coface, Matrix m) {
  if (m.rows() != stalks_.at(coface) || m.cols() != stalks_.at(face))
    throw SheafError("restriction " + cell_name(*complex_, face) + " < " + cell_name(*complex_, coface) +
                     " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                     std::to_string(stalks_[coface]) + "x" + std::to_string(stalks_[face]));
  restrictions_[coface][slot(face, coface)] = std::move(m);
}

Matrix CellularSheaf::composite_restriction(CellId face, CellId cell) const {
  if (face == cell) return Matrix::identity(stalks_.at(cell));
  for (const auto& inc : complex_->faces(cell))
    if (complex_->is_face(face, inc.cell)) return restriction(inc.cell, cell) * composite_restriction(face, inc.cell);
  throw SheafError(cell_name(*complex_, face) + " is not a face of " + cell_name(*complex_, cell));
}

void CellularSheaf::validate() const {
  const auto& x = *complex_;
  for (CellId t = 0; t < x.cell_count(); ++t) {
    const auto& faces = x.faces(t);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const Matrix& m = restrictions_[t][i];
      if (m.rows() != stalks_[t] || m.cols() != stalks_[faces[i].cell])
        throw SheafError("dimension mismatch on restriction " + cell_name(x, faces[i].cell) + " < " + cell_name(x, t));
    }
    std::map<CellId, Matrix> through;
    for (const auto& mid : faces)
      for (const auto& low : x.faces(mid.cell)) {
        Matrix path = restriction(mid.cell, t) * restriction(low.cell, mid.cell);
        auto [it, fresh] = through.emplace(low.cell, path);
        if (!fresh && !(it->second == path))
          throw SheafError("non-commuting square between " + cell_name(x, low.cell) + " and " + cell_name(x, t));
      }
  }
}

bool CellularSheaf::is_local_system() const {
  for (CellId t = 0; t < complex_->cell_count(); ++t)
    for (const auto& inc : complex_->faces(t)) {
      const Matrix& m = restriction(inc.cell, t);
      if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
  return true;
}

bool operator==(const CellularSheaf& a, const CellularSheaf& b) {
  if (!same_complex(a.complex_, b.complex_) || a.stalks_ != b.stalks_) return false;
  for (std::size_t t = 0; t < a.restrictions_.size(); ++t)
    for (std::size_t i = 0; i < a.restrictions_[t].size(); ++i)
      if (!(a.restrictions_[t][i] == b.restrictions_[t][i])) return false;
  return true;
}

// ---------------------------------------------------------------- maps

SheafMap SheafMap::zero(const CellularSheaf& source, const CellularSheaf& target) {
  SheafMap m;
  for (CellId c = 0; c < source.stalks().size(); ++c) m.components.emplace_back(target.stalk(c), source.stalk(c));
  return m;
}

SheafMap SheafMap::identity(const CellularSheaf& sheaf) {
  SheafMap m;
  for (CellId c = 0; c < sheaf.stalks().size(); ++c) m.components.push_back(Matrix::identity(sheaf.stalk(c)));
  return m;
}

void check_natural(const CellularSheaf& source, const CellularSheaf& target, const SheafMap& m) {
  require_same_complex(source.complex(), target.complex());
  const auto& x = *source.complex();
  if (m.components.size() != x.cell_count()) throw SheafError("sheaf map has wrong number of components");
  for (CellId c = 0; c < x.cell_count(); ++c)
    if (m.components[c].rows() != target.stalk(c) || m.components[c].cols() != source.stalk(c))
      throw SheafError("dimension mismatch in sheaf map at " + cell_name(x, c));
  for (CellId t = 0; t < x.cell_count(); ++t)
    for (const auto& inc : x.faces(t))
      if (!(m.components[t] * source.restriction(inc.cell, t) == target.restriction(inc.cell, t) * m.components[inc.cell]))
        throw SheafError("naturality fails on " + cell_name(x, inc.cell) + " < " + cell_name(x, t));
}

// ---------------------------------------------------------------- SheafComplex

SheafComplex::SheafComplex(int lowest_degree, std::vector<CellularSheaf> terms, std::vector<SheafMap> differentials)
    : lowest_(lowest_degree), terms_(std::move(terms)), differentials_(std::move(differentials)) {
  if (terms_.empty()) throw SheafError("sheaf complex needs at least one term");
  complex_ = terms_.front().complex();
  domain_ = CellRegion::whole(*complex_);
  zero_ = CellularSheaf::zero(complex_);
  if (differentials_.size() + 1 != terms_.size()) throw SheafError("sheaf complex has wrong number of differentials");
}

SheafComplex::SheafComplex(int lowest_degree, std::vector<CellularSheaf> terms, std::vector<SheafMap> differentials,
                           CellRegion domain)
    : SheafComplex(lowest_degree, std::move(terms), std::move(differentials)) {
  domain_ = std::move(domain);
  if (domain_.universe() != complex_->cell_count()) throw SheafError("domain belongs to another complex");
}

SheafComplex SheafComplex::concentrated(CellularSheaf sheaf, int degree) {
  return SheafComplex(degree, {std::move(sheaf)}, {});
}

SheafComplex SheafComplex::zero(ComplexPtr complex) { return concentrated(CellularSheaf::zero(std::move(complex)), 0); }

const CellularSheaf& SheafComplex::term(int degree) const {
  if (degree < lowest_ || degree > highest_degree()) return zero_;
  return terms_[static_cast<std::size_t>(degree - lowest_)];
}

SheafMap SheafComplex::differential(int degree) const {
  if (degree < lowest_ || degree >= highest_degree()) return SheafMap::zero(term(degree), term(degree + 1));
  return differentials_[static_cast<std::size_t>(degree - lowest_)];
}

SpaceComplex SheafComplex::stalk_complex(CellId cell) const {
  std::vector<std::size_t> dims;
  std::vector<Matrix> ds;
  for (const auto& t : terms_) dims.push_back(t.stalk(cell));
  for (const auto& d : differentials_) ds.push_back(d.components.at(cell));
  return SpaceComplex(lowest_, dims, ds);
}

SheafComplex SheafComplex::with_domain(CellRegion domain) const {
  SheafComplex out = *this;
  out.domain_ = std::move(domain);
  out.validate();
  return out;
}

void SheafComplex::validate() const {
  const auto& x = *complex_;
  for (const auto& t : terms_) {
    require_same_complex(t.complex(), complex_);
    t.validate();
    for (CellId c = 0; c < x.cell_count(); ++c)
      if (t.stalk(c) != 0 && !domain_.contains(c))
        throw SheafError("nonzero stalk at " + cell_name(x, c) + " outside the domain");
  }
  for (std::size_t i = 0; i < differentials_.size(); ++i) check_natural(terms_[i], terms_[i + 1], differentials_[i]);
  for (std::size_t i = 0; i + 1 < differentials_.size(); ++i)
    for (CellId c = 0; c < x.cell_count(); ++c)
      if (!(differentials_[i + 1].components[c] * differentials_[i].components[c]).is_zero())
        throw SheafError("d^2 != 0 at " + cell_name(x, c) + " in degree " + std::to_string(lowest_ + static_cast<int>(i)));
}

// ---------------------------------------------------------------- SheafMorphism

SheafMorphism::SheafMorphism(SheafComplex source, SheafComplex target, std::map<int, SheafMap> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  require_same_complex(source_.complex(), target_.complex());
}

SheafMorphism SheafMorphism::identity(const SheafComplex& f) {
  std::map<int, SheafMap> comps;
  for (int k = f.lowest_degree(); k <= f.highest_degree(); ++k) comps[k] = SheafMap::identity(f.term(k));
  return SheafMorphism(f, f, std::move(comps));
}

SheafMorphism SheafMorphism::zero(SheafComplex source, SheafComplex target) {
  return SheafMorphism(std::move(source), std::move(target), {});
}

SheafMap SheafMorphism::component(int degree) const {
  auto it = components_.find(degree);
  if (it != components_.end()) return it->second;
  return SheafMap::zero(source_.term(degree), target_.term(degree));
}

void SheafMorphism::validate() const {
  const auto& x = *source_.complex();
  for (const auto& [k, m] : components_) {
    if (k < source_.lowest_degree() || k > source_.highest_degree() || k < target_.lowest_degree() ||
        k > target_.highest_degree()) {
      for (const auto& c : m.components)
        if (!c.is_zero()) throw SheafError("morphism component outside the degree range");
    }
  }
  int lo = std::min(source_.lowest_degree(), target_.lowest_degree()) - 1;
  int hi = std::max(source_.highest_degree(), target_.highest_degree()) + 1;
  for (int k = lo; k <= hi; ++k) check_natural(source_.term(k), target_.term(k), component(k));
  for (int k = lo; k < hi; ++k) {
    SheafMap f0 = component(k), f1 = component(k + 1);
    SheafMap ds = source_.differential(k), dt = target_.differential(k);
    for (CellId c = 0; c < x.cell_count(); ++c)
      if (!(f1.components[c] * ds.components[c] == dt.components[c] * f0.components[c]))
        throw SheafError("chain-map square fails at " + cell_name(x, c) + " in degree " + std::to_string(k));
  }
}

// ---------------------------------------------------------------- constructible functions

ConstructibleFunction operator+(const ConstructibleFunction& a, const ConstructibleFunction& b) {
  if (a.values.size() != b.values.size()) throw SheafError("constructible functions on different complexes");
  ConstructibleFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

ConstructibleFunction operator-(const ConstructibleFunction& a, const ConstructibleFunction& b) {
  if (a.values.size() != b.values.size()) throw SheafError("constructible functions on different complexes");
  ConstructibleFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

// ---------------------------------------------------------------- constructors

CellularSheaf region_sheaf(const ComplexPtr& complex, const CellRegion& region, std::size_t rank) {
  const auto& x = *complex;
  std::vector<std::size_t> stalks(x.cell_count(), 0);
  for (CellId c : region.cells()) stalks[c] = rank;
  CellularSheaf s(complex, stalks);
  for (CellId t : region.cells())
    for (const auto& inc : x.faces(t))
      if (region.contains(inc.cell)) s.set_restriction(inc.cell, t, Matrix::identity(rank));
  return s;
}

CellularSheaf constant_sheaf(const ComplexPtr& complex, std::size_t rank) {
  return region_sheaf(complex, CellRegion::whole(*complex), rank);
}

CellularSheaf skyscraper(const ComplexPtr& complex, CellId cell, std::size_t rank) {
  std::vector<std::size_t> stalks(complex->cell_count(), 0);
  stalks.at(cell) = rank;
  return CellularSheaf(complex, stalks);
}

SheafComplex constant_on(const ComplexPtr& complex, const CellRegion& region, std::size_t rank) {
  return SheafComplex(0, {region_sheaf(complex, region, rank)}, {}, region);
}

SheafComplex extension_by_zero(const SheafComplex& f) { return f.with_domain(CellRegion::whole(*f.complex())); }

SheafComplex extension_by_zero(const ComplexPtr& complex, const CellRegion& region, std::size_t rank) {
  return SheafComplex::concentrated(region_sheaf(complex, region, rank));
}

SheafComplex restrict_to(const SheafComplex& f, const CellRegion& region) {
  if (!region.is_subset_of(f.domain())) throw SheafError("restriction region leaves the domain");
  const auto& x = *f.complex();
  std::vector<CellularSheaf> terms;
  std::vector<SheafMap> ds;
  for (int k = f.lowest_degree(); k <= f.highest_degree(); ++k) {
    const auto& t = f.term(k);
    std::vector<std::size_t> stalks(x.cell_count(), 0);
    for (CellId c : region.cells()) stalks[c] = t.stalk(c);
    CellularSheaf s(f.complex(), stalks);
    for (CellId c : region.cells())
      for (const auto& inc : x.faces(c))
        if (region.contains(inc.cell)) s.set_restriction(inc.cell, c, t.restriction(inc.cell, c));
    terms.push_back(std::move(s));
  }
  for (int k = f.lowest_degree(); k < f.highest_degree(); ++k) {
    SheafMap d = f.differential(k);
    for (CellId c = 0; c < x.cell_count(); ++c)
      if (!region.contains(c)) d.components[c] = Matrix(0, 0);
    ds.push_back(std::move(d));
  }
  SheafComplex out(f.lowest_degree(), std::move(terms), std::move(ds), region);
  out.validate();
  return out;
}

CellularSheaf local_system(const ComplexPtr& complex, std::size_t rank,
                           const std::map<std::pair<VertexId, VertexId>, Matrix>& transports) {
  const auto& x = *complex;
  auto transport = [&](VertexId a, VertexId b) -> Matrix {
    auto it = transports.find({a, b});
    if (it == transports.end()) return Matrix::identity(rank);
    return it->second;
  };
  for (const auto& [edge, m] : transports) {
    if (edge.first >= edge.second) throw SheafError("transport keys must be ordered edges (a, b) with a < b");
    if (!x.find({edge.first, edge.second}))
      throw SheafError("transport on a non-edge (" + std::to_string(edge.first) + "," + std::to_string(edge.second) + ")");
    if (m.rows() != rank || m.cols() != rank || cellsheaf::rank(m) != rank)
      throw SheafError("transport on (" + std::to_string(edge.first) + "," + std::to_string(edge.second) +
                       ") is not an invertible " + std::to_string(rank) + "x" + std::to_string(rank) + " matrix");
  }
  for (CellId t : x.cells_of_dim(2)) {
    const auto& v = x.cell(t).vertices;
    if (!(transport(v[1], v[2]) * transport(v[0], v[1]) == transport(v[0], v[2])))
      throw SheafError("transports are not flat on " + cell_name(x, t));
  }
  CellularSheaf s(complex, std::vector<std::size_t>(x.cell_count(), rank));
  // Each cell uses the frame of its smallest vertex.
  for (CellId t = 0; t < x.cell_count(); ++t)
    for (const auto& inc : x.faces(t)) {
      VertexId from = x.cell(inc.cell).vertices.front();
      VertexId to = x.cell(t).vertices.front();
      s.set_restriction(inc.cell, t, from == to ? Matrix::identity(rank) : inverse(transport(to, from)));
    }
  s.validate();
  return s;
}

// ---------------------------------------------------------------- operations

SheafComplex shift(const SheafComplex& f, int k) {
  std::vector<CellularSheaf> terms = f.terms();
  std::vector<SheafMap> ds;
  for (int n = f.lowest_degree(); n < f.highest_degree(); ++n) {
    SheafMap d = f.differential(n);
    if (k % 2 != 0)
      for (auto& m : d.components) m = -m;
    ds.push_back(std::move(d));
  }
  return SheafComplex(f.lowest_degree() - k, std::move(terms), std::move(ds), f.domain());
}

Triangle mapping_triangle(const SheafMorphism& u) {
  const SheafComplex& a = u.source();
  const SheafComplex& b = u.target();
  const auto& x = *a.complex();
  int lo = std::min(a.lowest_degree() - 1, b.lowest_degree());
  int hi = std::max(a.highest_degree() - 1, b.highest_degree());
  std::vector<CellularSheaf> terms;
  std::vector<SheafMap> ds;
  for (int k = lo; k <= hi; ++k) terms.push_back(direct_sum(a.term(k + 1), b.term(k)));
  for (int k = lo; k < hi; ++k) {
    SheafMap da = a.differential(k + 1), db = b.differential(k), uk = u.component(k + 1);
    SheafMap d;
    for (CellId c = 0; c < x.cell_count(); ++c) {
      std::size_t a0 = a.term(k + 1).stalk(c), b0 = b.term(k).stalk(c);
      std::size_t a1 = a.term(k + 2).stalk(c), b1 = b.term(k + 1).stalk(c);
      Matrix m(a1 + b1, a0 + b0);
      m.set_block(0, 0, -da.components[c]);
      m.set_block(a1, 0, uk.components[c]);
      m.set_block(a1, a0, db.components[c]);
      d.components.push_back(std::move(m));
    }
    ds.push_back(std::move(d));
  }
  SheafComplex cone(lo, std::move(terms), std::move(ds), joint_domain(x, a.domain(), b.domain()));
  SheafComplex a1 = shift(a, 1);

  std::map<int, SheafMap> in, out;
  for (int k = lo; k <= hi; ++k) {
    SheafMap i, p;
    for (CellId c = 0; c < x.cell_count(); ++c) {
      std::size_t na = a.term(k + 1).stalk(c), nb = b.term(k).stalk(c);
      Matrix mi(na + nb, nb), mp(na, na + nb);
      mi.set_block(na, 0, Matrix::identity(nb));
      mp.set_block(0, 0, Matrix::identity(na));
      i.components.push_back(std::move(mi));
      p.components.push_back(std::move(mp));
    }
    in[k] = std::move(i);
    out[k] = std::move(p);
  }
  return Triangle{cone, SheafMorphism(b, cone, std::move(in)), SheafMorphism(cone, a1, std::move(out))};
}

SheafComplex mapping_cone(const SheafMorphism& u) { return mapping_triangle(u).cone; }

std::map<int, CellularSheaf> cohomology_sheaves(const SheafComplex& f) {
  const auto& x = *f.complex();
  std::map<int, CellularSheaf> out;
  for (int k = f.lowest_degree(); k <= f.highest_degree(); ++k) {
    SheafMap din = f.differential(k - 1), dout = f.differential(k);
    std::vector<Matrix> reps(x.cell_count()), bases(x.cell_count());
    std::vector<std::size_t> dims(x.cell_count());
    for (CellId c = 0; c < x.cell_count(); ++c) {
      std::size_t n = f.term(k).stalk(c);
      reps[c] = cohomology_representatives(din.components[c], dout.components[c], n);
      bases[c] = din.components[c].cols() == 0 ? Matrix(n, 0) : column_space_basis(din.components[c]);
      dims[c] = reps[c].cols();
    }
    CellularSheaf h(f.complex(), dims);
    for (CellId t = 0; t < x.cell_count(); ++t)
      for (const auto& inc : x.faces(t)) {
        CellId s = inc.cell;
        if (dims[s] == 0 || dims[t] == 0) continue;
        Matrix image = f.term(k).restriction(s, t) * reps[s];
        Matrix frame = bases[t].hconcat(reps[t]);
        auto coords = solve(frame, image);
        if (!coords) throw SheafError("restriction does not preserve cycles");
        h.set_restriction(s, t, coords->block(bases[t].cols(), 0, dims[t], dims[s]));
      }
    bool nonzero = std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d != 0; });
    if (nonzero) out.emplace(k, std::move(h));
  }
  return out;
}

GradedDims stalk(const SheafComplex& f, CellId cell) { return cohomology(f.stalk_complex(cell)); }

ConstructibleFunction chi_local(const SheafComplex& f) {
  const auto& x = *f.complex();
  ConstructibleFunction out{f.complex(), std::vector<long>(x.cell_count(), 0)};
  for (CellId c = 0; c < x.cell_count(); ++c) {
    long by_terms = 0;
    for (int k = f.lowest_degree(); k <= f.highest_degree(); ++k)
      by_terms += (k % 2 == 0 ? 1 : -1) * static_cast<long>(f.term(k).stalk(c));
    long by_cohomology = stalk(f, c).euler();
    if (by_terms != by_cohomology) throw SheafError("local Euler characteristic routes disagree");
    out.values[c] = by_terms;
  }
  return out;
}

SheafComplex tensor(const SheafComplex& f, const SheafComplex& g) {
  require_same_complex(f.complex(), g.complex());
  const auto& x = *f.complex();
  int lo = f.lowest_degree() + g.lowest_degree();
  int hi = f.highest_degree() + g.highest_degree();
  // Summand (a, b) of degree n = a + b, ordered by a.
  auto offsets = [&](CellId c, int n) {
    std::map<int, std::size_t> off;
    std::size_t pos = 0;
    for (int a = f.lowest_degree(); a <= f.highest_degree(); ++a) {
      off[a] = pos;
      pos += f.term(a).stalk(c) * g.term(n - a).stalk(c);
    }
    off[f.highest_degree() + 1] = pos;
    return off;
  };
  std::vector<CellularSheaf> terms;
  for (int n = lo; n <= hi; ++n) {
    std::vector<std::size_t> stalks(x.cell_count());
    for (CellId c = 0; c < x.cell_count(); ++c) stalks[c] = offsets(c, n).at(f.highest_degree() + 1);
    CellularSheaf s(f.complex(), stalks);
    for (CellId t = 0; t < x.cell_count(); ++t)
      for (const auto& inc : x.faces(t)) {
        auto os = offsets(inc.cell, n), ot = offsets(t, n);
        Matrix m(stalks[t], stalks[inc.cell]);
        for (int a = f.lowest_degree(); a <= f.highest_degree(); ++a)
          m.set_block(ot[a], os[a],
                      Matrix::kronecker(f.term(a).restriction(inc.cell, t), g.term(n - a).restriction(inc.cell, t)));
        s.set_restriction(inc.cell, t, std::move(m));
      }
    terms.push_back(std::move(s));
  }
  std::vector<SheafMap> ds;
  for (int n = lo; n < hi; ++n) {
    SheafMap d;
    for (CellId c = 0; c < x.cell_count(); ++c) {
      auto o0 = offsets(c, n), o1 = offsets(c, n + 1);
      Matrix m(o1.at(f.highest_degree() + 1), o0.at(f.highest_degree() + 1));
      for (int a = f.lowest_degree(); a <= f.highest_degree(); ++a) {
        int b = n - a;
        std::size_t fa = f.term(a).stalk(c), gb = g.term(b).stalk(c);
        if (fa * gb == 0) continue;
        if (a + 1 <= f.highest_degree())
          m.set_block(o1[a + 1], o0[a],
                      Matrix::kronecker(f.differential(a).components[c], Matrix::identity(gb)));
        Matrix dg = Matrix::kronecker(Matrix::identity(fa), g.differential(b).components[c]);
        if (a % 2 != 0) dg = -dg;
        m.add_block(o1[a], o0[a], dg);
      }
      d.components.push_back(std::move(m));
    }
    ds.push_back(std::move(d));
  }
  CellRegion domain = intersection(x, f.domain(), g.domain());
  SheafComplex out(lo, std::move(terms), std::move(ds), domain);
  return out;
}

bool same_stalk_cohomology(const SheafComplex& f, const SheafComplex& g) {
  if (!same_complex(f.complex(), g.complex())) return false;
  for (CellId c = 0; c < f.complex()->cell_count(); ++c)
    if (!(stalk(f, c) == stalk(g, c))) return false;
  return true;
}

}  // namespace cellsheaf
