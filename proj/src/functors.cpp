#include "cellsheaf/functors.hpp"

#include <algorithm>
#include <string>

namespace cellsheaf {

namespace {

// Cells of the region strictly above each cell, ascending.
std::vector<std::vector<CellId>> strict_cofaces_in(const SimplicialComplex& x, const CellRegion& z) {
  std::vector<std::vector<CellId>> out(x.cell_count());
  for (CellId t : z.cells())
    for (CellId s : x.star_cells(t))
      if (s != t && z.contains(s)) out[t].push_back(s);
  return out;
}

// Offset of each region cell inside (+)_{s in Z} G(s); last entry is the total.
std::vector<std::size_t> sum_offsets(const CellularSheaf& g, const CellRegion& z) {
  std::vector<std::size_t> off(g.stalks().size() + 1, 0);
  std::size_t pos = 0;
  for (CellId c = 0; c < g.stalks().size(); ++c) {
    off[c] = pos;
    if (z.contains(c)) pos += g.stalk(c);
  }
  off.back() = pos;
  return off;
}

struct CokernelStep {
  CellularSheaf cokernel;
  Matrix vertical;  // coefficients T(G) -> T(Q)
};

// Q(t) = (+)_{s > t, s in Z} G(s), the cokernel of G -> T(G).
CokernelStep cokernel_step(const CellularSheaf& g, const CellRegion& z,
                           const std::vector<std::vector<CellId>>& above) {
  const auto& x = *g.complex();
  std::vector<std::size_t> stalks(x.cell_count(), 0);
  std::vector<std::map<CellId, std::size_t>> inner(x.cell_count());
  for (CellId t : z.cells())
    for (CellId s : above[t]) {
      inner[t][s] = stalks[t];
      stalks[t] += g.stalk(s);
    }
  CellularSheaf q(g.complex(), stalks);
  for (CellId t : z.cells())
    for (const auto& inc : x.cofaces(t)) {
      CellId tp = inc.cell;
      if (!z.contains(tp)) continue;
      Matrix r(stalks[tp], stalks[t]);
      for (CellId s : above[tp]) {
        std::size_t row = inner[tp].at(s);
        r.set_block(row, inner[t].at(s), Matrix::identity(g.stalk(s)));
        r.add_block(row, inner[t].at(tp), -g.composite_restriction(tp, s));
      }
      q.set_restriction(t, tp, std::move(r));
    }

  auto off_g = sum_offsets(g, z);
  auto off_q = sum_offsets(q, z);
  Matrix v(off_q.back(), off_g.back());
  for (CellId t : z.cells())
    for (CellId s : above[t]) {
      std::size_t row = off_q[t] + inner[t].at(s);
      v.set_block(row, off_g[t], -g.composite_restriction(t, s));
      v.set_block(row, off_g[s], Matrix::identity(g.stalk(s)));
    }
  return CokernelStep{std::move(q), std::move(v)};
}

// Map of cokernels induced by a sheaf map h: G -> G'.
SheafMap cokernel_map(const SheafMap& h, const CellularSheaf& q_source, const CellularSheaf& q_target,
                      const CellRegion& z, const std::vector<std::vector<CellId>>& above) {
  SheafMap out = SheafMap::zero(q_source, q_target);
  for (CellId t : z.cells()) {
    std::size_t r = 0, c = 0;
    for (CellId s : above[t]) {
      const Matrix& b = h.components[s];
      out.components[t].set_block(r, c, b);
      r += b.rows();
      c += b.cols();
    }
  }
  return out;
}

// Coefficients of T(h): block diagonal over the region.
Matrix sum_map(const SheafMap& h, const CellularSheaf& g, const CellularSheaf& gp, const CellRegion& z) {
  auto off = sum_offsets(g, z), offp = sum_offsets(gp, z);
  Matrix m(offp.back(), off.back());
  for (CellId s : z.cells()) m.set_block(offp[s], off[s], h.components[s]);
  return m;
}

std::vector<InjectiveSummand> summands_of(const CellularSheaf& g, const CellRegion& z) {
  std::vector<InjectiveSummand> out;
  for (CellId s : z.cells()) out.push_back({s, g.stalk(s)});
  return out;
}

CellRegion effective_open(const CellRegion& region, const SheafComplex& f) {
  const auto& x = *f.complex();
  CellRegion w = intersection(x, region, f.domain());
  if (!w.is_open_in(x, f.domain())) throw SheafError("region is not open in the domain");
  return w;
}

std::vector<std::size_t> summand_offsets(const std::vector<InjectiveSummand>& list) {
  std::vector<std::size_t> off;
  std::size_t pos = 0;
  for (const auto& s : list) {
    off.push_back(pos);
    pos += s.multiplicity;
  }
  off.push_back(pos);
  return off;
}

Matrix vec_left(const Matrix& a, std::size_t cols) { return Matrix::kronecker(a, Matrix::identity(cols)); }
Matrix vec_right(const Matrix& b, std::size_t rows) { return Matrix::kronecker(Matrix::identity(rows), b.transpose()); }

}  // namespace

// ---------------------------------------------------------------- InjectiveComplex

const std::vector<InjectiveSummand>& InjectiveComplex::terms(int degree) const {
  static const std::vector<InjectiveSummand> none;
  if (degree < lowest || degree > highest_degree()) return none;
  return summands[static_cast<std::size_t>(degree - lowest)];
}

std::size_t InjectiveComplex::rank(int degree) const {
  std::size_t r = 0;
  for (const auto& s : terms(degree)) r += s.multiplicity;
  return r;
}

Matrix InjectiveComplex::differential(int degree) const {
  if (degree < lowest || degree >= highest_degree()) return Matrix(rank(degree + 1), rank(degree));
  return differentials[static_cast<std::size_t>(degree - lowest)];
}

std::vector<std::size_t> InjectiveComplex::coordinates(int degree, const std::function<bool(CellId)>& keep) const {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (const auto& s : terms(degree)) {
    if (keep(s.cell))
      for (std::size_t i = 0; i < s.multiplicity; ++i) out.push_back(pos + i);
    pos += s.multiplicity;
  }
  return out;
}

SpaceComplex InjectiveComplex::sections(const std::function<bool(CellId)>& keep) const {
  std::vector<std::size_t> dims;
  std::vector<Matrix> ds;
  for (int k = lowest; k <= highest_degree(); ++k) dims.push_back(coordinates(k, keep).size());
  for (int k = lowest; k < highest_degree(); ++k)
    ds.push_back(differential(k).select_rows(coordinates(k + 1, keep)).select_cols(coordinates(k, keep)));
  return SpaceComplex(lowest, dims, std::move(ds));
}

SheafComplex InjectiveComplex::to_sheaf() const {
  const auto& x = *complex;
  std::vector<CellularSheaf> sheaves;
  std::vector<SheafMap> maps;
  // Coordinates of the summands over cofaces of t, per degree.
  auto over = [&](int k, CellId t) {
    return coordinates(k, [&](CellId s) { return domain.contains(t) && x.is_face(t, s); });
  };
  for (int k = lowest; k <= highest_degree(); ++k) {
    std::vector<std::size_t> stalks(x.cell_count());
    std::vector<std::vector<std::size_t>> coords(x.cell_count());
    for (CellId t = 0; t < x.cell_count(); ++t) {
      coords[t] = over(k, t);
      stalks[t] = coords[t].size();
    }
    CellularSheaf s(complex, stalks);
    for (CellId t = 0; t < x.cell_count(); ++t)
      for (const auto& inc : x.faces(t)) {
        const auto& from = coords[inc.cell];
        const auto& to = coords[t];
        if (from.empty() || to.empty()) continue;
        Matrix p(to.size(), from.size());
        for (std::size_t i = 0; i < to.size(); ++i)
          p(i, static_cast<std::size_t>(std::find(from.begin(), from.end(), to[i]) - from.begin())) = 1;
        s.set_restriction(inc.cell, t, std::move(p));
      }
    sheaves.push_back(std::move(s));
  }
  for (int k = lowest; k < highest_degree(); ++k) {
    SheafMap d;
    Matrix full = differential(k);
    for (CellId t = 0; t < x.cell_count(); ++t) d.components.push_back(full.select_rows(over(k + 1, t)).select_cols(over(k, t)));
    maps.push_back(std::move(d));
  }
  return SheafComplex(lowest, std::move(sheaves), std::move(maps), domain);
}

void InjectiveComplex::validate() const {
  const auto& x = *complex;
  for (int k = lowest; k < highest_degree(); ++k) {
    Matrix d = differential(k);
    auto cols = summand_offsets(terms(k));
    auto rows = summand_offsets(terms(k + 1));
    for (std::size_t i = 0; i < terms(k + 1).size(); ++i)
      for (std::size_t j = 0; j < terms(k).size(); ++j) {
        CellId t = terms(k + 1)[i].cell, s = terms(k)[j].cell;
        if (x.is_face(t, s)) continue;
        if (!d.block(rows[i], cols[j], rows[i + 1] - rows[i], cols[j + 1] - cols[j]).is_zero())
          throw SheafError("injective differential has a block between non-incident summands");
      }
  }
  sections([](CellId) { return true; }).verify();
}

// ---------------------------------------------------------------- resolution

InjectiveComplex injective_resolution(const SheafComplex& f, bool certify) {
  const auto& x = *f.complex();
  const CellRegion& z = f.domain();
  const auto above = strict_cofaces_in(x, z);
  const int lo = f.lowest_degree(), hi = f.highest_degree();
  const std::size_t np = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t bound = static_cast<std::size_t>(std::max(x.dimension(), 0)) + 2;

  // levels[p][q]: q-th cokernel sheaf of F^{lo+p}; maps[p][q]: induced G -> G' horizontally.
  std::vector<std::vector<CellularSheaf>> levels(np);
  std::vector<std::vector<Matrix>> verticals(np);
  for (std::size_t p = 0; p < np; ++p) {
    levels[p].push_back(f.term(lo + static_cast<int>(p)));
    for (;;) {
      const CellularSheaf& g = levels[p].back();
      bool empty = true;
      for (CellId c : z.cells()) empty = empty && g.stalk(c) == 0;
      if (empty) break;
      if (levels[p].size() > bound) throw SheafError("injective resolution failed to terminate");
      auto step = cokernel_step(g, z, above);
      verticals[p].push_back(std::move(step.vertical));
      levels[p].push_back(std::move(step.cokernel));
    }
  }
  std::size_t nq = 1;
  for (const auto& l : levels) nq = std::max(nq, l.size() - 1);
  for (std::size_t p = 0; p < np; ++p)
    while (levels[p].size() < nq + 1) levels[p].push_back(CellularSheaf::zero(f.complex()));

  std::vector<std::vector<SheafMap>> hmaps(np);
  for (std::size_t p = 0; p + 1 < np; ++p) {
    hmaps[p].push_back(f.differential(lo + static_cast<int>(p)));
    for (std::size_t q = 1; q < nq; ++q)
      hmaps[p].push_back(cokernel_map(hmaps[p][q - 1], levels[p][q], levels[p + 1][q], z, above));
  }

  DoubleComplex grid;
  grid.p0 = lo;
  grid.q0 = 0;
  grid.dims.assign(np, std::vector<std::size_t>(nq));
  grid.horizontal.assign(np, std::vector<Matrix>(nq));
  grid.vertical.assign(np, std::vector<Matrix>(nq > 0 ? nq - 1 : 0));
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t q = 0; q < nq; ++q) {
      grid.dims[p][q] = sum_offsets(levels[p][q], z).back();
      if (p + 1 < np) grid.horizontal[p][q] = sum_map(hmaps[p][q], levels[p][q], levels[p + 1][q], z);
      if (q + 1 < nq) {
        if (q < verticals[p].size()) {
          grid.vertical[p][q] = verticals[p][q];
        } else {
          grid.vertical[p][q] = Matrix(sum_offsets(levels[p][q + 1], z).back(), grid.dims[p][q]);
        }
      }
    }
  SpaceComplex total = total_complex(grid);

  InjectiveComplex out;
  out.complex = f.complex();
  out.domain = z;
  out.lowest = lo;
  for (std::size_t n = 0; n < np + nq - 1; ++n) {
    std::vector<InjectiveSummand> list;
    for (std::size_t p = 0; p < np; ++p) {
      if (n < p || n - p >= nq) continue;
      for (const auto& s : summands_of(levels[p][n - p], z)) list.push_back(s);
    }
    out.summands.push_back(std::move(list));
  }
  for (int k = total.lowest_degree(); k < total.highest_degree(); ++k) out.differentials.push_back(total.differential(k));

  // Drop empty summands; coordinates are unaffected.
  for (auto& list : out.summands)
    list.erase(std::remove_if(list.begin(), list.end(), [](const InjectiveSummand& s) { return s.multiplicity == 0; }),
               list.end());

  if (certify) {
    SheafComplex as_sheaf = out.to_sheaf();
    for (CellId c : z.cells())
      if (!(stalk(as_sheaf, c) == stalk(f, c))) throw SheafError("resolution is not a stalkwise quasi-isomorphism");
  }
  return out;
}

GradedDims derived_sections(const CellRegion& region, const SheafComplex& f) {
  CellRegion w = effective_open(region, f);
  InjectiveComplex i = injective_resolution(f);
  return cohomology(i.sections([&](CellId c) { return w.contains(c); }));
}

GradedDims derived_sections(const SheafComplex& f) { return derived_sections(f.domain(), f); }

long sections_euler(const CellRegion& region, const SheafComplex& f) {
  CellRegion w = effective_open(region, f);
  return open_sections_euler(*f.complex(), f.domain(), chi_local(f).values, w);
}

long open_sections_euler(const SimplicialComplex& complex, const CellRegion& domain, std::vector<long> chi,
                         const CellRegion& open) {
  const auto above = strict_cofaces_in(complex, domain);
  long total = 0;
  // chi holds the Euler characteristic of the k-th cokernel sheaf, stalk by stalk.
  for (int k = 0; k <= complex.dimension() + 1; ++k) {
    long level = 0;
    for (CellId t : open.cells()) level += chi[t];
    total += (k % 2 == 0 ? 1 : -1) * level;
    std::vector<long> next(chi.size(), 0);
    for (CellId t : domain.cells())
      for (CellId s : above[t]) next[t] += chi[s];
    chi = std::move(next);
  }
  return total;
}

GradedDims derived_sections_compact(const CellRegion& region, const SheafComplex& f) {
  SheafComplex g = extension_by_zero(restrict_to(f, region));
  return derived_sections(g);
}

GradedDims derived_sections_compact(const SheafComplex& f) { return derived_sections(extension_by_zero(f)); }

// ---------------------------------------------------------------- pullback and pushforward

SheafComplex pullback(const CellMap& f, const SheafComplex& g) {
  if (f.target() != g.complex()) throw SheafError("pullback along a map with a different target");
  const auto& x = *f.source();
  std::vector<CellId> pre;
  for (CellId c = 0; c < x.cell_count(); ++c)
    if (g.domain().contains(f(c))) pre.push_back(c);
  CellRegion domain(x, pre);
  std::vector<CellularSheaf> terms;
  std::vector<SheafMap> ds;
  for (int k = g.lowest_degree(); k <= g.highest_degree(); ++k) {
    const auto& t = g.term(k);
    std::vector<std::size_t> stalks(x.cell_count());
    for (CellId c = 0; c < x.cell_count(); ++c) stalks[c] = t.stalk(f(c));
    CellularSheaf s(f.source(), stalks);
    for (CellId c = 0; c < x.cell_count(); ++c)
      for (const auto& inc : x.faces(c)) s.set_restriction(inc.cell, c, t.composite_restriction(f(inc.cell), f(c)));
    terms.push_back(std::move(s));
  }
  for (int k = g.lowest_degree(); k < g.highest_degree(); ++k) {
    SheafMap d = g.differential(k), out;
    for (CellId c = 0; c < x.cell_count(); ++c) out.components.push_back(d.components[f(c)]);
    ds.push_back(std::move(out));
  }
  SheafComplex out(g.lowest_degree(), std::move(terms), std::move(ds), domain);
  out.validate();
  return out;
}

InjectiveComplex pushforward_injective(const CellMap& f, const InjectiveComplex& i) {
  if (f.source() != i.complex) throw SheafError("pushforward along a map with a different source");
  InjectiveComplex out = i;
  out.complex = f.target();
  out.domain = CellRegion::whole(*f.target());
  for (auto& list : out.summands)
    for (auto& s : list) s.cell = f(s.cell);
  return out;
}

SheafComplex pushforward_derived(const CellMap& f, const SheafComplex& sheaf) {
  SheafComplex out = pushforward_injective(f, injective_resolution(sheaf)).to_sheaf();
  out.validate();
  return out;
}

// ---------------------------------------------------------------- duality

SheafComplex verdier_dual(const SheafComplex& f) {
  const auto& x = *f.complex();
  const CellRegion& z = f.domain();
  const int lo = -f.highest_degree() - std::max(x.dimension(), 0);
  const int hi = -f.lowest_degree();
  std::vector<std::vector<CellId>> star(x.cell_count());
  for (CellId s : z.cells())
    for (CellId t : x.star_cells(s))
      if (z.contains(t)) star[s].push_back(t);

  struct Entry {
    CellId cell;
    int inner;  // degree of F
    std::size_t offset;
  };
  auto entries = [&](int m, CellId s) {
    std::vector<Entry> out;
    std::size_t pos = 0;
    for (CellId t : star[s]) {
      int j = -m - x.dim(t);
      std::size_t d = f.term(j).stalk(t);
      if (d == 0) continue;
      out.push_back({t, j, pos});
      pos += d;
    }
    return out;
  };
  auto width = [&](const std::vector<Entry>& es) {
    return es.empty() ? std::size_t{0} : es.back().offset + f.term(es.back().inner).stalk(es.back().cell);
  };
  auto find = [](const std::vector<Entry>& es, CellId t) -> const Entry* {
    for (const auto& e : es)
      if (e.cell == t) return &e;
    return nullptr;
  };

  std::vector<CellularSheaf> terms;
  std::vector<SheafMap> ds;
  for (int m = lo; m <= hi; ++m) {
    std::vector<std::size_t> stalks(x.cell_count(), 0);
    for (CellId s : z.cells()) stalks[s] = width(entries(m, s));
    CellularSheaf sheaf(f.complex(), stalks);
    for (CellId sp : z.cells())
      for (const auto& inc : x.faces(sp)) {
        if (!z.contains(inc.cell)) continue;
        auto from = entries(m, inc.cell), to = entries(m, sp);
        Matrix p(stalks[sp], stalks[inc.cell]);
        for (const auto& e : to) {
          const Entry* src = find(from, e.cell);
          p.set_block(e.offset, src->offset, Matrix::identity(f.term(e.inner).stalk(e.cell)));
        }
        sheaf.set_restriction(inc.cell, sp, std::move(p));
      }
    terms.push_back(std::move(sheaf));
  }
  for (int m = lo; m < hi; ++m) {
    SheafMap d;
    for (CellId s = 0; s < x.cell_count(); ++s) {
      if (!z.contains(s)) {
        d.components.emplace_back(0, 0);
        continue;
      }
      auto cols = entries(m, s), rows = entries(m + 1, s);
      Matrix block(width(rows), width(cols));
      for (const auto& e : cols) {
        const auto& fj = f.term(e.inner);
        for (const auto& inc : x.faces(e.cell)) {
          const Entry* r = find(rows, inc.cell);
          if (!r) continue;
          block.add_block(r->offset, e.offset, fj.restriction(inc.cell, e.cell).transpose() * Rational(inc.sign));
        }
        if (const Entry* r = find(rows, e.cell)) {
          Matrix v = f.differential(e.inner - 1).components[e.cell].transpose();
          if (x.dim(e.cell) % 2 != 0) v = -v;
          block.add_block(r->offset, e.offset, v);
        }
      }
      d.components.push_back(std::move(block));
    }
    ds.push_back(std::move(d));
  }
  SheafComplex out(lo, std::move(terms), std::move(ds), z);
  out.validate();
  return out;
}

SheafComplex dualizing_complex(const ComplexPtr& complex) {
  return verdier_dual(SheafComplex::concentrated(constant_sheaf(complex)));
}

SheafComplex pushforward_proper(const CellMap& f, const SheafComplex& sheaf) {
  return verdier_dual(pushforward_derived(f, verdier_dual(sheaf)));
}

SheafComplex upper_shriek(const CellMap& f, const SheafComplex& g) {
  return verdier_dual(pullback(f, verdier_dual(g)));
}

// ---------------------------------------------------------------- Ext

GradedDims hyperext(const SheafComplex& f, const SheafComplex& g) {
  if (!same_complex(f.complex(), g.complex())) throw SheafError("hyperext of objects on different complexes");
  const auto& x = *f.complex();
  InjectiveComplex inj = injective_resolution(g);
  const int flo = f.lowest_degree(), fhi = f.highest_degree();
  const int nlo = inj.lowest - fhi, nhi = inj.highest_degree() - flo;

  // Hom^n = (+)_a (+)_{summands s of I^{a+n}} Hom(F^a(s), V_s), row-major blocks.
  struct Block {
    int a;
    std::size_t summand;
    std::size_t offset;
  };
  auto layout = [&](int n) {
    std::vector<Block> out;
    std::size_t pos = 0;
    for (int a = flo; a <= fhi; ++a) {
      const auto& list = inj.terms(a + n);
      for (std::size_t i = 0; i < list.size(); ++i) {
        out.push_back({a, i, pos});
        pos += list[i].multiplicity * f.term(a).stalk(list[i].cell);
      }
    }
    return std::make_pair(out, pos);
  };

  std::vector<std::size_t> dims;
  std::vector<Matrix> ds;
  for (int n = nlo; n <= nhi; ++n) dims.push_back(layout(n).second);
  for (int n = nlo; n < nhi; ++n) {
    auto [cols, ncols] = layout(n);
    auto [rows, nrows] = layout(n + 1);
    Matrix d(nrows, ncols);
    auto row_of = [&](int a, std::size_t summand) -> const Block& {
      for (const auto& b : rows)
        if (b.a == a && b.summand == summand) return b;
      throw SheafError("hom complex layout mismatch");
    };
    for (const auto& col : cols) {
      const auto& src_list = inj.terms(col.a + n);
      const InjectiveSummand& s = src_list[col.summand];
      const std::size_t fs = f.term(col.a).stalk(s.cell);
      if (s.multiplicity * fs == 0) continue;
      // d_I o phi: into summands s' of I^{a+n+1} with s' a face of s.
      Matrix di = inj.differential(col.a + n);
      auto src_off = summand_offsets(src_list);
      const auto& dst_list = inj.terms(col.a + n + 1);
      auto dst_off = summand_offsets(dst_list);
      for (std::size_t j = 0; j < dst_list.size(); ++j) {
        const InjectiveSummand& t = dst_list[j];
        if (!x.is_face(t.cell, s.cell)) continue;
        Matrix m = di.block(dst_off[j], src_off[col.summand], t.multiplicity, s.multiplicity);
        if (m.is_zero()) continue;
        Matrix rho = f.term(col.a).composite_restriction(t.cell, s.cell);
        const std::size_t ft = f.term(col.a).stalk(t.cell);
        if (t.multiplicity * ft == 0) continue;
        d.add_block(row_of(col.a, j).offset, col.offset, Matrix::kronecker(m, rho.transpose()));
      }
      // -(-1)^n phi o d_F: phi in degree a feeds Hom(F^{a-1}, I^{a-1+n+1}).
      if (col.a - 1 >= flo) {
        const std::size_t fprev = f.term(col.a - 1).stalk(s.cell);
        if (fprev > 0) {
          Matrix dfm = f.differential(col.a - 1).components[s.cell];
          Matrix m = vec_right(dfm, s.multiplicity);
          if (n % 2 == 0) m = -m;
          d.add_block(row_of(col.a - 1, col.summand).offset, col.offset, m);
        }
      }
    }
    ds.push_back(std::move(d));
  }
  SpaceComplex hom(nlo, dims, std::move(ds));
  hom.verify();
  return cohomology(hom);
}

std::size_t hom_dimension(const CellularSheaf& f, const CellularSheaf& g) {
  if (!same_complex(f.complex(), g.complex())) throw SheafError("hom of sheaves on different complexes");
  const auto& x = *f.complex();
  std::vector<std::size_t> off(x.cell_count() + 1, 0);
  for (CellId c = 0; c < x.cell_count(); ++c) off[c + 1] = off[c] + g.stalk(c) * f.stalk(c);
  std::size_t nrows = 0;
  for (CellId t = 0; t < x.cell_count(); ++t)
    for (const auto& inc : x.faces(t)) nrows += g.stalk(t) * f.stalk(inc.cell);
  Matrix a(nrows, off.back());
  std::size_t row = 0;
  for (CellId t = 0; t < x.cell_count(); ++t)
    for (const auto& inc : x.faces(t)) {
      const CellId s = inc.cell;
      const std::size_t h = g.stalk(t) * f.stalk(s);
      if (h == 0) continue;
      // phi_t rho^F - rho^G phi_s = 0
      a.add_block(row, off[t], vec_right(f.restriction(s, t), g.stalk(t)));
      a.add_block(row, off[s], -vec_left(g.restriction(s, t), f.stalk(s)));
      row += h;
    }
  return off.back() - rank(a);
}

// ---------------------------------------------------------------- local cohomology

GradedDims local_cohomology(const CellRegion& region, const SheafComplex& f, LocalRoute route) {
  const auto& x = *f.complex();
  const CellRegion& d = f.domain();
  if (!region.is_subset_of(d)) throw SheafError("support region leaves the domain");
  switch (route) {
    case LocalRoute::direct: {
      InjectiveComplex i = injective_resolution(f);
      return cohomology(i.sections([&](CellId c) { return region.contains(c); }));
    }
    case LocalRoute::cone: {
      CellRegion closed = closure(x, region.cells());
      std::vector<CellId> v_cells, rest_cells;
      for (CellId c : d.cells()) {
        bool frontier = closed.contains(c) && !region.contains(c);
        if (frontier) continue;
        v_cells.push_back(c);
        if (!closed.contains(c)) rest_cells.push_back(c);
      }
      CellRegion v(x, v_cells), rest(x, rest_cells);
      InjectiveComplex i = injective_resolution(f);
      auto in_v = [&](CellId c) { return v.contains(c); };
      auto in_rest = [&](CellId c) { return rest.contains(c); };
      SpaceComplex a = i.sections(in_v), b = i.sections(in_rest);
      DoubleComplex grid;
      grid.p0 = 0;
      grid.q0 = i.lowest;
      const std::size_t nq = i.summands.size();
      grid.dims.assign(2, std::vector<std::size_t>(nq));
      grid.horizontal.assign(2, std::vector<Matrix>(nq));
      grid.vertical.assign(2, std::vector<Matrix>(nq - 1));
      for (std::size_t q = 0; q < nq; ++q) {
        int k = i.lowest + static_cast<int>(q);
        auto cv = i.coordinates(k, in_v), cr = i.coordinates(k, in_rest);
        grid.dims[0][q] = cv.size();
        grid.dims[1][q] = cr.size();
        Matrix proj(cr.size(), cv.size());
        for (std::size_t r = 0; r < cr.size(); ++r)
          proj(r, static_cast<std::size_t>(std::find(cv.begin(), cv.end(), cr[r]) - cv.begin())) = 1;
        grid.horizontal[0][q] = std::move(proj);
        if (q + 1 < nq) {
          grid.vertical[0][q] = a.differential(k);
          grid.vertical[1][q] = b.differential(k);
        }
      }
      return cohomology(total_complex(grid));
    }
    case LocalRoute::ext:
      return hyperext(SheafComplex::concentrated(region_sheaf(f.complex(), region)), f);
  }
  throw SheafError("unknown local cohomology route");
}

TripleReport local_cohomology_triple(const CellRegion& z, const CellRegion& z_sub, const SheafComplex& f) {
  const auto& x = *f.complex();
  if (!z.is_subset_of(f.domain())) throw SheafError("support region leaves the domain");
  if (!z_sub.is_closed_in(x, z)) throw SheafError("inner region is not closed in the outer one");
  CellRegion quotient = difference(x, z, z_sub);
  InjectiveComplex i = injective_resolution(f);
  auto in_z = [&](CellId c) { return z.contains(c); };
  auto in_sub = [&](CellId c) { return z_sub.contains(c); };
  auto in_quot = [&](CellId c) { return quotient.contains(c); };
  SpaceComplex cz = i.sections(in_z), cs = i.sections(in_sub), cq = i.sections(in_quot);
  GradedDims hz = cohomology(cz), hs = cohomology(cs), hq = cohomology(cq);

  auto positions = [](const std::vector<std::size_t>& inner, const std::vector<std::size_t>& outer) {
    std::vector<std::size_t> out;
    for (std::size_t c : inner) out.push_back(static_cast<std::size_t>(std::find(outer.begin(), outer.end(), c) - outer.begin()));
    return out;
  };

  TripleReport report;
  const int lo = i.lowest - 1, hi = i.highest_degree() + 1;
  std::map<int, std::size_t> ri, rp, rd;
  for (int k = lo; k <= hi; ++k) {
    auto oz = i.coordinates(k, in_z), os = i.coordinates(k, in_sub), oq = i.coordinates(k, in_quot);
    Matrix inc(oz.size(), os.size()), proj(oq.size(), oz.size());
    auto ps = positions(os, oz), pq = positions(oq, oz);
    for (std::size_t j = 0; j < ps.size(); ++j) inc(ps[j], j) = 1;
    for (std::size_t j = 0; j < pq.size(); ++j) proj(j, pq[j]) = 1;
    ri[k] = induced_rank(cs, cz, k, inc);
    rp[k] = induced_rank(cz, cq, k, proj);
    // Connecting map: the block of D from the quotient summands into the sub summands.
    Matrix dq = cq.differential(k);
    Matrix cycles = dq.rows() == 0 ? Matrix::identity(oq.size()) : kernel_basis(dq);
    Matrix cross = i.differential(k).select_rows(i.coordinates(k + 1, in_sub)).select_cols(oq);
    Matrix boundaries = cs.differential(k);
    Matrix image = cross * cycles;
    rd[k] = rank(boundaries.hconcat(image)) - rank(boundaries);
  }
  for (int k = lo; k <= hi; ++k) {
    TripleRow row{k, hs[k], hz[k], hq[k], ri[k], rp[k], rd[k]};
    std::size_t before = rd.count(k - 1) ? rd[k - 1] : 0;
    bool ok = row.sub == before + row.rank_i && row.whole == row.rank_i + row.rank_p &&
              row.quotient == row.rank_p + row.rank_delta;
    report.exact = report.exact && ok;
    report.alternating_sum += (k % 2 == 0 ? 1 : -1) *
                              (static_cast<long>(row.sub) - static_cast<long>(row.whole) + static_cast<long>(row.quotient));
    report.rows.push_back(row);
  }
  return report;
}

ExcisionReport excision(const CellRegion& z, const CellRegion& open, const SheafComplex& f) {
  const auto& x = *f.complex();
  if (!open.is_open_in(x, f.domain())) throw SheafError("excision region is not open in the domain");
  if (!z.is_subset_of(open)) throw SheafError("excision region does not contain the support");
  ExcisionReport r;
  r.ambient = local_cohomology(z, f);
  r.excised = local_cohomology(z, restrict_to(f, open));
  r.holds = r.ambient == r.excised;
  return r;
}

BaseChangeReport base_change_point_fiber(const CellMap& f, const SheafComplex& sheaf, CellId y) {
  const auto& x = *f.source();
  BaseChangeReport r;
  r.stalk_side = stalk(pushforward_proper(f, sheaf), y);
  std::vector<CellId> fiber;
  for (CellId c : sheaf.domain().cells())
    if (f(c) == y) fiber.push_back(c);
  if (!fiber.empty()) r.fiber_side = derived_sections_compact(CellRegion(x, fiber), sheaf).shifted(f.target()->dim(y));
  r.holds = r.stalk_side == r.fiber_side;
  return r;
}

}  // namespace cellsheaf
