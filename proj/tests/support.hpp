#pragma once

#include <string>
#include <vector>

#include "cellsheaf/verify.hpp"

namespace testing {

using namespace cellsheaf;

/// H^*(X, F) of a single sheaf from its cellular cochain complex
/// C^k = sum of F(s) over k-cells s, with d = sum of [s:t] ρ_{s t}.
inline GradedDims cochain_cohomology(const CellularSheaf& f) {
  const auto& x = *f.complex();
  std::vector<std::size_t> dims;
  std::vector<Matrix> ds;
  std::vector<std::vector<std::size_t>> offset(x.dimension() + 1);
  for (int k = 0; k <= x.dimension(); ++k) {
    std::size_t total = 0;
    for (CellId c : x.cells_of_dim(k)) {
      offset[k].push_back(total);
      total += f.stalk(c);
    }
    dims.push_back(total);
  }
  for (int k = 0; k < x.dimension(); ++k) {
    Matrix d(dims[k + 1], dims[k]);
    auto lower = x.cells_of_dim(k), upper = x.cells_of_dim(k + 1);
    for (std::size_t j = 0; j < lower.size(); ++j)
      for (std::size_t i = 0; i < upper.size(); ++i) {
        int sign = x.incidence(lower[j], upper[i]);
        if (sign != 0) d.set_block(offset[k + 1][i], offset[k][j], f.restriction(lower[j], upper[i]) * Rational(sign));
      }
    ds.push_back(std::move(d));
  }
  return cohomology(SpaceComplex(0, dims, ds));
}

inline bool is_single(const SheafComplex& f) { return f.lowest_degree() == 0 && f.highest_degree() == 0; }

/// Exact feasibility of {y : s_i a_i . y > 0} by Fourier-Motzkin elimination on A y >= 1.
inline bool fourier_motzkin_feasible(std::vector<std::vector<Rational>> rows) {
  // Each row is (coefficients..., rhs) meaning coefficients . y >= rhs.
  if (rows.empty()) return true;
  std::size_t vars = rows.front().size() - 1;
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<std::vector<Rational>> pos, neg, next;
    for (auto& r : rows) {
      int s = sgn(r[v]);
      (s > 0 ? pos : s < 0 ? neg : next).push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        std::vector<Rational> c(vars + 1);
        // (-n_v) p + p_v n eliminates v.
        for (std::size_t j = 0; j <= vars; ++j) c[j] = -n[v] * p[j] + p[v] * n[j];
        next.push_back(std::move(c));
      }
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (sgn(r[vars]) > 0) return false;  // 0 >= positive
  return true;
}

/// Every sign vector on the link of a cell that Fourier-Motzkin finds feasible in the conormal space.
inline std::vector<std::map<VertexId, int>> oracle_sign_vectors(const SimplicialComplex& x, CellId cell) {
  Matrix basis = conormal_basis(x, cell);
  std::vector<VertexId> link = link_vertices(x, cell);
  const Point& p = x.coordinates(x.cell(cell).vertices.front());
  std::vector<std::map<VertexId, int>> out;
  if (basis.cols() == 0 || link.empty()) return {{}};
  for (std::size_t mask = 0; mask < (std::size_t(1) << link.size()); ++mask) {
    std::vector<std::vector<Rational>> rows;
    std::map<VertexId, int> signs;
    for (std::size_t i = 0; i < link.size(); ++i) {
      int s = (mask >> i) & 1 ? -1 : 1;
      signs[link[i]] = s;
      Point dir = subtract(x.coordinates(link[i]), p);
      std::vector<Rational> row;
      for (std::size_t c = 0; c < basis.cols(); ++c) {
        Rational a = 0;
        for (std::size_t r = 0; r < basis.rows(); ++r) a += basis(r, c) * dir[r];
        row.push_back(a * s);
      }
      row.push_back(1);
      rows.push_back(std::move(row));
    }
    if (fourier_motzkin_feasible(rows)) out.push_back(signs);
  }
  return out;
}

/// m(v, ξ) for the constant sheaf on a closed subcomplex E (default: all of X) at a vertex of E:
/// 1 - χ(lower link), the lower link being the link cells in E all of whose vertices lie strictly below v.
inline long lower_link_morse_index(const SimplicialComplex& x, CellId vertex, const Point& xi,
                                   const CellRegion* within = nullptr) {
  const Rational c = dot(xi, x.coordinates(x.cell(vertex).vertices.front()));
  long chi = 0;
  for (CellId s : x.star_cells(vertex)) {
    if (s == vertex || (within && !within->contains(s))) continue;
    bool lower = true;
    std::size_t n = 0;
    for (VertexId w : x.cell(s).vertices) {
      if (w == x.cell(vertex).vertices.front()) continue;
      ++n;
      lower = lower && dot(xi, x.coordinates(w)) < c;
    }
    if (lower) chi += (n % 2 == 1) ? 1 : -1;  // link simplex of dimension n - 1
  }
  return 1 - chi;
}

struct Fibration {
  std::string name;
  CellMap map;
};

inline ComplexPtr height_segment() {
  return SimplicialComplex::build(1, {{0, Point{Rational(-1)}}, {1, Point{Rational(0)}}, {2, Point{Rational(1)}}},
                                  {{0, 1}, {1, 2}});
}

inline ComplexPtr point_complex(std::size_t ambient) {
  return SimplicialComplex::build(ambient, {{0, Point(ambient, Rational(0))}}, {{0}});
}

inline CellMap to_point(const ComplexPtr& x) {
  std::map<VertexId, VertexId> vm;
  for (const auto& [v, p] : x->coordinates()) vm[v] = 0;
  return CellMap::simplicial(x, point_complex(x->ambient_dim()), vm);
}

inline std::vector<Fibration> fibrations() {
  std::vector<Fibration> out;
  out.push_back({"circle x edge -> edge", staircase_product(circle_complex(), interval_complex()).second});
  out.push_back({"torus -> circle", staircase_product(circle_complex(), circle_complex()).first});
  out.push_back({"octahedron -> height segment",
                 CellMap::simplicial(octahedron_complex(), height_segment(),
                                     {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 0}})});
  out.push_back({"level cut of the interval -> interval",
                 subdivide_along_level(interval_complex(), Point{Rational(1)}, Rational(1, 3)).carrier});
  out.push_back({"octahedron -> point", to_point(octahedron_complex())});
  out.push_back({"circle -> point", to_point(circle_complex())});
  return out;
}

/// A point of the chamber at `cell` that is generic for the refined cell `target`
/// of a subdivision; nullopt if none is found among a few perturbations.
inline std::optional<Point> refine_witness(const SimplicialComplex& x, const ConormalChamber& chamber,
                                           const SimplicialComplex& refined, CellId target, std::mt19937& rng) {
  Matrix basis = conormal_basis(x, chamber.cell);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int attempt = 0; attempt < 40; ++attempt) {
    Point xi = chamber.witness;
    if (attempt > 0 && basis.cols() > 0) {
      Rational eps(1, 1 << std::min(attempt, 20));
      for (std::size_t c = 0; c < basis.cols(); ++c) {
        Rational k = eps * d(rng);
        for (std::size_t r = 0; r < basis.rows(); ++r) xi[r] += k * basis(r, c);
      }
    }
    try {
      if (chamber_signs(x, chamber.cell, xi) != chamber.signs) continue;
      chamber_signs(refined, target, xi);
      return xi;
    } catch (const GenericityError&) {
    }
  }
  return std::nullopt;
}

}  // namespace testing
