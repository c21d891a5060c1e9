#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cellsheaf/euler.hpp"
#include "cellsheaf/functors.hpp"

namespace cellsheaf {

/// Open cone of covectors at a cell: covectors ξ vanishing on the directions of
/// the cell, classified by the signs of ξ(w - p) over link vertices w.
struct ConormalChamber {
  CellId cell = 0;
  std::map<VertexId, int> signs;  // link vertex -> +1 / -1
  Point witness;

  /// Empty sign vector: the cell has an empty link (for a top cell of the ambient space the covector is 0).
  bool is_zero() const { return signs.empty(); }
  friend bool operator==(const ConormalChamber&, const ConormalChamber&) = default;
};

/// Conormal space of a cell as columns of a basis (ambient x codimension).
Matrix conormal_basis(const SimplicialComplex& complex, CellId cell);

/// All feasible full-dimensional sign vectors at a cell, in a fixed order, each with a rational witness.
std::vector<ConormalChamber> chambers(const SimplicialComplex& complex, CellId cell);

/// Sign vector of ξ on the link of the cell. Throws GenericityError on a wall,
/// GeometryError when ξ is not constant on the cell.
std::map<VertexId, int> chamber_signs(const SimplicialComplex& complex, CellId cell, const Point& xi);

enum class MorseRoute {
  euler,       // multiplicities of the canonical resolution, no ranks
  cohomology,  // pull back to the refined star and compute derived sections
};

/// m = χ(F)_σ - χ(RΓ(st(σ) ∩ {ξ < ξ(σ)}, F)), evaluated on the star refined along the level.
long microlocal_multiplicity(const SheafComplex& f, CellId cell, const Point& xi,
                             MorseRoute route = MorseRoute::euler);
long microlocal_multiplicity(const SheafComplex& f, const ConormalChamber& chamber,
                             MorseRoute route = MorseRoute::euler);

struct CycleEntry {
  ConormalChamber chamber;
  long multiplicity = 0;
};

/// Integer multiplicity on every (cell, chamber) pair of a complex.
class ConormalCycle {
 public:
  ConormalCycle() = default;
  explicit ConormalCycle(ComplexPtr complex);  // zero cycle on all chambers

  const ComplexPtr& complex() const { return complex_; }
  const std::vector<CycleEntry>& entries() const { return entries_; }
  std::vector<CycleEntry>& entries() { return entries_; }

  /// Zero when the chamber does not exist.
  long multiplicity(CellId cell, const std::map<VertexId, int>& signs) const;
  /// Multiplicity of the chamber containing ξ at the cell.
  long multiplicity_at(CellId cell, const Point& xi) const;
  bool is_zero() const;

  ConormalCycle& operator+=(const ConormalCycle& other);
  ConormalCycle& operator-=(const ConormalCycle& other);
  ConormalCycle& operator*=(long k);
  friend ConormalCycle operator+(ConormalCycle a, const ConormalCycle& b) { return a += b; }
  friend ConormalCycle operator-(ConormalCycle a, const ConormalCycle& b) { return a -= b; }
  friend ConormalCycle operator*(long k, ConormalCycle a) { return a *= k; }
  friend bool operator==(const ConormalCycle& a, const ConormalCycle& b);

 private:
  void require_compatible(const ConormalCycle& other) const;

  ComplexPtr complex_;
  std::vector<CycleEntry> entries_;
};

enum class Execution { serial, parallel };

/// CC(F) for F on the whole complex. The parallel path distributes (cell, chamber)
/// pairs over OpenMP threads and produces the same cycle as the serial one.
ConormalCycle characteristic_cycle(const SheafComplex& f, Execution execution = Execution::parallel);

/// Throws GenericityError when ξ is constant on some edge.
void require_generic(const SimplicialComplex& complex, const Point& xi);

/// Σ over vertices v of the multiplicity at (v, chamber of ξ).
long index_pairing(const ConormalCycle& cycle, const Point& xi);

/// Pushforward of a cycle along the inclusion of a subcomplex sharing ambient coordinates.
ConormalCycle cc_pushforward_closed(const ConormalCycle& cycle, const CellMap& inclusion);

struct CheckReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool holds() const { return failures.empty(); }
};

/// m_{F⊠G}((v,w), ξ⊕η) = m_F(v, ξ) m_G(w, η) on the staircase product at every
/// vertex pair for `samples` seeded generic covector pairs, plus χ multiplicativity.
CheckReport external_multiplicativity(const SheafComplex& f, const SheafComplex& g, std::size_t samples = 3,
                                      unsigned seed = 1);

/// CC and χ additivity on the cone of φ, and CC(F) = Σ(-1)^k CC(H^k F) for source and target.
CheckReport cc_additivity_check(const SheafMorphism& phi);

/// A ConstructibleFunction determines CC; exposed for callers that already hold χ(F).
ConormalCycle characteristic_cycle_of(const ConstructibleFunction& chi, Execution execution = Execution::parallel);

}  // namespace cellsheaf
