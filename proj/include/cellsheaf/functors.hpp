#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cellsheaf/sheaf.hpp"

namespace cellsheaf {

/// E_cell (x) k^multiplicity, where E_cell is the constant sheaf on the faces
/// of `cell` inside the domain.
struct InjectiveSummand {
  CellId cell;
  std::size_t multiplicity;
};

/// Bounded complex of sums of elementary injectives. A morphism
/// E_s (x) V -> E_t (x) W is a matrix W x V and is nonzero only when t is a face
/// of s, so differentials are stored as coefficient matrices over summand
/// coordinates.
class InjectiveComplex {
 public:
  ComplexPtr complex;
  CellRegion domain;
  int lowest = 0;
  std::vector<std::vector<InjectiveSummand>> summands;  // degree lowest + i
  std::vector<Matrix> differentials;                    // degree lowest + i -> lowest + i + 1

  int highest_degree() const { return lowest + static_cast<int>(summands.size()) - 1; }
  const std::vector<InjectiveSummand>& terms(int degree) const;
  std::size_t rank(int degree) const;
  Matrix differential(int degree) const;

  /// Space complex of the summands whose cell satisfies keep. For the cells of
  /// an open U this is Γ(U, I); for a locally closed Z it is Γ_Z(I).
  SpaceComplex sections(const std::function<bool(CellId)>& keep) const;
  /// Coordinates in degree k of the summands satisfying keep.
  std::vector<std::size_t> coordinates(int degree, const std::function<bool(CellId)>& keep) const;

  /// Sheaf with stalk at t the sum of summands over cofaces of t; restrictions are projections.
  SheafComplex to_sheaf() const;

  /// Throws SheafError on a forbidden block or D^2 != 0.
  void validate() const;
};

/// Canonical resolution G -> (+)_s E_s (x) G(s), iterated on explicit cokernels
/// and totalised over the degrees of F. With certify, stalk cohomology of the
/// result is compared against F.
InjectiveComplex injective_resolution(const SheafComplex& f, bool certify = true);

/// H^k(U, F) for U open in the domain of F (or open in the complex).
GradedDims derived_sections(const CellRegion& region, const SheafComplex& f);
GradedDims derived_sections(const SheafComplex& f);
/// χ(U, F) by counting multiplicities of the canonical resolution, without ranks.
long sections_euler(const CellRegion& region, const SheafComplex& f);
/// Same count from a local Euler characteristic on a domain; `open` must be open in the domain.
long open_sections_euler(const SimplicialComplex& complex, const CellRegion& domain, std::vector<long> chi,
                         const CellRegion& open);

/// H^k_c(Z, F|Z) for Z locally closed inside the domain: global sections of the extension by zero.
GradedDims derived_sections_compact(const CellRegion& region, const SheafComplex& f);
GradedDims derived_sections_compact(const SheafComplex& f);

/// f^*G; stalk at s is the stalk of G at f(s).
SheafComplex pullback(const CellMap& f, const SheafComplex& g);

/// Rf_* of an injective complex: summands are relabelled by their image cell.
InjectiveComplex pushforward_injective(const CellMap& f, const InjectiveComplex& i);
SheafComplex pushforward_derived(const CellMap& f, const SheafComplex& sheaf);

/// Combinatorial Verdier dual on the domain of F.
SheafComplex verdier_dual(const SheafComplex& f);
SheafComplex dualizing_complex(const ComplexPtr& complex);
/// Rf_! = D Rf_* D.
SheafComplex pushforward_proper(const CellMap& f, const SheafComplex& sheaf);
/// f^! = D f^* D.
SheafComplex upper_shriek(const CellMap& f, const SheafComplex& g);

/// Ext^k(F, G) from the Hom complex into the canonical resolution of G.
GradedDims hyperext(const SheafComplex& f, const SheafComplex& g);
/// Dimension of the space of natural transformations F -> G.
std::size_t hom_dimension(const CellularSheaf& f, const CellularSheaf& g);

enum class LocalRoute { direct, cone, ext };

/// H^k_Z(F) for Z locally closed in the domain of F.
GradedDims local_cohomology(const CellRegion& region, const SheafComplex& f, LocalRoute route = LocalRoute::direct);

struct TripleRow {
  int degree;
  std::size_t sub;       // dim H^k_{Z'}
  std::size_t whole;     // dim H^k_Z
  std::size_t quotient;  // dim H^k_{Z \ Z'}
  std::size_t rank_i;
  std::size_t rank_p;
  std::size_t rank_delta;  // H^k_{Z \ Z'} -> H^{k+1}_{Z'}
};

struct TripleReport {
  std::vector<TripleRow> rows;
  bool exact = true;
  long alternating_sum = 0;  // Σ(-1)^k (sub - whole + quotient); zero when exact
};

/// Long exact sequence of local cohomology for Z' closed in Z.
TripleReport local_cohomology_triple(const CellRegion& z, const CellRegion& z_sub, const SheafComplex& f);

struct ExcisionReport {
  GradedDims ambient;
  GradedDims excised;
  bool holds = false;
};

/// H_Z(D, F) against H_Z(V, F|V) for an open V of the domain containing Z.
ExcisionReport excision(const CellRegion& z, const CellRegion& open, const SheafComplex& f);

struct BaseChangeReport {
  GradedDims stalk_side;  // stalk of Rf_!F at y
  GradedDims fiber_side;  // H_c of the fiber
  bool holds = false;
};

/// (R^k f_! F)_y against H^k_c(f^{-1}(b), F) for a point b of the open cell y.
/// The fiber side uses f^{-1}(y) ≅ f^{-1}(b) × y, so it is H^{k + dim y}_c(f^{-1}(y), F).
BaseChangeReport base_change_point_fiber(const CellMap& f, const SheafComplex& sheaf, CellId y);

}  // namespace cellsheaf
