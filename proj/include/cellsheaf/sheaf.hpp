#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cellsheaf/complex.hpp"
#include "cellsheaf/linalg.hpp"

namespace cellsheaf {

/// Stalk per open cell and restriction maps stalk(face) -> stalk(coface) along
/// codimension-1 face relations. Longer restrictions are composed on demand.
class CellularSheaf {
 public:
  CellularSheaf() = default;
  /// All restrictions start as zero matrices of the right shape.
  CellularSheaf(ComplexPtr complex, std::vector<std::size_t> stalks);
  static CellularSheaf zero(ComplexPtr complex);

  const ComplexPtr& complex() const { return complex_; }
  std::size_t stalk(CellId cell) const { return stalks_.at(cell); }
  const std::vector<std::size_t>& stalks() const { return stalks_; }
  std::size_t total_dim() const;

  /// face must be a codimension-1 face of coface.
  const Matrix& restriction(CellId face, CellId coface) const;
  void set_restriction(CellId face, CellId coface, Matrix m);
  /// Restriction along any face relation (identity when face == cell).
  Matrix composite_restriction(CellId face, CellId cell) const;

  /// Throws SheafError on shape mismatch or a non-commuting codimension-2 square.
  void validate() const;
  bool is_local_system() const;

  friend bool operator==(const CellularSheaf& a, const CellularSheaf& b);

 private:
  std::size_t slot(CellId face, CellId coface) const;

  ComplexPtr complex_;
  std::vector<std::size_t> stalks_;
  std::vector<std::vector<Matrix>> restrictions_;  // [coface][i] for faces(coface)[i]
};

/// Cellwise linear maps between two cellular sheaves on the same complex.
struct SheafMap {
  std::vector<Matrix> components;  // one per cell

  static SheafMap zero(const CellularSheaf& source, const CellularSheaf& target);
  static SheafMap identity(const CellularSheaf& sheaf);
};

/// Throws SheafError unless m is natural with respect to the restrictions.
void check_natural(const CellularSheaf& source, const CellularSheaf& target, const SheafMap& m);

/// Bounded complex of cellular sheaves, living on a locally closed domain.
/// Stalks vanish off the domain, so the stored data is also the extension by
/// zero of the complex to the whole complex.
class SheafComplex {
 public:
  SheafComplex() = default;
  /// differentials[i] maps terms[i] to terms[i+1]; there are terms.size()-1 of them.
  SheafComplex(int lowest_degree, std::vector<CellularSheaf> terms, std::vector<SheafMap> differentials);
  SheafComplex(int lowest_degree, std::vector<CellularSheaf> terms, std::vector<SheafMap> differentials,
               CellRegion domain);

  static SheafComplex concentrated(CellularSheaf sheaf, int degree = 0);
  static SheafComplex zero(ComplexPtr complex);

  const ComplexPtr& complex() const { return complex_; }
  const CellRegion& domain() const { return domain_; }
  int lowest_degree() const { return lowest_; }
  int highest_degree() const { return lowest_ + static_cast<int>(terms_.size()) - 1; }
  /// Zero sheaf outside the stored range.
  const CellularSheaf& term(int degree) const;
  /// Map from degree k to k+1, zero outside the stored range.
  SheafMap differential(int degree) const;
  const std::vector<CellularSheaf>& terms() const { return terms_; }

  /// Complex of stalks at a cell.
  SpaceComplex stalk_complex(CellId cell) const;
  /// Same data, new domain tag (must contain the support).
  SheafComplex with_domain(CellRegion domain) const;

  /// Throws SheafError on the first violated invariant.
  void validate() const;

 private:
  ComplexPtr complex_;
  CellRegion domain_;
  int lowest_ = 0;
  std::vector<CellularSheaf> terms_;
  std::vector<SheafMap> differentials_;
  CellularSheaf zero_;
};

/// Chain map of sheaf complexes; components[k] is the degree-k sheaf map.
class SheafMorphism {
 public:
  SheafMorphism(SheafComplex source, SheafComplex target, std::map<int, SheafMap> components);

  static SheafMorphism identity(const SheafComplex& f);
  static SheafMorphism zero(SheafComplex source, SheafComplex target);

  const SheafComplex& source() const { return source_; }
  const SheafComplex& target() const { return target_; }
  /// Zero map when absent.
  SheafMap component(int degree) const;

  /// Throws SheafError on a failing naturality or chain-map square.
  void validate() const;

 private:
  SheafComplex source_;
  SheafComplex target_;
  std::map<int, SheafMap> components_;
};

struct ConstructibleFunction {
  ComplexPtr complex;
  std::vector<long> values;  // one per cell

  long operator[](CellId cell) const { return values.at(cell); }
  friend bool operator==(const ConstructibleFunction& a, const ConstructibleFunction& b) {
    return a.values == b.values;
  }
};

ConstructibleFunction operator+(const ConstructibleFunction& a, const ConstructibleFunction& b);
ConstructibleFunction operator-(const ConstructibleFunction& a, const ConstructibleFunction& b);

// ---------------------------------------------------------------- constructors

CellularSheaf constant_sheaf(const ComplexPtr& complex, std::size_t rank = 1);
/// Constant of the given rank on a locally closed region, zero elsewhere.
CellularSheaf region_sheaf(const ComplexPtr& complex, const CellRegion& region, std::size_t rank = 1);
/// Stalk `rank` at one cell only.
CellularSheaf skyscraper(const ComplexPtr& complex, CellId cell, std::size_t rank = 1);

/// Constant sheaf on Z regarded as a complex on Z itself (domain Z).
SheafComplex constant_on(const ComplexPtr& complex, const CellRegion& region, std::size_t rank = 1);
/// The extension by zero to the whole complex of a complex on a locally closed domain.
SheafComplex extension_by_zero(const SheafComplex& f);
/// Extension by zero of the constant sheaf of rank r on Z, in degree 0.
SheafComplex extension_by_zero(const ComplexPtr& complex, const CellRegion& region, std::size_t rank = 1);
/// Restriction of a complex to a locally closed subregion of its domain.
SheafComplex restrict_to(const SheafComplex& f, const CellRegion& region);

/// Locally constant sheaf. transports maps an edge (a, b), a < b, to the
/// parallel transport from the fiber at a to the fiber at b; unlisted edges
/// carry the identity. Throws SheafError on singular transports or when the
/// transports are not flat on some 2-cell.
CellularSheaf local_system(const ComplexPtr& complex, std::size_t rank,
                           const std::map<std::pair<VertexId, VertexId>, Matrix>& transports);

// ---------------------------------------------------------------- operations

/// F[k]: degree n holds F^{n+k}; differentials multiplied by (-1)^k.
SheafComplex shift(const SheafComplex& f, int k);

struct Triangle {
  SheafComplex cone;
  SheafMorphism to_cone;    // B -> C(u)
  SheafMorphism from_cone;  // C(u) -> A[1]
};

/// C(u)^k = A^{k+1} (+) B^k with differential [[-d_A, 0], [u, d_B]].
Triangle mapping_triangle(const SheafMorphism& u);
SheafComplex mapping_cone(const SheafMorphism& u);

/// Stalkwise cohomology with the induced restrictions.
std::map<int, CellularSheaf> cohomology_sheaves(const SheafComplex& f);
GradedDims stalk(const SheafComplex& f, CellId cell);
/// Local Euler characteristic; the cochain and cohomology routes are both
/// computed and must agree.
ConstructibleFunction chi_local(const SheafComplex& f);

/// Cellwise tensor product, totalised with the Koszul sign on the second factor.
SheafComplex tensor(const SheafComplex& f, const SheafComplex& g);

/// True when the two complexes have the same stalk cohomology dimensions everywhere.
bool same_stalk_cohomology(const SheafComplex& f, const SheafComplex& g);

}  // namespace cellsheaf
