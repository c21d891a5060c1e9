#pragma once

#include <random>
#include <string>
#include <vector>

#include "cellsheaf/functors.hpp"

namespace cellsheaf {

ComplexPtr interval_complex();             // [0,1] in R^1
ComplexPtr subdivided_interval_complex();  // 0, 1/2, 1
ComplexPtr circle_complex();               // triangle boundary in R^2
ComplexPtr octahedron_complex();           // ±e_i in R^3
ComplexPtr two_hemisphere_sphere();        // hexagonal bipyramid, poles 6 (north) and 7 (south)
ComplexPtr staircase_torus();              // circle x circle in R^4

struct NamedSheaf {
  std::string name;
  SheafComplex sheaf;
};

struct CorpusItem {
  std::string name;
  ComplexPtr complex;
  /// Closed orientable manifold of this dimension, or -1.
  int closed_manifold_dim = -1;
  std::vector<NamedSheaf> sheaves;  // all on the whole complex

  const SheafComplex& sheaf(const std::string& name) const;
};

std::vector<std::string> corpus_names();
/// Throws Error for unknown names. Random members are drawn from `seed`.
CorpusItem corpus_item(const std::string& name, unsigned seed = 7);
std::vector<CorpusItem> corpus(unsigned seed = 7);

/// Rj_* of the constant sheaf on an open region.
SheafComplex pushforward_from_open(const ComplexPtr& complex, const CellRegion& open, std::size_t rank = 1);

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937& rng, int bound = 3);
/// Two-term complex I^0 -> I^1 of elementary injectives with multiplicities at most max_mult.
SheafComplex random_injective_complex(const ComplexPtr& complex, std::mt19937& rng, std::size_t max_mult = 2);
/// A morphism from `source` (a single sheaf in degree 0) into a random sum of elementary injectives.
SheafMorphism random_morphism(const SheafComplex& source, std::mt19937& rng, std::size_t max_mult = 2);

}  // namespace cellsheaf
