#pragma once

#include <random>
#include <string>
#include <vector>

#include "cellsheaf/corpus.hpp"
#include "cellsheaf/io.hpp"

namespace cellsheaf {

/// Integer covector with entries in [-bound, bound], redrawn until it is
/// nonconstant on every edge.
Point random_generic_covector(const SimplicialComplex& complex, std::mt19937& rng, int bound = 7);

/// Betti numbers of the constant sheaf from the simplicial cochain complex.
GradedDims simplicial_cohomology(const SimplicialComplex& complex);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::size_t instances = 0;
  std::string detail;  // first failure
};

struct VerifyReport {
  std::string item;
  unsigned seed = 0;
  std::vector<VerifyCheck> checks;

  bool ok() const;
  Json to_json() const;
  std::string render() const;
};

struct VerifyOptions {
  unsigned seed = 20240611;
  std::size_t covectors = 20;
};

VerifyReport verify_item(const CorpusItem& item, const VerifyOptions& options = {});

/// Items are independent and run in parallel; results keep the input order.
std::vector<VerifyReport> verify_items(const std::vector<CorpusItem>& items, const VerifyOptions& options = {});

}  // namespace cellsheaf
