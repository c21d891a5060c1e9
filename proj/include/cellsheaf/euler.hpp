#pragma once

#include "cellsheaf/functors.hpp"

namespace cellsheaf {

/// χ(X, F) from the ranks of derived global sections.
long euler_global(const SheafComplex& f);
/// χ_c(X, F) for F on its domain.
long euler_global_compact(const SheafComplex& f);

/// ∫ φ dχ_c = Σ (-1)^dim σ φ(σ).
long euler_integral(const ConstructibleFunction& phi);

/// (f_*φ)(y) = χ_c of φ on a point fiber over y, read off the open preimage of y.
ConstructibleFunction pushforward_function(const CellMap& f, const ConstructibleFunction& phi);

/// φ∘f.
ConstructibleFunction pullback_function(const CellMap& f, const ConstructibleFunction& phi);

}  // namespace cellsheaf
