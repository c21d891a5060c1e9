#include "cellsheaf/euler.hpp"

namespace cellsheaf {

long euler_global(const SheafComplex& f) { return derived_sections(f).euler(); }

long euler_global_compact(const SheafComplex& f) { return derived_sections_compact(f).euler(); }

long euler_integral(const ConstructibleFunction& phi) {
  long total = 0;
  for (CellId c = 0; c < phi.values.size(); ++c) total += (phi.complex->dim(c) % 2 == 0 ? 1 : -1) * phi.values[c];
  return total;
}

ConstructibleFunction pushforward_function(const CellMap& f, const ConstructibleFunction& phi) {
  if (!same_complex(phi.complex, f.source())) throw SheafError("constructible function lives on another complex");
  const auto& y = *f.target();
  ConstructibleFunction out{f.target(), std::vector<long>(y.cell_count(), 0)};
  // The open preimage of y is (fiber) x (open cell y), so χ_c differs by (-1)^dim y.
  for (CellId c = 0; c < phi.values.size(); ++c) {
    CellId t = f(c);
    long sign = ((phi.complex->dim(c) + y.dim(t)) % 2 == 0) ? 1 : -1;
    out.values[t] += sign * phi.values[c];
  }
  return out;
}

ConstructibleFunction pullback_function(const CellMap& f, const ConstructibleFunction& phi) {
  if (!same_complex(phi.complex, f.target())) throw SheafError("constructible function lives on another complex");
  ConstructibleFunction out{f.source(), std::vector<long>(f.source()->cell_count(), 0)};
  for (CellId c = 0; c < out.values.size(); ++c) out.values[c] = phi.values[f(c)];
  return out;
}

}  // namespace cellsheaf
