#include "cellsheaf/verify.hpp"

#include <exception>
#include <functional>
#include <sstream>

#include "cellsheaf/microlocal.hpp"

namespace cellsheaf {

Point random_generic_covector(const SimplicialComplex& complex, std::mt19937& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  for (;;) {
    Point xi;
    for (std::size_t i = 0; i < complex.ambient_dim(); ++i) xi.emplace_back(d(rng));
    try {
      require_generic(complex, xi);
      return xi;
    } catch (const GenericityError&) {
    }
  }
}

GradedDims simplicial_cohomology(const SimplicialComplex& complex) {
  int top = static_cast<int>(complex.dimension());
  std::vector<std::size_t> dims;
  std::vector<Matrix> ds;
  for (int k = 0; k <= top; ++k) dims.push_back(complex.cells_of_dim(k).size());
  // The coboundary is the transpose of the boundary.
  for (int k = 0; k < top; ++k) ds.push_back(complex.boundary_matrix(k + 1).transpose());
  return cohomology(SpaceComplex(0, dims, ds));
}

bool VerifyReport::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Json VerifyReport::to_json() const {
  Json out;
  out["item"] = item;
  out["seed"] = seed;
  out["ok"] = ok();
  out["checks"] = Json::array();
  for (const auto& c : checks) {
    Json j{{"name", c.name}, {"passed", c.passed}, {"instances", c.instances}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    out["checks"].push_back(j);
  }
  return out;
}

std::string VerifyReport::render() const {
  std::ostringstream s;
  s << "item " << item << "  seed " << seed << "\n";
  for (const auto& c : checks) {
    s << (c.passed ? "  pass  " : "  FAIL  ") << c.name << " (" << c.instances << ")";
    if (!c.detail.empty()) s << "  " << c.detail;
    s << "\n";
  }
  s << (ok() ? "all invariants hold\n" : "violations found\n");
  return s.str();
}

namespace {

class Recorder {
 public:
  explicit Recorder(VerifyReport& r) : report_(r) {}

  // Runs body once per instance; body returns an empty string on success.
  template <class Body>
  void check(const std::string& name, std::size_t count, Body body) {
    VerifyCheck c{name, true, 0, {}};
    for (std::size_t i = 0; i < count; ++i) {
      std::string failure;
      try {
        failure = body(i);
      } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
      }
      ++c.instances;
      if (!failure.empty() && c.passed) {
        c.passed = false;
        c.detail = failure;
      }
    }
    report_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& report_;
};

std::string point_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].get_str();
  return s + ")";
}

bool single_sheaf(const SheafComplex& f) { return f.lowest_degree() == 0 && f.highest_degree() == 0; }

}  // namespace

VerifyReport verify_item(const CorpusItem& item, const VerifyOptions& options) {
  VerifyReport report;
  report.item = item.name;
  report.seed = options.seed;
  Recorder rec(report);
  const auto& x = *item.complex;
  const auto& sheaves = item.sheaves;
  std::mt19937 rng(options.seed);

  rec.check("boundary squares to zero", static_cast<std::size_t>(x.dimension() > 1 ? x.dimension() - 1 : 0), [&](std::size_t i) -> std::string {
    int k = static_cast<int>(i) + 2;
    return (x.boundary_matrix(k - 1) * x.boundary_matrix(k)).is_zero() ? "" : "d∘d != 0 in degree " + std::to_string(k);
  });

  rec.check("sheaf validation", sheaves.size(), [&](std::size_t i) -> std::string {
    sheaves[i].sheaf.validate();
    return "";
  });

  rec.check("constant sheaf cohomology matches simplicial cohomology", 1, [&](std::size_t) -> std::string {
    GradedDims a = derived_sections(SheafComplex::concentrated(constant_sheaf(item.complex)));
    GradedDims b = simplicial_cohomology(x);
    return a == b ? "" : a.to_string() + " vs " + b.to_string();
  });

  std::vector<long> chi(sheaves.size());
  rec.check("euler integral equals compact euler characteristic", sheaves.size(), [&](std::size_t i) -> std::string {
    const auto& f = sheaves[i].sheaf;
    long a = euler_integral(chi_local(f));
    long b = euler_global_compact(f);
    chi[i] = euler_global(f);
    if (a != b || b != chi[i])
      return sheaves[i].name + ": " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(chi[i]);
    return "";
  });

  std::vector<ConormalCycle> cycles(sheaves.size());
  for (std::size_t i = 0; i < sheaves.size(); ++i) cycles[i] = characteristic_cycle(sheaves[i].sheaf, Execution::serial);
  std::vector<Point> covectors;
  for (std::size_t i = 0; i < options.covectors; ++i) covectors.push_back(random_generic_covector(x, rng));
  rec.check("index theorem", sheaves.size() * covectors.size(), [&](std::size_t n) -> std::string {
    std::size_t i = n / covectors.size();
    const Point& xi = covectors[n % covectors.size()];
    long p = index_pairing(cycles[i], xi);
    if (p == chi[i]) return "";
    return sheaves[i].name + " at " + point_string(xi) + ": " + std::to_string(p) + " vs " + std::to_string(chi[i]);
  });

  rec.check("biduality stalk dimensions", sheaves.size(), [&](std::size_t i) -> std::string {
    const auto& f = sheaves[i].sheaf;
    return same_stalk_cohomology(verdier_dual(verdier_dual(f)), f) ? "" : sheaves[i].name;
  });

  rec.check("global duality H^-k(X, DF) = H^k_c(X, F)", sheaves.size(), [&](std::size_t i) -> std::string {
    const auto& f = sheaves[i].sheaf;
    GradedDims a = derived_sections(verdier_dual(f));
    GradedDims c = derived_sections_compact(f);
    GradedDims b;
    for (const auto& [k, d] : c.entries()) b.set(-k, d);
    return a == b ? "" : sheaves[i].name + ": " + a.to_string() + " vs " + b.to_string();
  });

  if (item.closed_manifold_dim >= 0) {
    rec.check("poincare duality", 1, [&](std::size_t) -> std::string {
      int n = item.closed_manifold_dim;
      SheafComplex c = SheafComplex::concentrated(constant_sheaf(item.complex));
      GradedDims h = derived_sections(c);
      GradedDims hc = derived_sections_compact(c);
      for (int p = 0; p <= n; ++p)
        if (hc[n - p] != h[p]) return "degree " + std::to_string(p);
      return "";
    });
  }

  std::vector<std::size_t> singles;
  for (std::size_t i = 0; i < sheaves.size(); ++i)
    if (single_sheaf(sheaves[i].sheaf)) singles.push_back(i);
  rec.check("Ext^0 equals Hom", singles.size(), [&](std::size_t n) -> std::string {
    const auto& f = sheaves[singles[n]].sheaf;
    const auto& g = sheaves[singles[(n + 1) % singles.size()]].sheaf;
    std::size_t hom = hom_dimension(f.term(0), g.term(0));
    std::size_t ext = hyperext(f, g)[0];
    return hom == ext ? "" : std::to_string(ext) + " vs " + std::to_string(hom);
  });

  rec.check("cone additivity", 2, [&](std::size_t) -> std::string {
    SheafComplex source = SheafComplex::concentrated(constant_sheaf(item.complex));
    CheckReport r = cc_additivity_check(random_morphism(source, rng));
    return r.holds() ? "" : r.failures.front();
  });

  rec.check("proper pushforward to a point is compact cohomology", 2, [&](std::size_t i) -> std::string {
    const auto& f = sheaves[i].sheaf;
    VertexId v0 = x.coordinates().begin()->first;
    ComplexPtr point = SimplicialComplex::build(x.ambient_dim(), {{0, x.coordinates(v0)}}, {{0}});
    std::map<VertexId, VertexId> vmap;
    for (const auto& [v, p] : x.coordinates()) vmap[v] = 0;
    CellMap to_point = CellMap::simplicial(item.complex, point, vmap);
    GradedDims a = stalk(pushforward_proper(to_point, f), 0);
    GradedDims b = derived_sections_compact(f);
    return a == b ? "" : sheaves[i].name + ": " + a.to_string() + " vs " + b.to_string();
  });

  rec.check("local cohomology triple is exact", 1, [&](std::size_t) -> std::string {
    CellRegion whole = CellRegion::whole(x);
    CellRegion vertex = closure(x, {x.cells_of_dim(0).front()});
    TripleReport t = local_cohomology_triple(whole, vertex, sheaves.front().sheaf);
    return t.exact && t.alternating_sum == 0 ? "" : "not exact";
  });

  return report;
}

std::vector<VerifyReport> verify_items(const std::vector<CorpusItem>& items, const VerifyOptions& options) {
  std::vector<VerifyReport> out(items.size());
  std::vector<std::exception_ptr> errors(items.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < items.size(); ++i) {
    try {
      out[i] = verify_item(items[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace cellsheaf
