#include "cellsheaf/io.hpp"

#include <fstream>
#include <sstream>

namespace cellsheaf {

namespace {

long parse_long(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) throw FormatError("bad " + what + " '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("bad " + what + " '" + text + "'");
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw FormatError("rationals must be strings \"p/q\" or integers");
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
  return j.at(name);
}

ComplexPtr resolve_complex(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_string()) return complex_from_json(read_json(base / ref.get<std::string>()));
  return complex_from_json(ref);
}

}  // namespace

std::string cell_key(const SimplicialComplex& complex, CellId cell) {
  std::string out;
  for (VertexId v : complex.cell(cell).vertices) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

CellId parse_cell_key(const SimplicialComplex& complex, const std::string& key) {
  std::vector<VertexId> vs;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) vs.push_back(parse_long(part, "vertex id"));
  if (vs.empty()) throw FormatError("empty cell key");
  auto sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  auto id = complex.find(sorted);
  if (!id) throw FormatError("no cell '" + key + "'");
  return *id;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  Matrix m(rows, cols);
  if (j.empty() && (rows == 0 || cols == 0)) return m;
  if (j.size() != rows) throw FormatError("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw FormatError("matrix row " + std::to_string(i) + " does not have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(j[i][c]);
  }
  return m;
}

Json point_to_json(const Point& p) {
  Json out = Json::array();
  for (const auto& r : p) out.push_back(format_rational(r));
  return out;
}

Point point_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("point must be an array of rationals");
  Point p;
  for (const auto& e : j) p.push_back(rational_from_json(e));
  return p;
}

Json complex_to_json(const SimplicialComplex& complex) {
  Json vertices = Json::object();
  for (const auto& [v, p] : complex.coordinates()) vertices[std::to_string(v)] = point_to_json(p);
  Json cells = Json::array();
  for (CellId c : complex.maximal_cells()) cells.push_back(complex.cell(c).vertices);
  return Json{{"ambient_dim", complex.ambient_dim()}, {"vertices", vertices}, {"maximal_cells", cells}};
}

ComplexPtr complex_from_json(const Json& j) {
  const Json& dim = field(j, "ambient_dim");
  if (!dim.is_number_unsigned()) throw FormatError("ambient_dim must be a nonnegative integer");
  std::map<VertexId, Point> coords;
  for (const auto& [key, value] : field(j, "vertices").items()) coords[parse_long(key, "vertex id")] = point_from_json(value);
  std::vector<std::vector<VertexId>> cells;
  for (const auto& cell : field(j, "maximal_cells")) {
    if (!cell.is_array()) throw FormatError("cells must be arrays of vertex ids");
    std::vector<VertexId> vs;
    for (const auto& v : cell) {
      if (!v.is_number_integer()) throw FormatError("vertex ids must be integers");
      vs.push_back(v.get<VertexId>());
    }
    cells.push_back(std::move(vs));
  }
  return SimplicialComplex::build(dim.get<std::size_t>(), std::move(coords), cells);
}

Json sheaf_to_json(const SheafComplex& f) {
  const auto& x = *f.complex();
  Json degrees = Json::object(), diffs = Json::object();
  for (int k = f.lowest_degree(); k <= f.highest_degree(); ++k) {
    const auto& t = f.term(k);
    Json stalks = Json::object(), rest = Json::object();
    for (CellId c = 0; c < x.cell_count(); ++c) {
      if (t.stalk(c) != 0) stalks[cell_key(x, c)] = t.stalk(c);
      for (const auto& inc : x.faces(c)) {
        const Matrix& m = t.restriction(inc.cell, c);
        if (!m.empty() && !m.is_zero()) rest[cell_key(x, inc.cell) + "<" + cell_key(x, c)] = matrix_to_json(m);
      }
    }
    degrees[std::to_string(k)] = Json{{"stalks", stalks}, {"restrictions", rest}};
  }
  for (int k = f.lowest_degree(); k < f.highest_degree(); ++k) {
    Json d = Json::object();
    SheafMap m = f.differential(k);
    for (CellId c = 0; c < x.cell_count(); ++c)
      if (!m.components[c].empty() && !m.components[c].is_zero()) d[cell_key(x, c)] = matrix_to_json(m.components[c]);
    if (!d.empty()) diffs[std::to_string(k)] = d;
  }
  Json out{{"complex", complex_to_json(x)}, {"degrees", degrees}, {"differentials", diffs}};
  if (f.domain().size() != x.cell_count()) {
    Json dom = Json::array();
    for (CellId c : f.domain().cells()) dom.push_back(cell_key(x, c));
    out["domain"] = dom;
  }
  return out;
}

SheafComplex sheaf_from_json(const Json& j, const ComplexPtr& complex) {
  const auto& x = *complex;
  std::map<int, Json> by_degree;
  for (const auto& [key, value] : field(j, "degrees").items()) by_degree[static_cast<int>(parse_long(key, "degree"))] = value;
  if (by_degree.empty()) return SheafComplex::zero(complex);
  const int lo = by_degree.begin()->first, hi = by_degree.rbegin()->first;
  std::vector<CellularSheaf> terms;
  for (int k = lo; k <= hi; ++k) {
    std::vector<std::size_t> stalks(x.cell_count(), 0);
    auto it = by_degree.find(k);
    if (it == by_degree.end()) {
      terms.push_back(CellularSheaf::zero(complex));
      continue;
    }
    const Json& deg = it->second;
    if (deg.contains("stalks"))
      for (const auto& [key, value] : deg.at("stalks").items()) {
        if (!value.is_number_unsigned()) throw FormatError("stalk dimensions must be nonnegative integers");
        stalks[parse_cell_key(x, key)] = value.get<std::size_t>();
      }
    CellularSheaf s(complex, stalks);
    if (deg.contains("restrictions"))
      for (const auto& [key, value] : deg.at("restrictions").items()) {
        auto lt = key.find('<');
        if (lt == std::string::npos) throw FormatError("restriction key '" + key + "' lacks '<'");
        CellId a = parse_cell_key(x, key.substr(0, lt)), b = parse_cell_key(x, key.substr(lt + 1));
        if (x.incidence(a, b) == 0) throw FormatError("restriction key '" + key + "' is not a codimension-1 face pair");
        s.set_restriction(a, b, matrix_from_json(value, stalks[b], stalks[a]));
      }
    terms.push_back(std::move(s));
  }
  std::vector<SheafMap> ds;
  const Json diffs = j.contains("differentials") ? j.at("differentials") : Json::object();
  for (int k = lo; k < hi; ++k) {
    const auto& src = terms[static_cast<std::size_t>(k - lo)];
    const auto& dst = terms[static_cast<std::size_t>(k - lo + 1)];
    SheafMap m = SheafMap::zero(src, dst);
    std::string key = std::to_string(k);
    if (diffs.contains(key))
      for (const auto& [ck, value] : diffs.at(key).items()) {
        CellId c = parse_cell_key(x, ck);
        m.components[c] = matrix_from_json(value, dst.stalk(c), src.stalk(c));
      }
    ds.push_back(std::move(m));
  }
  CellRegion domain = CellRegion::whole(x);
  if (j.contains("domain")) {
    std::vector<CellId> cells;
    for (const auto& key : j.at("domain")) cells.push_back(parse_cell_key(x, key.get<std::string>()));
    try {
      domain = CellRegion(x, cells);
    } catch (const GeometryError& e) {
      throw FormatError(std::string("domain: ") + e.what());
    }
  }
  SheafComplex out(lo, std::move(terms), std::move(ds), domain);
  out.validate();
  return out;
}

SheafComplex sheaf_from_json(const Json& j, const std::filesystem::path& base) {
  return sheaf_from_json(j, resolve_complex(field(j, "complex"), base));
}

Json map_to_json(const CellMap& f) {
  const auto& x = *f.source();
  const auto& y = *f.target();
  Json out{{"source", complex_to_json(x)}, {"target", complex_to_json(y)}};
  if (f.vertex_map()) {
    Json vm = Json::object();
    for (const auto& [v, w] : *f.vertex_map()) vm[std::to_string(v)] = w;
    out["vertex_map"] = vm;
  } else {
    Json im = Json::object();
    for (CellId c = 0; c < x.cell_count(); ++c) im[cell_key(x, c)] = cell_key(y, f(c));
    out["images"] = im;
  }
  return out;
}

CellMap map_from_json(const Json& j, const std::filesystem::path& base) {
  ComplexPtr x = resolve_complex(field(j, "source"), base);
  ComplexPtr y = resolve_complex(field(j, "target"), base);
  if (j.contains("vertex_map")) {
    std::map<VertexId, VertexId> vm;
    for (const auto& [k, v] : j.at("vertex_map").items()) {
      if (!v.is_number_integer()) throw FormatError("vertex map values must be integers");
      vm[parse_long(k, "vertex id")] = v.get<VertexId>();
    }
    return CellMap::simplicial(x, y, vm);
  }
  std::vector<CellId> images(x->cell_count());
  std::vector<bool> seen(x->cell_count());
  for (const auto& [k, v] : field(j, "images").items()) {
    if (!v.is_string()) throw FormatError("cell images must be cell keys");
    CellId c = parse_cell_key(*x, k);
    images[c] = parse_cell_key(*y, v.get<std::string>());
    seen[c] = true;
  }
  for (bool s : seen)
    if (!s) throw FormatError("map leaves a cell without image");
  return CellMap::from_images(x, y, images);
}

Json graded_to_json(const GradedDims& dims) {
  Json out = Json::object();
  for (const auto& [k, d] : dims.entries()) out[std::to_string(k)] = d;
  return out;
}

Json function_to_json(const ConstructibleFunction& phi) {
  Json out = Json::object();
  for (CellId c = 0; c < phi.values.size(); ++c) out[cell_key(*phi.complex, c)] = phi.values[c];
  return out;
}

Json cycle_to_json(const ConormalCycle& cycle) {
  const auto& x = *cycle.complex();
  Json entries = Json::array();
  for (const auto& e : cycle.entries()) {
    if (e.multiplicity == 0) continue;
    Json signs = Json::object();
    for (const auto& [w, s] : e.chamber.signs) signs[std::to_string(w)] = s > 0 ? "+" : "-";
    entries.push_back(Json{{"cell", x.cell(e.chamber.cell).vertices},
                           {"signs", signs},
                           {"witness", point_to_json(e.chamber.witness)},
                           {"multiplicity", e.multiplicity}});
  }
  return Json{{"complex", complex_to_json(x)}, {"entries", entries}};
}

ConormalCycle cycle_from_json(const Json& j, const ComplexPtr& complex) {
  const auto& x = *complex;
  ConormalCycle cycle(complex);
  for (const auto& e : field(j, "entries")) {
    std::vector<VertexId> vs = field(e, "cell").get<std::vector<VertexId>>();
    std::sort(vs.begin(), vs.end());
    auto cell = x.find(vs);
    if (!cell) throw FormatError("cycle entry names an absent cell");
    std::map<VertexId, int> signs;
    for (const auto& [w, s] : field(e, "signs").items()) {
      std::string v = s.get<std::string>();
      if (v != "+" && v != "-") throw FormatError("signs must be \"+\" or \"-\"");
      signs[parse_long(w, "vertex id")] = v == "+" ? 1 : -1;
    }
    const Json& m = field(e, "multiplicity");
    if (!m.is_number_integer()) throw FormatError("multiplicity must be an integer");
    bool found = false;
    for (auto& entry : cycle.entries())
      if (entry.chamber.cell == *cell && entry.chamber.signs == signs) {
        entry.multiplicity = m.get<long>();
        found = true;
      }
    if (!found) throw FormatError("cycle entry names an infeasible chamber");
  }
  return cycle;
}

ConormalCycle cycle_from_json(const Json& j, const std::filesystem::path& base) {
  return cycle_from_json(j, resolve_complex(field(j, "complex"), base));
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace cellsheaf
