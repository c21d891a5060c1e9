#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cellsheaf/verify.hpp"

using namespace cellsheaf;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, violation = 1, usage = 2, genericity = 3 };

struct Inputs {
  std::string complex;
  std::string sheaf;
};

ComplexPtr load_complex(const std::string& path) { return complex_from_json(read_json(path)); }

SheafComplex load_sheaf(const Inputs& in) {
  Json j = read_json(in.sheaf);
  if (!in.complex.empty()) return sheaf_from_json(j, load_complex(in.complex));
  return sheaf_from_json(j, fs::path(in.sheaf).parent_path());
}

Point parse_point(const std::string& text) {
  Point p;
  std::stringstream s(text);
  std::string part;
  while (std::getline(s, part, ',')) {
    try {
      Rational r(part);
      r.canonicalize();
      p.push_back(r);
    } catch (const std::invalid_argument&) {
      throw FormatError("bad covector entry '" + part + "'");
    }
  }
  if (p.empty()) throw FormatError("empty covector");
  return p;
}

CellRegion parse_region(const SimplicialComplex& x, const std::vector<std::string>& keys) {
  std::vector<CellId> cells;
  for (const auto& k : keys) cells.push_back(parse_cell_key(x, k));
  return CellRegion(x, cells);
}

void emit(const Json& j, bool json, const std::string& text, const std::string& out) {
  if (!out.empty()) write_json(out, j);
  std::cout << (json ? j.dump(2) + "\n" : text);
}

std::string render_graded(const std::string& title, const GradedDims& g) {
  std::ostringstream s;
  s << title << "\n";
  if (g.is_zero()) s << "  (zero)\n";
  for (const auto& [k, d] : g.entries()) s << "  H^" << k << "  " << d << "\n";
  return s.str();
}

std::string signs_text(const std::map<VertexId, int>& signs) {
  if (signs.empty()) return "zero";
  std::string s;
  for (const auto& [v, sign] : signs) s += (s.empty() ? "" : " ") + std::to_string(v) + (sign > 0 ? "+" : "-");
  return s;
}

std::string point_text(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].get_str();
  return s + ")";
}

std::string render_cycle(const ConormalCycle& cc, bool nonzero_only) {
  const auto& x = *cc.complex();
  std::ostringstream s;
  s << std::left << std::setw(12) << "cell" << std::setw(20) << "link signs" << std::setw(16) << "witness"
    << "multiplicity\n";
  for (const auto& e : cc.entries()) {
    if (nonzero_only && e.multiplicity == 0) continue;
    s << std::setw(12) << cell_key(x, e.chamber.cell) << std::setw(20) << signs_text(e.chamber.signs) << std::setw(16)
      << point_text(e.chamber.witness) << e.multiplicity << "\n";
  }
  return s.str();
}

fs::path corpus_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CELLSHEAF_CORPUS_DIR")) return env;
  return "corpus";
}

void write_item(const CorpusItem& item, const fs::path& dir) {
  fs::path d = dir / item.name;
  fs::create_directories(d);
  std::string complex_file = item.name + ".json";
  write_json(d / complex_file, complex_to_json(*item.complex));
  for (const auto& s : item.sheaves) {
    Json j = sheaf_to_json(s.sheaf);
    j["complex"] = complex_file;
    write_json(d / (s.name + ".json"), j);
  }
}

// Loads an item previously written by `corpus`; manifold metadata is not stored.
CorpusItem read_item(const std::string& name, const fs::path& dir) {
  fs::path d = dir / name;
  CorpusItem item;
  item.name = name;
  item.complex = load_complex((d / (name + ".json")).string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(d))
    if (e.path().extension() == ".json" && e.path().stem() != name) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) item.sheaves.push_back({f.stem().string(), sheaf_from_json(read_json(f), item.complex)});
  return item;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with cellular constructible sheaves"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::string out;
  app.add_flag("--json", json, "Print structured output");

  Inputs in;
  auto add_inputs = [&](CLI::App* c) {
    c->add_option("--sheaf", in.sheaf, "Sheaf file")->required()->check(CLI::ExistingFile);
    c->add_option("--complex", in.complex, "Complex file overriding the one referenced by the sheaf")
        ->check(CLI::ExistingFile);
    c->add_option("-o,--out", out, "Write the structured result here");
  };

  auto* validate = app.add_subcommand("validate", "Check a complex or sheaf file");
  std::string validate_complex;
  validate->add_option("--complex", validate_complex, "Complex file")->check(CLI::ExistingFile);
  validate->add_option("--sheaf", in.sheaf, "Sheaf file")->check(CLI::ExistingFile);

  std::vector<std::string> region;
  auto* coh = app.add_subcommand("cohomology", "H^k(U, F) for an open U (default: the whole domain)");
  add_inputs(coh);
  coh->add_option("--cells", region, "Cells of U as keys such as 0,1");
  auto* cohc = app.add_subcommand("cohomology-c", "H^k_c(Z, F) for a locally closed Z (default: the domain)");
  add_inputs(cohc);
  cohc->add_option("--cells", region, "Cells of Z");

  auto* dual = app.add_subcommand("dual", "Verdier dual");
  add_inputs(dual);

  std::string target_sheaf;
  auto* ext = app.add_subcommand("ext", "Ext^k(F, G)");
  add_inputs(ext);
  ext->add_option("--target", target_sheaf, "Sheaf G on the same complex")->required()->check(CLI::ExistingFile);

  std::string route_name = "direct";
  auto* local = app.add_subcommand("local-cohomology", "H^k_Z(F)");
  add_inputs(local);
  local->add_option("--cells", region, "Cells of Z")->required();
  local->add_option("--route", route_name, "direct, cone or ext")->check(CLI::IsMember({"direct", "cone", "ext"}));

  std::string map_file;
  bool proper = false;
  auto* push = app.add_subcommand("pushforward", "Rf_* F, or Rf_! F with --proper");
  add_inputs(push);
  push->add_option("--map", map_file, "Map file")->required()->check(CLI::ExistingFile);
  push->add_flag("--proper", proper, "Proper pushforward");
  auto* pull = app.add_subcommand("pullback", "f^* G, or f^! G with --shriek");
  add_inputs(pull);
  pull->add_option("--map", map_file, "Map file")->required()->check(CLI::ExistingFile);
  pull->add_flag("--shriek", proper, "Exceptional pullback");

  auto* euler = app.add_subcommand("euler", "Local and global Euler characteristics");
  add_inputs(euler);

  bool serial = false, nonzero = false;
  auto* cc = app.add_subcommand("cc", "Characteristic cycle");
  add_inputs(cc);
  cc->add_flag("--serial", serial, "Use the serial reference path");
  cc->add_flag("--nonzero", nonzero, "Only print nonzero multiplicities");

  std::string cycle_file, covector;
  auto* pair = app.add_subcommand("pair", "Pair a cycle with the zero section along a covector");
  pair->add_option("--cycle", cycle_file, "Cycle file")->required()->check(CLI::ExistingFile);
  pair->add_option("--covector", covector, "Comma-separated rationals, e.g. 1,-1/2")->required();

  std::vector<std::string> items;
  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite on corpus items");
  verify->add_option("items", items, "Corpus item names (default: all)");
  verify->add_option("--seed", vopt.seed, "Seed for random covectors and morphisms");
  verify->add_option("--covectors", vopt.covectors, "Covectors per sheaf for the index theorem");

  std::string dir_flag, action = "write";
  unsigned corpus_seed = 7;
  auto* corpus_cmd = app.add_subcommand("corpus", "List or write the bundled examples");
  corpus_cmd->add_option("action", action, "list or write")->check(CLI::IsMember({"list", "write"}));
  corpus_cmd->add_option("--dir", dir_flag, "Output directory (default $CELLSHEAF_CORPUS_DIR or ./corpus)");
  corpus_cmd->add_option("--seed", corpus_seed, "Seed of the random members");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*validate) {
      if (validate_complex.empty() && in.sheaf.empty()) throw CLI::ValidationError("give --complex or --sheaf");
      Json report = Json::object();
      std::string text;
      try {
        if (!validate_complex.empty()) {
          ComplexPtr x = load_complex(validate_complex);
          report["f_vector"] = x->f_vector();
          report["euler_characteristic"] = x->euler_characteristic();
          text += "complex ok, euler characteristic " + std::to_string(x->euler_characteristic()) + "\n";
        }
        if (!in.sheaf.empty()) {
          in.complex = validate_complex;
          SheafComplex f = load_sheaf(in);
          report["degrees"] = {f.lowest_degree(), f.highest_degree()};
          text += "sheaf ok, degrees " + std::to_string(f.lowest_degree()) + ".." + std::to_string(f.highest_degree()) + "\n";
        }
      } catch (const GeometryError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return violation;
      } catch (const SheafError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return violation;
      }
      report["valid"] = true;
      emit(report, json, text, out);
    } else if (*coh || *cohc) {
      SheafComplex f = load_sheaf(in);
      const auto& x = *f.complex();
      GradedDims g;
      if (*coh) g = region.empty() ? derived_sections(f) : derived_sections(parse_region(x, region), f);
      else g = region.empty() ? derived_sections_compact(f) : derived_sections_compact(parse_region(x, region), f);
      emit(graded_to_json(g), json, render_graded(*coh ? "cohomology" : "compactly supported cohomology", g), out);
    } else if (*dual) {
      SheafComplex d = verdier_dual(load_sheaf(in));
      Json j = sheaf_to_json(d);
      std::ostringstream s;
      for (CellId c = 0; c < d.complex()->cell_count(); ++c)
        s << std::left << std::setw(12) << cell_key(*d.complex(), c) << stalk(d, c).to_string() << "\n";
      emit(j, json, "stalk cohomology of the dual\n" + s.str(), out);
    } else if (*ext) {
      SheafComplex f = load_sheaf(in);
      SheafComplex g = sheaf_from_json(read_json(target_sheaf), f.complex());
      GradedDims e = hyperext(f, g);
      emit(graded_to_json(e), json, render_graded("Ext", e), out);
    } else if (*local) {
      SheafComplex f = load_sheaf(in);
      LocalRoute route = route_name == "cone" ? LocalRoute::cone : route_name == "ext" ? LocalRoute::ext : LocalRoute::direct;
      GradedDims g = local_cohomology(parse_region(*f.complex(), region), f, route);
      emit(graded_to_json(g), json, render_graded("local cohomology", g), out);
    } else if (*push || *pull) {
      CellMap f = map_from_json(read_json(map_file), fs::path(map_file).parent_path());
      SheafComplex s = in.complex.empty() ? sheaf_from_json(read_json(in.sheaf), *push ? f.source() : f.target())
                                          : load_sheaf(in);
      SheafComplex r;
      if (*push) r = proper ? pushforward_proper(f, s) : pushforward_derived(f, s);
      else r = proper ? upper_shriek(f, s) : pullback(f, s);
      std::ostringstream t;
      for (CellId c = 0; c < r.complex()->cell_count(); ++c)
        t << std::left << std::setw(12) << cell_key(*r.complex(), c) << stalk(r, c).to_string() << "\n";
      emit(sheaf_to_json(r), json, "stalk cohomology\n" + t.str(), out);
    } else if (*euler) {
      SheafComplex f = load_sheaf(in);
      ConstructibleFunction chi = chi_local(f);
      Json j{{"local", function_to_json(chi)}, {"global", euler_global(f)}, {"compact", euler_global_compact(f)},
             {"integral", euler_integral(chi)}};
      std::ostringstream s;
      for (CellId c = 0; c < f.complex()->cell_count(); ++c)
        s << std::left << std::setw(12) << cell_key(*f.complex(), c) << chi.values[c] << "\n";
      s << "chi(X, F) = " << j["global"] << "\nchi_c(X, F) = " << j["compact"] << "\nintegral = " << j["integral"] << "\n";
      emit(j, json, s.str(), out);
    } else if (*cc) {
      ConormalCycle c = characteristic_cycle(load_sheaf(in), serial ? Execution::serial : Execution::parallel);
      emit(cycle_to_json(c), json, render_cycle(c, nonzero), out);
    } else if (*pair) {
      ConormalCycle c = cycle_from_json(read_json(cycle_file), fs::path(cycle_file).parent_path());
      long p = index_pairing(c, parse_point(covector));
      std::cout << (json ? Json{{"pairing", p}}.dump(2) : std::to_string(p)) << "\n";
    } else if (*verify) {
      if (items.empty()) items = corpus_names();
      const auto builtin = corpus_names();
      std::vector<CorpusItem> loaded;
      for (const auto& name : items) {
        if (std::find(builtin.begin(), builtin.end(), name) != builtin.end()) loaded.push_back(corpus_item(name));
        else if (fs::exists(corpus_dir("") / name)) loaded.push_back(read_item(name, corpus_dir("")));
        else throw CLI::ValidationError("unknown corpus item '" + name + "'");
      }
      std::vector<VerifyReport> reports = verify_items(loaded, vopt);
      bool all = true;
      Json j = Json::array();
      for (const auto& r : reports) {
        all = all && r.ok();
        j.push_back(r.to_json());
        if (!json) std::cout << r.render();
      }
      if (json) std::cout << j.dump(2) << "\n";
      return all ? ok : violation;
    } else if (*corpus_cmd) {
      if (action == "list") {
        for (const auto& n : corpus_names()) std::cout << n << "\n";
      } else {
        fs::path dir = corpus_dir(dir_flag);
        for (const auto& item : corpus(corpus_seed)) write_item(item, dir);
        std::cout << "wrote " << corpus_names().size() << " items to " << dir.string() << "\n";
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return usage;
  } catch (const GenericityError& e) {
    std::cerr << "non-generic covector: " << e.what() << "\n";
    return genericity;
  } catch (const FormatError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return usage;
  } catch (const Json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return ok;
}
