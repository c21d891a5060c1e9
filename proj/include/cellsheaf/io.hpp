#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cellsheaf/microlocal.hpp"

namespace cellsheaf {

using Json = nlohmann::json;

/// "0,1,2" for the cell with vertices 0, 1, 2.
std::string cell_key(const SimplicialComplex& complex, CellId cell);
/// Throws FormatError on malformed keys or absent cells.
CellId parse_cell_key(const SimplicialComplex& complex, const std::string& key);

Json matrix_to_json(const Matrix& m);
/// The expected shape is known from the stalks; an empty array stands for any matrix with a zero dimension.
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

/// {"ambient_dim": n, "vertices": {"id": ["p/q", ...]}, "maximal_cells": [[ids]]}
Json complex_to_json(const SimplicialComplex& complex);
ComplexPtr complex_from_json(const Json& j);

/// {"complex": <inline complex>, "degrees": {k: {"stalks": {cell: dim}, "restrictions": {"a<b": matrix}}},
///  "differentials": {k: {cell: matrix}}, "domain": [cells]}
/// Zero stalks, zero restrictions and zero differentials are omitted.
Json sheaf_to_json(const SheafComplex& f);
/// Builds on `complex`; the embedded complex reference, if any, is ignored.
SheafComplex sheaf_from_json(const Json& j, const ComplexPtr& complex);
/// Builds on the complex embedded in the document (inline object or a path relative to `base`).
SheafComplex sheaf_from_json(const Json& j, const std::filesystem::path& base = {});

/// {"source": complex, "target": complex, "vertex_map": {"v": w}} for simplicial maps;
/// otherwise {"source", "target", "images": {cell: cell}}.
Json map_to_json(const CellMap& f);
CellMap map_from_json(const Json& j, const std::filesystem::path& base = {});

Json graded_to_json(const GradedDims& dims);
Json function_to_json(const ConstructibleFunction& phi);

/// {"complex": ..., "entries": [{"cell": [ids], "signs": {"w": "+"}, "witness": [...], "multiplicity": m}]}
/// Zero entries are omitted.
Json cycle_to_json(const ConormalCycle& cycle);
/// Missing chambers read as zero; entries naming unknown chambers are a FormatError.
ConormalCycle cycle_from_json(const Json& j, const ComplexPtr& complex);
ConormalCycle cycle_from_json(const Json& j, const std::filesystem::path& base = {});

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace cellsheaf
