#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypervol/graph.hpp"
#include "json.hpp"

namespace hypervol {

struct CatalogEntry {
  std::string name;
  PlanarTrivalentGraph graph;
  std::optional<double> expected_volume;
  std::string notes;
};

PlanarTrivalentGraph tetrahedron_graph();
// Lateral faces 1..n, bottom n+1, top n+2.
PlanarTrivalentGraph prism_graph(int n);
// Pentagonal prism with lateral face 4 pleated into faces 4 (top side) and 8.
PlanarTrivalentGraph pleated_prism_graph();
// Top 1, upper ring 2..6, lower ring 7..11, bottom 12.
PlanarTrivalentGraph dodecahedron_graph();

void set_all_angles(PlanarTrivalentGraph& g, Angle a);

// Built-in names; "tetrahedron-regular:<p>/<q>" is parametric.
std::vector<std::string> catalog_names();
// Looks in $HYPERVOL_CATALOG_DIR/<name>.json first, then the built-ins.
CatalogEntry catalog_entry(const std::string& name);

nlohmann::json to_json(const CatalogEntry& e);
CatalogEntry entry_from_json(const nlohmann::json& j);
CatalogEntry load_polyhedron_file(const std::string& path);

// Two graphs are the same polyhedron up to renaming of vertices and edges,
// with face labels and angles preserved.
bool same_polyhedron(const PlanarTrivalentGraph& a, const PlanarTrivalentGraph& b);

}  // namespace hypervol
