#include "hypervol/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hypervol/error.hpp"

namespace hypervol {

using nlohmann::json;

PlanarTrivalentGraph tetrahedron_graph() {
  return PlanarTrivalentGraph::from_face_cycles({{1, {1, 2, 3}}, {2, {0, 3, 2}}, {3, {0, 1, 3}}, {4, {0, 2, 1}}});
}

PlanarTrivalentGraph prism_graph(int n) {
  if (n < 3) throw ValidationError("prism needs at least 3 lateral faces");
  std::map<int, std::vector<int>> c;
  // bottom vertices 0..n-1, top vertices n..2n-1
  for (int k = 0; k < n; ++k) {
    int b0 = k, b1 = (k + 1) % n;
    c[k + 1] = {b0, b1, n + b1, n + b0};
  }
  std::vector<int> bottom, top;
  for (int k = n - 1; k >= 0; --k) bottom.push_back(k);
  for (int k = 0; k < n; ++k) top.push_back(n + k);
  c[n + 1] = bottom;
  c[n + 2] = top;
  return PlanarTrivalentGraph::from_face_cycles(c);
}

PlanarTrivalentGraph pleated_prism_graph() {
  // b0..b4 = 0..4, t0..t4 = 5..9, m3 = 10, m4 = 11
  return PlanarTrivalentGraph::from_face_cycles({
      {1, {0, 1, 6, 5}},
      {2, {1, 2, 7, 6}},
      {3, {2, 3, 10, 8, 7}},
      {4, {10, 11, 9, 8}},
      {5, {4, 0, 5, 9, 11}},
      {6, {5, 6, 7, 8, 9}},
      {7, {4, 3, 2, 1, 0}},
      {8, {3, 4, 11, 10}},
  });
}

PlanarTrivalentGraph dodecahedron_graph() {
  // u_k = k, v_k = 5+k, w_k = 10+k, x_k = 15+k
  auto u = [](int k) { return (k + 5) % 5; };
  auto v = [](int k) { return 5 + (k + 5) % 5; };
  auto w = [](int k) { return 10 + (k + 5) % 5; };
  auto x = [](int k) { return 15 + (k + 5) % 5; };
  std::map<int, std::vector<int>> c;
  c[1] = {u(4), u(3), u(2), u(1), u(0)};
  for (int k = 0; k < 5; ++k) {
    c[2 + k] = {u(k), u(k + 1), v(k + 1), w(k), v(k)};
    c[7 + k] = {w(k), v(k + 1), w(k + 1), x(k + 1), x(k)};
  }
  c[12] = {x(0), x(1), x(2), x(3), x(4)};
  return PlanarTrivalentGraph::from_face_cycles(c);
}

void set_all_angles(PlanarTrivalentGraph& g, Angle a) {
  for (int e : g.live_edges()) g.set_angle(e, a);
}

namespace {

CatalogEntry prism_235() {
  CatalogEntry e{"prism-235", prism_graph(5), 2.63200,
                 "pentagonal prism; bottom (face 6) edges pi/2, top (face 7) edges pi/3, vertical edges 2pi/5"};
  for (int id : e.graph.live_edges()) {
    auto [f, g] = e.graph.edge_faces(id);
    if (f == 6 || g == 6) e.graph.set_angle(id, {1, 2});
    else if (f == 7 || g == 7) e.graph.set_angle(id, {1, 3});
    else e.graph.set_angle(id, {2, 5});
  }
  return e;
}

CatalogEntry builtin(const std::string& name) {
  if (name == "prism-235") return prism_235();
  if (name == "dodecahedron-right-angled") {
    CatalogEntry e{name, dodecahedron_graph(), 4.30621, "all dihedral angles pi/2"};
    set_all_angles(e.graph, {1, 2});
    return e;
  }
  if (name == "dodecahedron-pi3") {
    CatalogEntry e{name, dodecahedron_graph(), 20.5802, "all dihedral angles pi/3; all vertices ideal"};
    set_all_angles(e.graph, {1, 3});
    return e;
  }
  if (name == "pleated-prism-template")
    return {name, pleated_prism_graph(), std::nullopt, "combinatorics only; dihedral angles must be supplied"};
  const std::string reg = "tetrahedron-regular";
  if (name.rfind(reg, 0) == 0) {
    Angle a{1, 3};
    if (name.size() > reg.size()) {
      if (name[reg.size()] != ':') throw ValidationError("unknown catalog entry '" + name + "'");
      std::string spec = name.substr(reg.size() + 1);
      auto slash = spec.find('/');
      try {
        if (slash == std::string::npos) throw std::invalid_argument("no slash");
        a = {std::stol(spec.substr(0, slash)), std::stol(spec.substr(slash + 1))};
      } catch (const std::exception&) {
        throw ValidationError("tetrahedron-regular expects ':<p>/<q>' for the angle p*pi/q");
      }
    }
    if (a.q <= 0 || a.p <= 0 || a.p >= a.q) throw ValidationError("regular tetrahedron angle must lie in (0, pi)");
    CatalogEntry e{name, tetrahedron_graph(), std::nullopt, "regular tetrahedron, all angles p*pi/q"};
    set_all_angles(e.graph, a);
    return e;
  }
  throw ValidationError("unknown catalog entry '" + name + "'");
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"prism-235", "dodecahedron-right-angled", "dodecahedron-pi3", "tetrahedron-regular:1/3",
          "pleated-prism-template"};
}

CatalogEntry catalog_entry(const std::string& name) {
  if (const char* dir = std::getenv("HYPERVOL_CATALOG_DIR")) {
    std::filesystem::path p = std::filesystem::path(dir) / (name + ".json");
    if (std::filesystem::exists(p)) return load_polyhedron_file(p.string());
  }
  return builtin(name);
}

json to_json(const CatalogEntry& e) {
  const auto& g = e.graph;
  json j;
  j["name"] = e.name;
  if (e.expected_volume) j["expected_volume"] = *e.expected_volume;
  if (!e.notes.empty()) j["notes"] = e.notes;
  // Renumber live vertices and edges densely.
  std::map<int, int> vid, eid;
  for (int v : g.live_vertices()) vid[v] = static_cast<int>(vid.size());
  for (int x : g.live_edges()) eid[x] = static_cast<int>(eid.size());
  j["faces"] = json::array();
  for (int f : g.faces()) j["faces"].push_back({{"id", f}, {"label", std::to_string(f)}});
  j["vertices"] = json::array();
  for (auto [v, id] : vid) {
    json es = json::array();
    for (int x : g.vertex(v).edges) es.push_back(eid.at(x));
    j["vertices"].push_back({{"id", id}, {"edges", es}});
  }
  j["edges"] = json::array();
  for (auto [x, id] : eid) {
    auto [a, b] = g.edge_faces(x);
    json je = {{"id", id}, {"face_pair", {a, b}}};
    if (auto ang = g.angle(x)) je["angle"] = {{"p", ang->p}, {"q", ang->q}};
    j["edges"].push_back(je);
  }
  return j;
}

CatalogEntry entry_from_json(const json& j) {
  try {
    CatalogEntry e;
    e.name = j.value("name", std::string("unnamed"));
    if (j.contains("expected_volume")) e.expected_volume = j["expected_volume"].get<double>();
    e.notes = j.value("notes", std::string());
    std::set<int> face_ids;
    for (const auto& f : j.at("faces")) face_ids.insert(f.at("id").get<int>());
    const auto& je = j.at("edges");
    std::vector<FacePair> ef(je.size());
    std::vector<std::optional<Angle>> angles(je.size());
    for (const auto& x : je) {
      int id = x.at("id").get<int>();
      if (id < 0 || id >= static_cast<int>(je.size())) throw ValidationError("edge ids must be 0..E-1");
      auto fp = x.at("face_pair");
      int a = fp.at(0).get<int>(), b = fp.at(1).get<int>();
      if (!face_ids.count(a) || !face_ids.count(b))
        throw ValidationError("edge " + std::to_string(id) + " references an undeclared face");
      ef[id] = make_pair_key(a, b);
      if (x.contains("angle")) {
        Angle ang{x["angle"].at("p").get<long>(), x["angle"].at("q").get<long>()};
        if (ang.q <= 0 || ang.p <= 0 || ang.p >= ang.q)
          throw ValidationError("edge " + std::to_string(id) + ": angle p*pi/q must lie in (0, pi)");
        angles[id] = ang;
      }
    }
    const auto& jv = j.at("vertices");
    std::vector<std::vector<int>> ve(jv.size());
    for (const auto& v : jv) {
      int id = v.at("id").get<int>();
      if (id < 0 || id >= static_cast<int>(jv.size())) throw ValidationError("vertex ids must be 0..V-1");
      ve[id] = v.at("edges").get<std::vector<int>>();
    }
    e.graph = PlanarTrivalentGraph::from_rotation(ve, ef);
    for (size_t i = 0; i < angles.size(); ++i)
      if (angles[i]) e.graph.set_angle(static_cast<int>(i), *angles[i]);
    e.graph.validate();
    if (e.graph.faces() != face_ids) throw ValidationError("declared faces do not match the traced faces");
    return e;
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("malformed polyhedron file: ") + ex.what());
  }
}

CatalogEntry load_polyhedron_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ValidationError("'" + path + "' is not valid JSON: " + ex.what());
  }
  return entry_from_json(j);
}

bool same_polyhedron(const PlanarTrivalentGraph& a, const PlanarTrivalentGraph& b) {
  auto signature = [](const PlanarTrivalentGraph& g) {
    std::map<FacePair, std::optional<Angle>> edges;
    for (int e : g.live_edges()) {
      auto [f, h] = g.edge_faces(e);
      edges[make_pair_key(f, h)] = g.angle(e);
    }
    std::set<std::array<int, 3>> corners;
    for (int v : g.live_vertices()) {
      auto f = g.vertex(v).faces;
      std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
      corners.insert(f);
    }
    return std::make_pair(edges, corners);
  };
  return signature(a) == signature(b);
}

}  // namespace hypervol
