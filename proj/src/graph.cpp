#include "hypervol/graph.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypervol/error.hpp"

namespace hypervol {

double Angle::radians() const { return std::numbers::pi * static_cast<double>(p) / static_cast<double>(q); }

FacePair make_pair_key(int f, int g) { return f < g ? FacePair{f, g} : FacePair{g, f}; }

namespace {

int other_end(const PlanarTrivalentGraph::Edge& e, int v) { return e.v0 == v ? e.v1 : e.v0; }

}  // namespace

PlanarTrivalentGraph PlanarTrivalentGraph::from_face_cycles(const std::map<int, std::vector<int>>& cycles) {
  PlanarTrivalentGraph g;
  std::map<std::pair<int, int>, int> edge_id;
  int max_vertex = -1;
  auto get_edge = [&](int u, int v) {
    auto key = std::minmax(u, v);
    auto it = edge_id.find(key);
    if (it != edge_id.end()) return it->second;
    int id = static_cast<int>(g.edges_.size());
    g.edges_.push_back({key.first, key.second, true});
    edge_id[key] = id;
    return id;
  };
  struct Corner {
    int first, second, face;
  };
  std::map<int, std::vector<Corner>> corners;
  for (const auto& [face, cyc] : cycles) {
    int n = static_cast<int>(cyc.size());
    if (n < 3) throw ValidationError("face " + std::to_string(face) + " has fewer than 3 sides");
    for (int i = 0; i < n; ++i) {
      int u = cyc[(i + n - 1) % n], v = cyc[i], w = cyc[(i + 1) % n];
      max_vertex = std::max(max_vertex, v);
      corners[v].push_back({get_edge(u, v), get_edge(v, w), face});
    }
  }
  g.vertices_.assign(max_vertex + 1, Vertex{{-1, -1, -1}, {-1, -1, -1}, false});
  for (auto& [v, cs] : corners) {
    if (cs.size() != 3) throw ValidationError("vertex " + std::to_string(v) + " is not trivalent");
    Vertex vx;
    vx.edges[0] = cs[0].first;
    vx.faces[0] = cs[0].face;
    vx.edges[1] = cs[0].second;
    for (int k = 1; k < 3; ++k) {
      auto it = std::find_if(cs.begin(), cs.end(), [&](const Corner& c) { return c.first == vx.edges[k]; });
      if (it == cs.end()) throw ValidationError("inconsistent face orientation at vertex " + std::to_string(v));
      vx.faces[k] = it->face;
      if (k == 1) vx.edges[2] = it->second;
      else if (it->second != vx.edges[0])
        throw ValidationError("inconsistent face orientation at vertex " + std::to_string(v));
    }
    g.vertices_[v] = vx;
  }
  for (size_t v = 0; v < g.vertices_.size(); ++v)
    if (!g.vertices_[v].alive) throw ValidationError("vertex ids must be contiguous from 0");
  return g;
}

PlanarTrivalentGraph PlanarTrivalentGraph::from_rotation(const std::vector<std::vector<int>>& vertex_edges,
                                                         const std::vector<FacePair>& edge_faces) {
  PlanarTrivalentGraph g;
  g.edges_.assign(edge_faces.size(), Edge{-1, -1, true});
  for (size_t v = 0; v < vertex_edges.size(); ++v) {
    const auto& es = vertex_edges[v];
    if (es.size() != 3) throw ValidationError("vertex " + std::to_string(v) + " is not trivalent");
    Vertex vx;
    for (int i = 0; i < 3; ++i) {
      int e = es[i];
      if (e < 0 || e >= static_cast<int>(edge_faces.size()))
        throw ValidationError("vertex " + std::to_string(v) + " references unknown edge " + std::to_string(e));
      vx.edges[i] = e;
      Edge& ed = g.edges_[e];
      if (ed.v0 < 0) ed.v0 = static_cast<int>(v);
      else if (ed.v1 < 0) ed.v1 = static_cast<int>(v);
      else throw ValidationError("edge " + std::to_string(e) + " has more than two endpoints");
    }
    for (int i = 0; i < 3; ++i) {
      FacePair a = edge_faces[es[i]], b = edge_faces[es[(i + 1) % 3]];
      int common = -1;
      for (int f : {a.first, a.second})
        if (f == b.first || f == b.second) common = f;
      if (common < 0)
        throw ValidationError("edges " + std::to_string(es[i]) + " and " + std::to_string(es[(i + 1) % 3]) +
                              " at vertex " + std::to_string(v) + " share no face");
      vx.faces[i] = common;
    }
    g.vertices_.push_back(vx);
  }
  for (size_t e = 0; e < g.edges_.size(); ++e)
    if (g.edges_[e].v1 < 0) throw ValidationError("edge " + std::to_string(e) + " does not have two endpoints");
  return g;
}

int PlanarTrivalentGraph::vertex_count() const {
  return static_cast<int>(std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.alive; }));
}
int PlanarTrivalentGraph::edge_count() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.alive; }));
}
int PlanarTrivalentGraph::face_count() const { return static_cast<int>(faces().size()); }

std::vector<int> PlanarTrivalentGraph::live_edges() const {
  std::vector<int> out;
  for (size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].alive) out.push_back(static_cast<int>(e));
  return out;
}

std::vector<int> PlanarTrivalentGraph::live_vertices() const {
  std::vector<int> out;
  for (size_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].alive) out.push_back(static_cast<int>(v));
  return out;
}

std::set<int> PlanarTrivalentGraph::faces() const {
  std::set<int> out;
  for (const auto& v : vertices_)
    if (v.alive) out.insert(v.faces.begin(), v.faces.end());
  return out;
}

int PlanarTrivalentGraph::slot_in(int v, int e) const {
  const auto& vx = vertices_.at(v);
  for (int i = 0; i < 3; ++i)
    if (vx.edges[i] == e) return i;
  throw ValidationError("edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(v));
}

FacePair PlanarTrivalentGraph::edge_faces(int e) const {
  const Edge& ed = edges_.at(e);
  int i = slot_in(ed.v0, e);
  const auto& vx = vertices_[ed.v0];
  return {vx.faces[i], vx.faces[(i + 2) % 3]};
}

std::pair<int, int> PlanarTrivalentGraph::end_faces(int e) const {
  const Edge& ed = edges_.at(e);
  int i = slot_in(ed.v0, e), j = slot_in(ed.v1, e);
  return {vertices_[ed.v0].faces[(i + 1) % 3], vertices_[ed.v1].faces[(j + 1) % 3]};
}

int PlanarTrivalentGraph::face_sides(int f) const {
  int n = 0;
  for (const auto& v : vertices_)
    if (v.alive) n += static_cast<int>(std::count(v.faces.begin(), v.faces.end(), f));
  return n;
}

std::vector<int> PlanarTrivalentGraph::face_edges(int f) const {
  std::vector<int> out;
  for (int e : live_edges()) {
    auto [a, b] = edge_faces(e);
    if (a == f || b == f) out.push_back(e);
  }
  return out;
}

std::vector<int> PlanarTrivalentGraph::face_neighbours(int f) const {
  std::vector<int> out;
  for (int e : face_edges(f)) {
    auto [a, b] = edge_faces(e);
    out.push_back(a == f ? b : a);
  }
  return out;
}

std::optional<int> PlanarTrivalentGraph::edge_between(int f, int g) const {
  for (int e : live_edges()) {
    auto [a, b] = edge_faces(e);
    if ((a == f && b == g) || (a == g && b == f)) return e;
  }
  return std::nullopt;
}

std::optional<Angle> PlanarTrivalentGraph::angle(int e) const {
  auto it = angles_.find(e);
  if (it == angles_.end()) return std::nullopt;
  return it->second;
}

bool PlanarTrivalentGraph::has_all_angles() const {
  for (int e : live_edges())
    if (!angles_.count(e)) return false;
  return true;
}

void PlanarTrivalentGraph::validate() const {
  auto fail = [](const std::string& m) { throw ValidationError(m); };
  for (size_t v = 0; v < vertices_.size(); ++v) {
    const Vertex& vx = vertices_[v];
    if (!vx.alive) continue;
    for (int i = 0; i < 3; ++i) {
      int e = vx.edges[i];
      if (e < 0 || e >= static_cast<int>(edges_.size()) || !edges_[e].alive)
        fail("not trivalent: vertex " + std::to_string(v) + " has a missing edge");
      const Edge& ed = edges_[e];
      if (ed.v0 != static_cast<int>(v) && ed.v1 != static_cast<int>(v))
        fail("edge " + std::to_string(e) + " does not list vertex " + std::to_string(v) + " as an endpoint");
    }
    if (vx.edges[0] == vx.edges[1] || vx.edges[1] == vx.edges[2] || vx.edges[0] == vx.edges[2])
      fail("not trivalent: vertex " + std::to_string(v) + " repeats an edge");
  }
  for (int e : live_edges()) {
    const Edge& ed = edges_[e];
    if (ed.v0 == ed.v1) fail("edge " + std::to_string(e) + " is a loop");
    for (int v : {ed.v0, ed.v1})
      if (v < 0 || v >= static_cast<int>(vertices_.size()) || !vertices_[v].alive)
        fail("edge " + std::to_string(e) + " has a dead endpoint");
    int i = slot_in(ed.v0, e), j = slot_in(ed.v1, e);
    const Vertex &a = vertices_[ed.v0], &b = vertices_[ed.v1];
    // Face after e at one end must be the face before e at the other.
    if (a.faces[i] != b.faces[(j + 2) % 3] || a.faces[(i + 2) % 3] != b.faces[j])
      fail("face labels around edge " + std::to_string(e) + " are inconsistent with the rotation system");
    if (a.faces[i] == a.faces[(i + 2) % 3]) fail("edge " + std::to_string(e) + " has the same face on both sides");
  }
  // Trace faces through the rotation system: each label must be one orbit.
  std::map<int, int> orbits;
  std::set<std::pair<int, int>> seen;
  for (int v : live_vertices())
    for (int i = 0; i < 3; ++i) {
      if (seen.count({v, i})) continue;
      int label = vertices_[v].faces[i];
      ++orbits[label];
      int cv = v, ci = i;
      while (!seen.count({cv, ci})) {
        seen.insert({cv, ci});
        if (vertices_[cv].faces[ci] != label) fail("face " + std::to_string(label) + " does not trace a single cycle");
        int out = vertices_[cv].edges[(ci + 1) % 3];
        int w = other_end(edges_[out], cv);
        ci = slot_in(w, out);
        cv = w;
      }
    }
  for (auto [label, n] : orbits)
    if (n != 1) fail("face label " + std::to_string(label) + " appears on " + std::to_string(n) + " separate cycles");
  int V = vertex_count(), E = edge_count(), F = face_count();
  if (V - E + F != 2)
    fail("Euler relation fails: V - E + F = " + std::to_string(V - E + F));
  for (int f : faces())
    if (face_sides(f) < 3) fail("face " + std::to_string(f) + " has fewer than 3 sides");
  std::set<FacePair> pairs;
  for (int e : live_edges()) {
    auto [a, b] = edge_faces(e);
    if (!pairs.insert(make_pair_key(a, b)).second)
      fail("faces " + std::to_string(a) + " and " + std::to_string(b) + " share more than one edge");
  }
}

bool PlanarTrivalentGraph::ih_legal(int e, std::string* reason) const {
  auto no = [&](const std::string& m) {
    if (reason) *reason = m;
    return false;
  };
  if (e < 0 || e >= static_cast<int>(edges_.size()) || !edges_[e].alive) return no("no such edge");
  if (face_count() <= 4) return no("graph is already a tetrahedron");
  auto [f1, f2] = edge_faces(e);
  if (face_sides(f1) < 4) return no("face " + std::to_string(f1) + " would collapse");
  if (face_sides(f2) < 4) return no("face " + std::to_string(f2) + " would collapse");
  auto [x, y] = end_faces(e);
  if (x == y) return no("end faces coincide");
  if (edge_between(x, y)) return no("end faces " + std::to_string(x) + " and " + std::to_string(y) + " are already adjacent");
  return true;
}

bool PlanarTrivalentGraph::cap_legal(int f, std::string* reason) const {
  auto no = [&](const std::string& m) {
    if (reason) *reason = m;
    return false;
  };
  if (!faces().count(f)) return no("no such face");
  if (face_sides(f) != 3) return no("face " + std::to_string(f) + " is not a triangle");
  if (face_count() <= 4) return no("graph is already a tetrahedron");
  auto nb = face_neighbours(f);
  std::set<int> distinct(nb.begin(), nb.end());
  if (distinct.size() != 3) return no("neighbours of face " + std::to_string(f) + " are not distinct");
  for (int g : nb)
    if (face_sides(g) < 4) return no("neighbour face " + std::to_string(g) + " would collapse");
  return true;
}

PlanarTrivalentGraph PlanarTrivalentGraph::apply_ih(int e) const {
  std::string why;
  if (!ih_legal(e, &why)) throw ValidationError("I-H move on edge " + std::to_string(e) + " illegal: " + why);
  PlanarTrivalentGraph g = *this;
  int u = edges_[e].v0, v = edges_[e].v1;
  int i = slot_in(u, e), j = slot_in(v, e);
  const Vertex &U = vertices_[u], &W = vertices_[v];
  int a = U.edges[(i + 1) % 3], b = U.edges[(i + 2) % 3];
  int f1 = U.faces[i], x = U.faces[(i + 1) % 3], f2 = U.faces[(i + 2) % 3];
  int c = W.edges[(j + 1) % 3], d = W.edges[(j + 2) % 3];
  int y = W.faces[(j + 1) % 3];
  g.vertices_[u] = Vertex{{a, e, d}, {x, y, f1}, true};
  g.vertices_[v] = Vertex{{b, c, e}, {f2, y, x}, true};
  auto reattach = [&](int edge, int from, int to) {
    Edge& ed = g.edges_[edge];
    if (ed.v0 == from) ed.v0 = to;
    else ed.v1 = to;
  };
  reattach(d, v, u);
  reattach(b, u, v);
  return g;
}

PlanarTrivalentGraph PlanarTrivalentGraph::apply_cap(int f) const {
  std::string why;
  if (!cap_legal(f, &why)) throw ValidationError("capping face " + std::to_string(f) + " illegal: " + why);
  PlanarTrivalentGraph g = *this;
  // Corners of f in trace order t0 -> t1 -> t2.
  int t[3] = {-1, -1, -1}, out[3], ext[3], after[3];
  for (int v : live_vertices()) {
    const auto& fs = vertices_[v].faces;
    if (std::find(fs.begin(), fs.end(), f) != fs.end()) {
      t[0] = v;
      break;
    }
  }
  for (int k = 0; k < 3; ++k) {
    const Vertex& vx = vertices_[t[k]];
    int i = 0;
    while (vx.faces[i] != f) ++i;
    out[k] = vx.edges[(i + 1) % 3];
    ext[k] = vx.edges[(i + 2) % 3];
    after[k] = vx.faces[(i + 1) % 3];  // across out[k]
    if (k < 2) t[k + 1] = other_end(edges_[out[k]], t[k]);
  }
  g.vertices_[t[0]] = Vertex{{ext[2], ext[1], ext[0]}, {after[1], after[0], after[2]}, true};
  g.vertices_[t[1]].alive = false;
  g.vertices_[t[2]].alive = false;
  for (int k = 0; k < 3; ++k) g.edges_[out[k]].alive = false;
  for (int k = 1; k < 3; ++k) {
    Edge& ed = g.edges_[ext[k]];
    if (ed.v0 == t[k]) ed.v0 = t[0];
    else ed.v1 = t[0];
  }
  return g;
}

std::string PlanarTrivalentGraph::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v : live_vertices()) {
    const auto& f = vertices_[v].faces;
    os << "  v" << v << " [label=\"" << v << "\\n(" << f[0] << "," << f[1] << "," << f[2] << ")\"];\n";
  }
  for (int e : live_edges()) {
    auto [a, b] = edge_faces(e);
    os << "  v" << edges_[e].v0 << " -- v" << edges_[e].v1 << " [label=\"e" << e << " " << a << "|" << b;
    if (auto ang = angle(e)) os << " " << ang->p << "pi/" << ang->q;
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_string(const Move& m) {
  return (m.kind == Move::Kind::IH ? "ih:" : "cap:") + std::to_string(m.id);
}

Move parse_move(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ValidationError("bad move '" + s + "': expected ih:<edge> or cap:<face>");
  std::string kind = s.substr(0, colon);
  int id = 0;
  try {
    id = std::stoi(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw ValidationError("bad move '" + s + "': id is not an integer");
  }
  if (kind == "ih") return {Move::Kind::IH, id};
  if (kind == "cap") return {Move::Kind::Cap, id};
  throw ValidationError("bad move '" + s + "': unknown kind");
}

namespace {

// Whether the tetrahedron detached by a move has a supported truncation pattern.
bool move_supported(const PlanarTrivalentGraph& original, const PlanarTrivalentGraph& g, const Move& m) {
  std::array<int, 4> q{};
  if (m.kind == Move::Kind::IH) {
    auto [a, b] = g.edge_faces(m.id);
    auto [x, y] = g.end_faces(m.id);
    q = {a, b, x, y};
  } else {
    auto nb = g.face_neighbours(m.id);
    q = {m.id, nb[0], nb[1], nb[2]};
  }
  unsigned mask = 0;
  for (int k = 0; k < 6; ++k) {
    auto [i, j] = kFacePairs[k];
    if (!original.edge_between(q[i], q[j])) mask |= 1u << k;
  }
  try {
    classify_mask(mask);
  } catch (const UnsupportedError&) {
    return false;
  }
  return true;
}

std::vector<Move> candidate_moves(const PlanarTrivalentGraph& g) {
  for (int f : g.faces())
    if (g.cap_legal(f)) return {Move{Move::Kind::Cap, f}};
  std::vector<Move> triangle_making, other;
  for (int e : g.live_edges()) {
    if (!g.ih_legal(e)) continue;
    auto [f1, f2] = g.edge_faces(e);
    (g.face_sides(f1) == 4 || g.face_sides(f2) == 4 ? triangle_making : other).push_back(Move{Move::Kind::IH, e});
  }
  return triangle_making.empty() ? other : triangle_making;
}

constexpr long kSearchBudget = 200000;

}  // namespace

ReductionTrace reduce(const PlanarTrivalentGraph& g0, Strategy) {
  g0.validate();
  if (g0.face_count() < 4) throw ValidationError("reduce: fewer than 4 faces");
  // Greedy choice with backtracking: caps first, then IH moves that create a
  // triangle, lowest id first. Moves detaching an unsupported tetrahedron are
  // skipped.
  long nodes = 0;
  std::vector<Move> moves;
  std::optional<ReductionTrace> found;
  std::string last_error = "no legal move";
  std::function<bool(const PlanarTrivalentGraph&)> search = [&](const PlanarTrivalentGraph& g) {
    if (++nodes > kSearchBudget) return true;
    if (g.face_count() == 4) {
      ReductionTrace tr{moves, g};
      try {
        plan_from_trace(g0, tr);
      } catch (const Error& e) {
        last_error = e.what();
        return false;
      }
      found = std::move(tr);
      return true;
    }
    for (const Move& m : candidate_moves(g)) {
      if (!move_supported(g0, g, m)) continue;
      moves.push_back(m);
      bool done = search(m.kind == Move::Kind::Cap ? g.apply_cap(m.id) : g.apply_ih(m.id));
      moves.pop_back();
      if (done) return true;
    }
    return false;
  };
  search(g0);
  if (!found)
    throw ValidationError("reduction stuck: no trace with supported tetrahedra (" + last_error + ")");
  return *found;
}

ReductionTrace replay(const PlanarTrivalentGraph& g0, const std::vector<Move>& moves) {
  g0.validate();
  ReductionTrace tr;
  PlanarTrivalentGraph g = g0;
  for (const Move& m : moves) {
    g = m.kind == Move::Kind::Cap ? g.apply_cap(m.id) : g.apply_ih(m.id);
    tr.moves.push_back(m);
  }
  if (g.face_count() != 4)
    throw ValidationError("move script ends with " + std::to_string(g.face_count()) + " faces, not 4");
  tr.terminal = g;
  return tr;
}

int DecompositionPlan::variable_index(FacePair p) const {
  auto it = std::lower_bound(length_variables.begin(), length_variables.end(), p);
  if (it == length_variables.end() || *it != p) return -1;
  return static_cast<int>(it - length_variables.begin());
}

std::map<TruncationType, int> DecompositionPlan::type_counts() const {
  std::map<TruncationType, int> out;
  for (const auto& t : tetrahedra) ++out[t.type];
  return out;
}

DecompositionPlan plan_from_trace(const PlanarTrivalentGraph& original, const ReductionTrace& trace) {
  std::vector<std::array<int, 4>> quads;
  PlanarTrivalentGraph g = original;
  for (const Move& m : trace.moves) {
    if (m.kind == Move::Kind::IH) {
      auto [f1, f2] = g.edge_faces(m.id);
      auto [x, y] = g.end_faces(m.id);
      quads.push_back({f1, f2, x, y});
      g = g.apply_ih(m.id);
    } else {
      auto nb = g.face_neighbours(m.id);
      std::sort(nb.begin(), nb.end());
      quads.push_back({m.id, nb[0], nb[1], nb[2]});
      g = g.apply_cap(m.id);
    }
  }
  auto fs = g.faces();
  if (fs.size() != 4) throw ValidationError("trace does not end at a tetrahedron");
  std::array<int, 4> last{};
  std::copy(fs.begin(), fs.end(), last.begin());
  quads.push_back(last);

  std::map<FacePair, std::optional<int>> adjacency;
  auto original_edge = [&](int f, int h) {
    FacePair key = make_pair_key(f, h);
    auto it = adjacency.find(key);
    if (it == adjacency.end()) it = adjacency.emplace(key, original.edge_between(f, h)).first;
    return it->second;
  };

  DecompositionPlan plan;
  std::set<FacePair> vars;
  for (const auto& q : quads) {
    std::set<int> distinct(q.begin(), q.end());
    if (distinct.size() != 4) {
      std::ostringstream os;
      os << "degenerate move: quadruple {" << q[0] << "," << q[1] << "," << q[2] << "," << q[3]
         << "} repeats a face";
      throw ValidationError(os.str());
    }
    PlannedTetrahedron t;
    t.faces = q;
    unsigned mask = 0;
    for (int k = 0; k < 6; ++k) {
      auto [i, j] = kFacePairs[k];
      PairSlot s;
      if (auto e = original_edge(q[i], q[j])) {
        auto a = original.angle(*e);
        s.is_length = false;
        if (a) {
          s.exact = *a;
          s.angle = a->radians();
        }
      } else {
        s.is_length = true;
        s.variable = make_pair_key(q[i], q[j]);
        vars.insert(s.variable);
        mask |= 1u << k;
      }
      t.slots[k] = s;
    }
    try {
      t.type = classify_mask(mask).type;
    } catch (const UnsupportedError& err) {
      std::ostringstream os;
      os << err.what() << " in tetrahedron {" << q[0] << "," << q[1] << "," << q[2] << "," << q[3] << "}";
      throw UnsupportedError(os.str());
    }
    plan.tetrahedra.push_back(t);
  }
  plan.length_variables.assign(vars.begin(), vars.end());
  return plan;
}

TetrahedronShape instantiate(const PlannedTetrahedron& t, const DecompositionPlan& plan,
                             const std::vector<double>& lengths) {
  TetrahedronShape s;
  for (int k = 0; k < 6; ++k) {
    const PairSlot& p = t.slots[k];
    if (p.is_length) {
      int idx = plan.variable_index(p.variable);
      s.params[k] = EdgeParameter::length(lengths.at(idx));
    } else {
      s.params[k] = EdgeParameter::angle(p.angle);
    }
  }
  return s;
}

std::string trace_to_dot(const PlanarTrivalentGraph& g0, const ReductionTrace& t) {
  std::ostringstream os;
  PlanarTrivalentGraph g = g0;
  os << "// initial\n" << g.to_dot("step0");
  int n = 0;
  for (const Move& m : t.moves) {
    g = m.kind == Move::Kind::Cap ? g.apply_cap(m.id) : g.apply_ih(m.id);
    os << "// " << to_string(m) << "\n" << g.to_dot("step" + std::to_string(++n));
  }
  return os.str();
}

}  // namespace hypervol
