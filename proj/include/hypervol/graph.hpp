#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hypervol/tetra.hpp"

namespace hypervol {

// Dihedral angle p*pi/q, kept exact so colorings stay integral.
struct Angle {
  long p = 1;
  long q = 2;
  double radians() const;
  bool operator==(const Angle&) const = default;
};

using FacePair = std::pair<int, int>;  // ordered with first < second
FacePair make_pair_key(int f, int g);

// 1-skeleton of a simple polyhedron. Each live vertex stores its three
// edges in rotation order together with the face label of each corner:
// faces[i] is the face between edges[i] and edges[(i+1)%3]. Removed
// vertices and edges keep their slots so ids stay stable across moves.
class PlanarTrivalentGraph {
 public:
  struct Vertex {
    std::array<int, 3> edges{};
    std::array<int, 3> faces{};
    bool alive = true;
  };
  struct Edge {
    int v0 = -1, v1 = -1;
    bool alive = true;
  };

  // Build from face boundary cycles (vertex ids, all oriented the same way).
  static PlanarTrivalentGraph from_face_cycles(const std::map<int, std::vector<int>>& cycles);
  // Build from per-vertex rotation lists and per-edge face pairs.
  static PlanarTrivalentGraph from_rotation(const std::vector<std::vector<int>>& vertex_edges,
                                            const std::vector<FacePair>& edge_faces);

  int vertex_count() const;
  int edge_count() const;
  int face_count() const;
  std::vector<int> live_edges() const;
  std::vector<int> live_vertices() const;
  std::set<int> faces() const;

  const Vertex& vertex(int v) const { return vertices_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  int vertex_slots() const { return static_cast<int>(vertices_.size()); }
  int edge_slots() const { return static_cast<int>(edges_.size()); }

  // The two faces on either side of an edge.
  FacePair edge_faces(int e) const;
  // Third face at each endpoint of e.
  std::pair<int, int> end_faces(int e) const;
  int face_sides(int f) const;
  // Face adjacent to f across each of its edges.
  std::vector<int> face_neighbours(int f) const;
  // Edge between two faces, if any.
  std::optional<int> edge_between(int f, int g) const;
  std::vector<int> face_edges(int f) const;

  void set_angle(int e, Angle a) { angles_[e] = a; }
  std::optional<Angle> angle(int e) const;
  const std::map<int, Angle>& angles() const { return angles_; }
  bool has_all_angles() const;

  // Throws ValidationError naming the first violated condition.
  void validate() const;

  // Moves return a new graph; this one is untouched.
  PlanarTrivalentGraph apply_ih(int e) const;
  PlanarTrivalentGraph apply_cap(int f) const;
  // Legality without throwing; reason filled when illegal.
  bool ih_legal(int e, std::string* reason = nullptr) const;
  bool cap_legal(int f, std::string* reason = nullptr) const;

  std::string to_dot(const std::string& name = "G") const;

 private:
  int slot_in(int v, int e) const;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::map<int, Angle> angles_;
};

struct Move {
  enum class Kind { IH, Cap };
  Kind kind = Kind::IH;
  int id = -1;  // edge id for IH, face label for Cap
  bool operator==(const Move&) const = default;
};
std::string to_string(const Move& m);
Move parse_move(const std::string& s);  // "ih:<edge>" or "cap:<face>"

struct ReductionTrace {
  std::vector<Move> moves;
  PlanarTrivalentGraph terminal;
};

enum class Strategy { Default };

ReductionTrace reduce(const PlanarTrivalentGraph& g, Strategy s = Strategy::Default);
// Replay a user-supplied move script.
ReductionTrace replay(const PlanarTrivalentGraph& g, const std::vector<Move>& moves);

struct PairSlot {
  bool is_length = false;
  double angle = 0.0;       // radians, AngleEdge only
  Angle exact{};            // AngleEdge only
  FacePair variable{};      // LengthEdge key
};

struct PlannedTetrahedron {
  std::array<int, 4> faces{};     // Gram face order
  std::array<PairSlot, 6> slots{};  // in the a1..a6 slot order
  TruncationType type = TruncationType::Mild;
};

struct DecompositionPlan {
  std::vector<PlannedTetrahedron> tetrahedra;
  std::vector<FacePair> length_variables;  // sorted, distinct
  int variable_index(FacePair p) const;
  std::map<TruncationType, int> type_counts() const;
};

DecompositionPlan plan_from_trace(const PlanarTrivalentGraph& original, const ReductionTrace& trace);

// Shape of one planned tetrahedron for given perpendicular lengths.
TetrahedronShape instantiate(const PlannedTetrahedron& t, const DecompositionPlan& plan,
                             const std::vector<double>& lengths);

std::string trace_to_dot(const PlanarTrivalentGraph& g, const ReductionTrace& t);

}  // namespace hypervol
