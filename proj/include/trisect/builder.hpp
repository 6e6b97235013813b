#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trisect/surface.hpp"

namespace trisect {

// Mutable half-edge structure used to implement the rewrite operations.
// Twins are explicit while building; finalize() compacts to the paired
// layout and re-traces faces. Family walks are tracked through every edit.
// While building, free-loop members store a live half-edge in free_host
// whose face becomes the host at finalize.
class MapBuilder {
 public:
  MapBuilder() = default;
  explicit MapBuilder(const CombinatorialMap& m);

  int half_edge_slots() const { return static_cast<int>(next_.size()); }
  bool alive(HalfEdge h) const { return alive_[h] != 0; }
  HalfEdge twin(HalfEdge h) const { return twin_[h]; }
  HalfEdge next(HalfEdge h) const { return next_[h]; }
  HalfEdge prev(HalfEdge h) const { return prev_[h]; }
  VertexId vertex(HalfEdge h) const { return vertex_[h]; }
  VertexId head(HalfEdge h) const { return vertex_[twin_[h]]; }
  bool boundary_side(HalfEdge h) const { return boundary_side_[h] != 0; }
  bool boundary_edge_any(HalfEdge h) const {
    return boundary_side_[h] || boundary_side_[twin_[h]];
  }
  void set_boundary_side(HalfEdge h, bool b) { boundary_side_[h] = b ? 1 : 0; }
  int degree(VertexId v) const;
  std::vector<HalfEdge> spokes(VertexId v) const;

  // Walks the face orbit (left of h); true if g occurs in it.
  bool same_face_orbit(HalfEdge h, HalfEdge g) const;

  VertexId new_vertex();
  void bump_vertex_counter(int n) { vertex_counter_ = std::max(vertex_counter_, n); }

  struct Attach {
    VertexId v = -1;
    HalfEdge after = -1;  // insert into rotation after this spoke; -1: isolated vertex
  };
  // Returns (h_ab, h_ba). Attaching both ends to one isolated vertex makes a
  // loop with rotation (h_ab, h_ba).
  std::pair<HalfEdge, HalfEdge> add_edge(Attach a, Attach b);

  // Splits edge(h); h keeps the tail part. Returns (new vertex, piece leaving
  // the new vertex toward the old head). Walks are rerouted.
  std::pair<VertexId, HalfEdge> split_edge(HalfEdge h);

  void delete_edge(HalfEdge h);    // must not appear in any walk
  void smooth_vertex(VertexId v);  // 2-valent, distinct edges; walks rerouted
  void remove_member(MemberRef r, bool smooth_freed = true);

  std::vector<CurveFamily>& families() { return families_; }
  const std::vector<CurveFamily>& families() const { return families_; }
  CurveFamily& family(FamilyLabel l);
  int family_index(FamilyLabel l) const;
  int add_member(FamilyLabel l, Member member);

  // Basepoint face := face containing h at finalize.
  void set_basepoint_side(HalfEdge h) { basepoint_side_ = h; }

  // Raw access for whole-map surgery (gluing, compression).
  HalfEdge alloc_half();
  void set_raw(HalfEdge h, HalfEdge nx, HalfEdge pv, HalfEdge tw, VertexId v, bool bside);
  void set_twin(HalfEdge h, HalfEdge t) { twin_[h] = t; }
  void set_vertex(HalfEdge h, VertexId v) { vertex_[h] = v; }
  void splice_next(HalfEdge x, HalfEdge y) {
    next_[x] = y;
    prev_[y] = x;
  }
  // Installs `rot` as the full rotation cycle of vertex v.
  void set_cycle(const std::vector<HalfEdge>& rot, VertexId v);
  void rotation_remove(HalfEdge h);
  void kill_half(HalfEdge h) { alive_[h] = 0; }
  void kill_edge_keep_rotation(HalfEdge h) {
    alive_[h] = 0;
    alive_[twin_[h]] = 0;
  }

  CombinatorialMap finalize() const;

 private:
  std::vector<HalfEdge> next_, prev_, twin_;
  std::vector<VertexId> vertex_;
  std::vector<uint8_t> boundary_side_, alive_;
  int vertex_counter_ = 0;
  std::vector<CurveFamily> families_;
  HalfEdge basepoint_side_ = -1;

  void rotation_insert_after(HalfEdge spot, HalfEdge h);
  void replace_in_walks(HalfEdge h, const std::vector<HalfEdge>& repl);
};

// --- Drawing new curves and arcs -------------------------------------------

// A route describes a new walk in general position: an ordered list of edge
// crossings, optionally starting and ending on boundary edges (arcs). Each
// crossing names the half-edge whose left face the route occupies just
// before crossing it.
struct Route {
  bool closed = false;
  std::optional<HalfEdge> start;  // interior-side boundary half to split
  std::optional<HalfEdge> end;
  bool end_auto = false;  // land on the first boundary edge of the final face
  std::vector<HalfEdge> crossings;
};

// Draws the route, returning the walk of the new member.
std::vector<HalfEdge> draw_route(MapBuilder& b, const Route& route);

// Route of a parallel translate of `walk` on its left (side = +1) or right
// (side = -1). Arcs start and end on the adjacent boundary edges.
Route translate_route(const CombinatorialMap& m, const std::vector<HalfEdge>& walk, bool closed,
                      int side);

// --- Whole-map operations ---------------------------------------------------

// Glues two maps along boundary circles. `matching` pairs outward boundary
// halves of a and b; matched halves are traversed in opposite circle
// directions (tail of the a-half lands on the head of the b-half). Circles
// must be fully matched. basepoint_corner_b: optional spoke of b whose
// counterclockwise wedge face becomes the basepoint of the glued map.
CombinatorialMap glue_boundaries(const CombinatorialMap& a, const CombinatorialMap& b,
                                 const std::vector<std::pair<HalfEdge, HalfEdge>>& matching,
                                 std::optional<HalfEdge> basepoint_corner_b = std::nullopt);

// Orientation reversal: rotations inverted, walks kept.
CombinatorialMap mirror(const CombinatorialMap& m);

}  // namespace trisect
