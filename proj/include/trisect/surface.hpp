#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trisect/common.hpp"

namespace trisect {

// Half-edges are 0..2E-1 with twin(h) = h^1. next() is the counterclockwise
// rotation at the origin vertex. Faces are orbits of h -> prev(twin(h)) and
// lie to the LEFT of their half-edges. Boundary components are marked face
// orbits; the half-edges on the outward side carry a boundary flag.
//
// Curves and arcs are walks: sequences of half-edges chained tip to tail.
// A closed curve that meets no other edge cannot be carried by half-edges,
// so it is stored as a free loop together with its host face.

using HalfEdge = int32_t;
using VertexId = int32_t;
using FaceId = int32_t;
using EdgeId = int32_t;  // edge id = h / 2

enum class FamilyLabel : uint8_t { alpha, beta, gamma, arc_a, arc_b, arc_c };

const char* label_name(FamilyLabel l);
std::optional<FamilyLabel> label_from_name(const std::string& s);
bool is_arc_label(FamilyLabel l);

struct Member {
  std::string name;
  std::vector<HalfEdge> walk;  // empty iff free loop
  FaceId free_host = -1;
  bool free_loop() const { return free_host >= 0; }
};

struct CurveFamily {
  FamilyLabel label = FamilyLabel::alpha;
  std::vector<Member> members;
};

struct SurfaceStats {
  int components = 0;
  std::vector<int> genus_per_component;
  std::vector<int> boundary_per_component;
  long long euler = 0;

  int genus() const { return components == 1 ? genus_per_component[0] : -1; }
  int boundary() const {
    int b = 0;
    for (int x : boundary_per_component) b += x;
    return b;
  }
  bool operator==(const SurfaceStats&) const = default;
  std::string str() const;
};

struct MemberRef {
  FamilyLabel family;
  int index = 0;
  bool operator==(const MemberRef&) const = default;
};

class CombinatorialMap {
 public:
  CombinatorialMap() = default;

  // `next` and `vertex` are per half-edge; twins are implicit (h^1).
  // `boundary_side[h]` marks the side of h that faces a boundary component.
  static CombinatorialMap from_raw(std::vector<HalfEdge> next, std::vector<VertexId> vertex,
                                   std::vector<uint8_t> boundary_side,
                                   std::vector<CurveFamily> families,
                                   std::optional<FaceId> basepoint = std::nullopt);

  int half_edges() const { return static_cast<int>(next_.size()); }
  int edges() const { return half_edges() / 2; }
  int vertices() const { return vertex_count_; }
  int faces() const { return static_cast<int>(face_rep_.size()); }
  int interior_faces() const { return interior_face_count_; }

  HalfEdge twin(HalfEdge h) const { return h ^ 1; }
  HalfEdge next(HalfEdge h) const { return next_[h]; }
  HalfEdge prev(HalfEdge h) const { return prev_[h]; }
  VertexId vertex(HalfEdge h) const { return vertex_[h]; }
  VertexId head(HalfEdge h) const { return vertex_[twin(h)]; }
  FaceId face(HalfEdge h) const { return face_of_[h]; }
  // Next half-edge along the face boundary (face kept on the left).
  HalfEdge face_next(HalfEdge h) const { return prev_[twin(h)]; }

  bool boundary_side(HalfEdge h) const { return boundary_side_[h] != 0; }
  bool boundary_edge(HalfEdge h) const { return boundary_side_[h] || boundary_side_[h ^ 1]; }
  bool boundary_face(FaceId f) const { return face_boundary_[f] != 0; }
  bool boundary_vertex(VertexId v) const;

  HalfEdge face_rep(FaceId f) const { return face_rep_[f]; }
  std::vector<HalfEdge> face_halves(FaceId f) const;
  int face_degree(FaceId f) const { return face_degree_[f]; }

  HalfEdge vertex_rep(VertexId v) const { return vertex_rep_[v]; }
  int degree(VertexId v) const;
  std::vector<HalfEdge> spokes(VertexId v) const;  // rotation order

  // The corner (wedge) swept counterclockwise from spoke g to next(g)
  // belongs to exactly one face.
  FaceId corner_face(HalfEdge g) const { return face_of_[twin(next_[g])]; }

  const std::vector<CurveFamily>& families() const { return families_; }
  const CurveFamily* find_family(FamilyLabel l) const;
  const CurveFamily& family(FamilyLabel l) const;
  const Member& member(MemberRef r) const { return family(r.family).members[r.index]; }
  bool has_family(FamilyLabel l) const { return find_family(l) != nullptr; }

  std::optional<FaceId> basepoint() const { return basepoint_; }
  CombinatorialMap with_basepoint(FaceId f) const;
  CombinatorialMap with_families(std::vector<CurveFamily> fams) const;

  // (family, member) pairs using each edge, in family order.
  std::vector<std::vector<MemberRef>> edge_users() const;

  bool walk_is_closed(const std::vector<HalfEdge>& walk) const;

 private:
  std::vector<HalfEdge> next_, prev_;
  std::vector<VertexId> vertex_;
  std::vector<uint8_t> boundary_side_;
  std::vector<FaceId> face_of_;
  std::vector<HalfEdge> face_rep_;
  std::vector<int> face_degree_;
  std::vector<uint8_t> face_boundary_;
  std::vector<HalfEdge> vertex_rep_;
  int vertex_count_ = 0;
  int interior_face_count_ = 0;

  std::vector<CurveFamily> families_;
  std::optional<FaceId> basepoint_;

  void build_caches();
};

// A strand of a walk through a vertex: u points back along the arrival edge,
// w is the departure spoke. Both are half-edges at the same vertex.
struct Strand {
  HalfEdge u = -1;
  HalfEdge w = -1;
  VertexId vertex = -1;
  int walk_pos = -1;  // index into the walk of the departing half-edge
};

std::vector<Strand> member_strands(const CombinatorialMap& m, const Member& member);

// True if g lies strictly inside the counterclockwise interval (from, to)
// of the rotation at their common vertex.
bool ccw_between(const CombinatorialMap& m, HalfEdge from, HalfEdge to, HalfEdge g);

// +1 if strand b crosses strand a left to right with respect to a's
// direction, -1 for right to left, 0 if they do not interleave.
int crossing_sign(const CombinatorialMap& m, const Strand& a, const Strand& b);

struct IntersectionData {
  std::vector<std::vector<long long>> geometric;
  std::vector<std::vector<long long>> algebraic;
};

IntersectionData intersection_numbers(const CombinatorialMap& m, FamilyLabel a, FamilyLabel b);

// --- Spec operations -------------------------------------------------------

SurfaceStats validate_map(const CombinatorialMap& m);

CombinatorialMap restrict_to(const CombinatorialMap& m, const std::vector<FamilyLabel>& keep);

SurfaceStats cut_along(const CombinatorialMap& m, FamilyLabel family);

CombinatorialMap surger(const CombinatorialMap& m, FamilyLabel family);
// Variant that first forgets every family not in `keep` (surgered family
// implied), then compresses.
CombinatorialMap surger_keeping(const CombinatorialMap& m, FamilyLabel family,
                                const std::vector<FamilyLabel>& keep);

// --- Cut bookkeeping (shared by cut_along, diagram checks and floer) -------

struct CutStats {
  SurfaceStats stats;
  int num_components = 0;
  std::vector<int> component_of_face;      // -1 for boundary faces
  std::vector<int> component_genus, component_boundary;
  std::vector<long long> component_euler;
};

// Cut along an explicit set of members (walks and free loops allowed; arcs
// allowed). Members must be pairwise disjoint embedded walks.
CutStats cut_stats(const CombinatorialMap& m, const std::vector<MemberRef>& locus);

// --- Canonical models ------------------------------------------------------

// Normal form for a bare surface: closed surfaces use the one-vertex polygon
// model, surfaces with boundary use explicit boundary polygons joined by
// carrier edges. All faces are disks.
CombinatorialMap canonical_surface(int genus, int boundary);

// --- Canonical form and digests --------------------------------------------

// Deterministic 64-bit digest of the map up to relabeling of half-edges,
// vertices, faces, and member order within a family.
uint64_t map_digest(const CombinatorialMap& m);

std::string map_brief(const CombinatorialMap& m);

}  // namespace trisect
