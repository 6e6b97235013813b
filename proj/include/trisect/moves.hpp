#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "trisect/diagram.hpp"
#include "trisect/surface.hpp"

namespace trisect {

// A band from the mover to the slid-over curve: an attachment point on an
// edge of each walk (by walk position and side), and the edges the band's
// core crosses in between (possibly none when both lie on one face).
struct BandSpec {
  int mover_pos = 0;
  int mover_side = +1;  // +1 left of the walk direction, -1 right
  int over_pos = 0;
  int over_side = +1;
  std::vector<HalfEdge> crossings;
};

struct SlideMove {
  MemberRef mover;
  MemberRef over;
  BandSpec band;
};

struct SlideTrace {
  uint64_t initial_digest = 0;
  uint64_t final_digest = 0;
  std::vector<SlideMove> moves;
};

// Replaces the mover by its band sum with a parallel copy of `over`, then
// isotopes the mover to remove empty bigons against the other families and
// the carrier. Surface stats are preserved exactly.
CombinatorialMap slide_curve(const CombinatorialMap& m, const SlideMove& move);
CombinatorialMap slide_arc(const CombinatorialMap& m, const SlideMove& move);

// Removes empty bigons between the given member and anything else (other
// families or carrier; never across the boundary). Pure isotopy.
CombinatorialMap reduce_bigons(const CombinatorialMap& m, MemberRef ref);

struct SearchOptions {
  int max_band_crossings = 1;
  int max_expansions_per_budget = 64;
};

struct ReduceResult {
  CombinatorialMap map;
  SlideTrace trace;
};

// Best-first search over slides of the arc family over `slide_over` until
// the arcs are disjoint from `obstacle`. Deterministic; throws
// BudgetExhausted when no sequence of at most `budget` slides is found.
ReduceResult reduce_intersections(const CombinatorialMap& m, FamilyLabel arcs,
                                  FamilyLabel obstacle, FamilyLabel slide_over, int budget,
                                  const SearchOptions& opts = {});

// Replays a trace from the map it was recorded on, checking digests.
CombinatorialMap replay(const CombinatorialMap& initial, const SlideTrace& trace);

// Produces the b and c arc systems from the a system by translating and
// sliding: b := slides of a-copies over alpha until disjoint from beta,
// c := slides of b-copies over beta until disjoint from gamma.
struct DeriveResult {
  ArcedTrisectionDiagram diagram;
  SlideTrace trace_b, trace_c;
};
DeriveResult derive_arced_diagram(const RelativeTrisectionDiagram& d, int budget,
                                  const SearchOptions& opts = {});

}  // namespace trisect
