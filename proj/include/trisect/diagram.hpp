#pragma once

#include <array>
#include <optional>
#include <vector>

#include "trisect/common.hpp"
#include "trisect/surface.hpp"

namespace trisect {

struct TrisectionParams {
  int g = 0;
  std::array<int, 3> k{0, 0, 0};
  int p = 0;
  int b = 1;
  bool operator==(const TrisectionParams&) const = default;
};

// One arc endpoint as seen walking a boundary circle.
struct EndpointMark {
  FamilyLabel family;
  int index = 0;
  int end = 0;  // 0: walk start, 1: walk end
  bool operator==(const EndpointMark&) const = default;
};

struct BoundaryOrder {
  FaceId boundary_face = -1;
  std::vector<EndpointMark> order;  // cyclic, in boundary-orbit direction
  bool operator==(const BoundaryOrder&) const = default;
};

struct RelativeTrisectionDiagram {
  CombinatorialMap map;  // families alpha, beta, gamma live in the map
  TrisectionParams params;
};

struct ArcedTrisectionDiagram {
  RelativeTrisectionDiagram base;  // map also carries arc families a, b, c
  std::vector<BoundaryOrder> endpoint_order;
};

// Derives the endpoint order of all arc families from the map itself.
std::vector<BoundaryOrder> derive_endpoint_order(const CombinatorialMap& m);

// --- Validation -------------------------------------------------------------

Report validate_cut_system(const CombinatorialMap& m, FamilyLabel family, int p);

Report validate_relative_trisection(const RelativeTrisectionDiagram& d);

Report validate_arced(const ArcedTrisectionDiagram& d);

// --- Standard models --------------------------------------------------------

// The model page: canonical surface of genus p with b boundary circles,
// carrying the standard arc basis (family a) of n = 2p + b - 1 arcs that cut
// it into a disk.
CombinatorialMap standard_arc_basis(int p, int b);

// Draws a parallel copy of every arc of `src` into family `dst`. Each copy
// crosses its original exactly once near the far endpoint (positively) and
// inherits every other crossing of its original; the crossing rows against
// the families in `check_inherited` are verified to match the source's.
CombinatorialMap add_arc_translates(const CombinatorialMap& m, FamilyLabel src, FamilyLabel dst,
                                    const std::vector<FamilyLabel>& check_inherited = {});

}  // namespace trisect
