#include "trisect/surface.hpp"

#include <set>

#include "doctest.h"
#include "trisect/builder.hpp"

using namespace trisect;

namespace {

// Torus with one alpha and one beta loop crossing once: V=1, E=2, F=1.
CombinatorialMap torus_ab() {
  // Spokes at the single vertex, counterclockwise: a+ b+ a- b-.
  // Half-edges: a = (0,1), b = (2,3).
  std::vector<HalfEdge> nx(4);
  std::vector<VertexId> vx(4, 0);
  std::vector<uint8_t> bs(4, 0);
  // rotation cycle 0 -> 2 -> 1 -> 3 -> 0
  nx[0] = 2;
  nx[2] = 1;
  nx[1] = 3;
  nx[3] = 0;
  CurveFamily fa{FamilyLabel::alpha, {Member{"alpha1", {0}, -1}}};
  CurveFamily fb{FamilyLabel::beta, {Member{"beta1", {2}, -1}}};
  return CombinatorialMap::from_raw(nx, vx, bs, {fa, fb});
}

}  // namespace

TEST_CASE("face orbit convention: quadrant crossing") {
  // Two curves crossing once on the torus: one face, four corners.
  auto m = torus_ab();
  CHECK(m.faces() == 1);
  CHECK(m.face_degree(0) == 4);
  // corner_face is total on all wedges.
  for (HalfEdge g = 0; g < 4; g++) CHECK(m.corner_face(g) == 0);
}

TEST_CASE("validate torus") {
  auto m = torus_ab();
  auto st = validate_map(m);
  CHECK(st.components == 1);
  CHECK(st.genus_per_component[0] == 1);
  CHECK(st.boundary_per_component[0] == 0);
  CHECK(st.euler == 0);
}

TEST_CASE("canonical closed surfaces") {
  for (int g = 0; g <= 6; g++) {
    auto m = canonical_surface(g, 0);
    auto st = validate_map(m);
    CHECK(st.components == 1);
    CHECK(st.genus_per_component[0] == g);
    CHECK(st.boundary_per_component[0] == 0);
  }
}

TEST_CASE("canonical bounded surfaces") {
  for (int g = 0; g <= 4; g++) {
    for (int b = 1; b <= 4; b++) {
      auto m = canonical_surface(g, b);
      auto st = validate_map(m);
      INFO("g=", g, " b=", b, " got ", st.str());
      CHECK(st.components == 1);
      CHECK(st.genus_per_component[0] == g);
      CHECK(st.boundary_per_component[0] == b);
      CHECK(st.euler == 2 - 2 * g - b);
    }
  }
}

TEST_CASE("intersection numbers on the torus") {
  auto m = torus_ab();
  auto xn = intersection_numbers(m, FamilyLabel::alpha, FamilyLabel::beta);
  CHECK(xn.geometric[0][0] == 1);
  CHECK(std::abs(xn.algebraic[0][0]) == 1);
  auto xn2 = intersection_numbers(m, FamilyLabel::beta, FamilyLabel::alpha);
  CHECK(xn2.algebraic[0][0] == -xn.algebraic[0][0]);
}

TEST_CASE("cut torus along alpha gives annulus") {
  auto m = torus_ab();
  auto st = cut_along(m, FamilyLabel::alpha);
  CHECK(st.components == 1);
  CHECK(st.genus_per_component[0] == 0);
  CHECK(st.boundary_per_component[0] == 2);
  CHECK(st.euler == 0);
}

TEST_CASE("surger torus along alpha gives sphere") {
  // Torus whose second loop is carrier, so the locus is clean.
  std::vector<HalfEdge> nx(4);
  std::vector<VertexId> vx(4, 0);
  std::vector<uint8_t> bs(4, 0);
  nx[0] = 2;
  nx[2] = 1;
  nx[1] = 3;
  nx[3] = 0;
  CurveFamily fa{FamilyLabel::alpha, {Member{"alpha1", {0}, -1}}};
  auto m = CombinatorialMap::from_raw(nx, vx, bs, {fa});
  auto s = surger(m, FamilyLabel::alpha);
  auto st = validate_map(s);
  CHECK(st.components == 1);
  CHECK(st.genus_per_component[0] == 0);
  CHECK(st.boundary_per_component[0] == 0);
  CHECK(st.euler == 2);
  CHECK(s.family(FamilyLabel::alpha).members.empty());
}

TEST_CASE("torus triple: restrict erases gamma and smooths") {
  auto m = torus_ab();
  // gamma crosses alpha once and beta once.
  MapBuilder b(m);
  bool drew = false;
  for (HalfEdge g1 : {0, 1}) {
    for (HalfEdge g2 : {2, 3}) {
      MapBuilder attempt(m);
      Route r;
      r.closed = true;
      r.crossings = {g1, g2};
      try {
        auto walk = draw_route(attempt, r);
        attempt.add_member(FamilyLabel::gamma, Member{"gamma1", walk, -1});
        b = attempt;
        drew = true;
      } catch (const Error&) {
        continue;
      }
      if (drew) break;
    }
    if (drew) break;
  }
  REQUIRE(drew);
  auto triple = b.finalize();
  auto st = validate_map(triple);
  CHECK(st.genus_per_component[0] == 1);
  CHECK(triple.vertices() == 3);
  auto xg = intersection_numbers(triple, FamilyLabel::gamma, FamilyLabel::alpha);
  CHECK(xg.geometric[0][0] == 1);
  auto xb = intersection_numbers(triple, FamilyLabel::gamma, FamilyLabel::beta);
  CHECK(xb.geometric[0][0] == 1);
  // Restriction to {alpha, beta} smooths gamma's crossings away.
  auto r2 = restrict_to(triple, {FamilyLabel::alpha, FamilyLabel::beta});
  CHECK(r2.vertices() == 1);
  CHECK(r2.edges() == 2);
  CHECK(map_digest(r2) == map_digest(torus_ab()));
}

TEST_CASE("restrict makes an isolated curve a free loop") {
  // Disk with one arc; alpha crosses the arc twice.
  auto disk = canonical_surface(0, 1);
  MapBuilder b(disk);
  Route arc;
  arc.closed = false;
  arc.start = 1;  // interior side of the boundary loop
  arc.end = 1;
  auto arc_walk = draw_route(b, arc);
  b.add_member(FamilyLabel::arc_b, Member{"b1", arc_walk, -1});
  HalfEdge chord = arc_walk[0];
  Route loop;
  loop.closed = true;
  loop.crossings = {chord, b.twin(chord)};
  bool drew = false;
  for (auto cr : {std::vector<HalfEdge>{chord, b.twin(chord)},
                  std::vector<HalfEdge>{b.twin(chord), chord}}) {
    MapBuilder attempt = b;
    Route r;
    r.closed = true;
    r.crossings = cr;
    try {
      auto w = draw_route(attempt, r);
      attempt.add_member(FamilyLabel::alpha, Member{"alpha1", w, -1});
      b = attempt;
      drew = true;
      break;
    } catch (const Error&) {
    }
  }
  REQUIRE(drew);
  auto m = b.finalize();
  auto st = validate_map(m);
  CHECK(st.genus_per_component[0] == 0);
  CHECK(st.boundary_per_component[0] == 1);
  auto xn = intersection_numbers(m, FamilyLabel::alpha, FamilyLabel::arc_b);
  CHECK(xn.geometric[0][0] == 2);
  CHECK(xn.algebraic[0][0] == 0);

  auto r = restrict_to(m, {FamilyLabel::alpha});
  const auto& fam = r.family(FamilyLabel::alpha);
  REQUIRE(fam.members.size() == 1);
  CHECK(fam.members[0].free_loop());
  CHECK(validate_map(r).genus_per_component[0] == 0);
}

TEST_CASE("restrict to all families is the identity") {
  auto m = torus_ab();
  auto r = restrict_to(m, {FamilyLabel::alpha, FamilyLabel::beta});
  CHECK(map_digest(r) == map_digest(m));
}

TEST_CASE("digest is relabeling invariant") {
  auto m = torus_ab();
  // Same torus with half-edge ids permuted: a = (2,3), b = (0,1).
  std::vector<HalfEdge> nx(4);
  std::vector<VertexId> vx(4, 0);
  std::vector<uint8_t> bs(4, 0);
  nx[2] = 0;
  nx[0] = 3;
  nx[3] = 1;
  nx[1] = 2;
  CurveFamily fa{FamilyLabel::alpha, {Member{"alpha1", {2}, -1}}};
  CurveFamily fb{FamilyLabel::beta, {Member{"beta1", {0}, -1}}};
  auto m2 = CombinatorialMap::from_raw(nx, vx, bs, {fa, fb});
  CHECK(map_digest(m) == map_digest(m2));
}

TEST_CASE("mirror flips crossing signs") {
  auto m = torus_ab();
  auto mm = mirror(m);
  auto a = intersection_numbers(m, FamilyLabel::alpha, FamilyLabel::beta).algebraic[0][0];
  auto b = intersection_numbers(mm, FamilyLabel::alpha, FamilyLabel::beta).algebraic[0][0];
  CHECK(a == -b);
  auto st = validate_map(mm);
  CHECK(st.genus_per_component[0] == 1);
}

TEST_CASE("draw a translate of beta on the torus") {
  auto m = torus_ab();
  // Translate of beta crosses alpha once (it runs parallel to beta).
  auto route = translate_route(m, m.family(FamilyLabel::beta).members[0].walk, true, +1);
  MapBuilder b(m);
  auto walk = draw_route(b, route);
  b.add_member(FamilyLabel::gamma, Member{"gamma1", walk, -1});
  auto m2 = b.finalize();
  auto st = validate_map(m2);
  CHECK(st.genus_per_component[0] == 1);
  auto xn = intersection_numbers(m2, FamilyLabel::gamma, FamilyLabel::beta);
  CHECK(xn.geometric[0][0] == 0);  // translate disjoint from the original
  auto xa = intersection_numbers(m2, FamilyLabel::gamma, FamilyLabel::alpha);
  CHECK(xa.geometric[0][0] == 1);  // still crosses alpha once
}

TEST_CASE("glue two annuli into a torus") {
  auto a1 = canonical_surface(0, 2);
  auto a2 = canonical_surface(0, 2);
  // Match both circles. Boundary halves of each circle, in face order.
  std::vector<std::pair<HalfEdge, HalfEdge>> matching;
  std::vector<FaceId> ba, bb;
  for (FaceId f = 0; f < a1.faces(); f++)
    if (a1.boundary_face(f)) ba.push_back(f);
  for (FaceId f = 0; f < a2.faces(); f++)
    if (a2.boundary_face(f)) bb.push_back(f);
  REQUIRE(ba.size() == 2);
  REQUIRE(bb.size() == 2);
  for (int i = 0; i < 2; i++) {
    auto ha = a1.face_halves(ba[i]);
    auto hb = a2.face_halves(bb[i]);
    REQUIRE(ha.size() == hb.size());
    // Opposite traversal: pair ha[j] with hb[-j] reading b's circle backward.
    int n = static_cast<int>(ha.size());
    for (int j = 0; j < n; j++) matching.push_back({ha[j], hb[(n - j) % n]});
  }
  auto t = glue_boundaries(a1, a2, matching);
  auto st = validate_map(t);
  CHECK(st.components == 1);
  CHECK(st.boundary_per_component[0] == 0);
  CHECK(st.genus_per_component[0] == 1);
}
