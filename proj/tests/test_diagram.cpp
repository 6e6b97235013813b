#include "trisect/diagram.hpp"

#include "doctest.h"
#include "trisect/algebra.hpp"
#include "trisect/builder.hpp"

using namespace trisect;

TEST_CASE("standard arc basis cuts the page to a disk") {
  for (int p = 0; p <= 3; p++) {
    for (int b = 1; b <= 4; b++) {
      auto page = standard_arc_basis(p, b);
      auto st = validate_map(page);
      INFO("p=", p, " b=", b, " got ", st.str());
      CHECK(st.components == 1);
      CHECK(st.genus_per_component[0] == p);
      CHECK(st.boundary_per_component[0] == b);
      const auto& fam = page.family(FamilyLabel::arc_a);
      CHECK((int)fam.members.size() == 2 * p + b - 1);
      std::vector<MemberRef> locus;
      for (int i = 0; i < (int)fam.members.size(); i++)
        locus.push_back(MemberRef{FamilyLabel::arc_a, i});
      if (locus.empty()) continue;
      auto cs = cut_stats(page, locus);
      INFO("cut: ", cs.stats.str());
      CHECK(cs.stats.components == 1);
      CHECK(cs.stats.genus_per_component[0] == 0);
      CHECK(cs.stats.boundary_per_component[0] == 1);
      CHECK(cs.stats.euler == 1);
    }
  }
}

TEST_CASE("arc translates have the nested crossing pattern") {
  for (auto [p, b] : {std::pair{0, 2}, {1, 1}, {1, 2}, {0, 3}}) {
    auto page = standard_arc_basis(p, b);
    auto with_b = add_arc_translates(page, FamilyLabel::arc_a, FamilyLabel::arc_b);
    auto with_c = add_arc_translates(with_b, FamilyLabel::arc_b, FamilyLabel::arc_c,
                                     {FamilyLabel::arc_a});
    INFO("p=", p, " b=", b);
    validate_map(with_c);
    const int n = 2 * p + b - 1;
    for (auto [fa, fb] : {std::pair{FamilyLabel::arc_a, FamilyLabel::arc_b},
                          {FamilyLabel::arc_b, FamilyLabel::arc_c},
                          {FamilyLabel::arc_a, FamilyLabel::arc_c}}) {
      auto xn = intersection_numbers(with_c, fa, fb);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          INFO(label_name(fa), "/", label_name(fb), " at ", i, ",", j);
          if (i == j) {
            CHECK(xn.geometric[i][j] == 1);
            CHECK(xn.algebraic[i][j] == 1);
          } else {
            CHECK(xn.geometric[i][j] == 0);
          }
        }
    }
  }
}

TEST_CASE("validate_cut_system on simple fixtures") {
  // Empty family on the annulus, p = 0: pass.
  auto annulus = canonical_surface(0, 2).with_families({CurveFamily{FamilyLabel::alpha, {}}});
  CHECK(validate_cut_system(annulus, FamilyLabel::alpha, 0).ok());
  // Torus with one alpha: cut gives genus 0.
  std::vector<HalfEdge> nx{2, 3, 1, 0};
  std::vector<VertexId> vx(4, 0);
  std::vector<uint8_t> bs(4, 0);
  nx = {2, 3, 1, 0};
  // rotation cycle 0 -> 2 -> 1 -> 3
  nx[0] = 2;
  nx[2] = 1;
  nx[1] = 3;
  nx[3] = 0;
  auto torus = CombinatorialMap::from_raw(nx, vx, bs,
                                          {CurveFamily{FamilyLabel::alpha, {Member{"a1", {0}}}}});
  CHECK(validate_cut_system(torus, FamilyLabel::alpha, 0).ok());
  CHECK(!validate_cut_system(torus, FamilyLabel::alpha, 1).ok());
}

TEST_CASE("validate_relative_trisection degenerate cases") {
  // (g,p,b) = (0,0,2): annulus, no curves, k = 0: all checks vacuous.
  RelativeTrisectionDiagram d;
  d.map = canonical_surface(0, 2).with_families({CurveFamily{FamilyLabel::alpha, {}},
                                                 CurveFamily{FamilyLabel::beta, {}},
                                                 CurveFamily{FamilyLabel::gamma, {}}});
  d.params = TrisectionParams{0, {0, 0, 0}, 0, 2};
  auto rep = validate_relative_trisection(d);
  INFO(rep.summary());
  CHECK(rep.ok());
  // Mismatched params: claim p = 1 fails the count checks.
  d.params = TrisectionParams{0, {0, 0, 0}, 1, 2};
  CHECK(!validate_relative_trisection(d).ok());
}

TEST_CASE("validate_relative_trisection with coincident families") {
  // Genus-1 page model with alpha = beta = gamma one nonseparating curve.
  // Coker of [0] is Z, so the sector ranks are k = (1,1,1).
  std::vector<HalfEdge> nx(6);
  std::vector<VertexId> vx(6, 0);
  std::vector<uint8_t> bs(6, 0);
  // One vertex; loops x (0,1), y (2,3) interleaved; boundary loop (4,5).
  // rotation: 0 2 1 3 4 5
  nx[0] = 2;
  nx[2] = 1;
  nx[1] = 3;
  nx[3] = 4;
  nx[4] = 5;
  nx[5] = 0;
  bs[4] = 1;
  Member curve{"c", {0}, -1};
  auto m = CombinatorialMap::from_raw(
      nx, vx, bs,
      {CurveFamily{FamilyLabel::alpha, {Member{"alpha1", {0}}}},
       CurveFamily{FamilyLabel::beta, {Member{"beta1", {0}}}},
       CurveFamily{FamilyLabel::gamma, {Member{"gamma1", {0}}}}});
  auto st = validate_map(m);
  REQUIRE(st.genus_per_component[0] == 1);
  REQUIRE(st.boundary_per_component[0] == 1);
  RelativeTrisectionDiagram d{m, TrisectionParams{1, {1, 1, 1}, 0, 1}};
  auto rep = validate_relative_trisection(d);
  INFO(rep.summary());
  CHECK(rep.ok());
}

TEST_CASE("arced validation on the annulus model") {
  auto page = standard_arc_basis(0, 2);
  auto m = add_arc_translates(page, FamilyLabel::arc_a, FamilyLabel::arc_b);
  m = add_arc_translates(m, FamilyLabel::arc_b, FamilyLabel::arc_c, {FamilyLabel::arc_a});
  m = m.with_families([&] {
    auto fams = m.families();
    fams.push_back(CurveFamily{FamilyLabel::alpha, {}});
    fams.push_back(CurveFamily{FamilyLabel::beta, {}});
    fams.push_back(CurveFamily{FamilyLabel::gamma, {}});
    return fams;
  }());
  ArcedTrisectionDiagram ad;
  ad.base.map = m;
  ad.base.params = TrisectionParams{0, {0, 0, 0}, 0, 2};
  ad.endpoint_order = derive_endpoint_order(m);
  auto rep = validate_arced(ad);
  INFO(rep.summary());
  CHECK(rep.ok());
}
