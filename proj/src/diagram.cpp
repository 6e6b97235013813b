#include "trisect/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "trisect/algebra.hpp"
#include "trisect/builder.hpp"

namespace trisect {

std::vector<BoundaryOrder> derive_endpoint_order(const CombinatorialMap& m) {
  // Arc endpoints keyed by vertex.
  std::map<VertexId, EndpointMark> marks;
  for (const auto& fam : m.families()) {
    if (!is_arc_label(fam.label)) continue;
    for (int i = 0; i < (int)fam.members.size(); i++) {
      const Member& mem = fam.members[i];
      if (mem.free_loop() || mem.walk.empty()) continue;
      marks[m.vertex(mem.walk.front())] = EndpointMark{fam.label, i, 0};
      marks[m.head(mem.walk.back())] = EndpointMark{fam.label, i, 1};
    }
  }
  std::vector<BoundaryOrder> out;
  for (FaceId f = 0; f < m.faces(); f++) {
    if (!m.boundary_face(f)) continue;
    BoundaryOrder bo;
    bo.boundary_face = f;
    for (HalfEdge h : m.face_halves(f)) {
      auto it = marks.find(m.vertex(h));
      if (it != marks.end()) bo.order.push_back(it->second);
    }
    out.push_back(std::move(bo));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

Report validate_cut_system(const CombinatorialMap& m, FamilyLabel family, int p) {
  Report rep;
  const CurveFamily* fam = m.find_family(family);
  if (!fam) {
    rep.add("family_exists", false, label_name(family));
    return rep;
  }
  rep.add("family_exists", true);
  bool curves_ok = true;
  for (const auto& mem : fam->members) {
    if (mem.free_loop()) continue;
    if (!m.walk_is_closed(mem.walk)) {
      curves_ok = false;
      rep.add("members_closed", false, mem.name + " is an arc");
    }
  }
  if (curves_ok) rep.add("members_closed", true);
  try {
    validate_map(m);
    rep.add("map_valid", true);
  } catch (const Error& e) {
    rep.add("map_valid", false, e.what());
    return rep;
  }
  if (!curves_ok) return rep;
  try {
    auto cut = cut_along(m, family);
    bool connected = cut.components == 1;
    rep.add("cut_connected", connected,
            connected ? "" : std::to_string(cut.components) + " components");
    if (connected) {
      bool genus_ok = cut.genus_per_component[0] == p;
      rep.add("cut_genus", genus_ok,
              "genus " + std::to_string(cut.genus_per_component[0]) + ", expected " +
                  std::to_string(p));
    }
  } catch (const Error& e) {
    rep.add("cut_valid", false, e.what());
  }
  return rep;
}

Report validate_relative_trisection(const RelativeTrisectionDiagram& d) {
  Report rep;
  const auto& m = d.map;
  const auto& P = d.params;
  rep.add("params_sane", P.g >= P.p && P.p >= 0 && P.b >= 1,
          "(g,p,b)=(" + std::to_string(P.g) + "," + std::to_string(P.p) + "," +
              std::to_string(P.b) + ")");
  SurfaceStats st;
  try {
    st = validate_map(m);
    rep.add("map_valid", true);
  } catch (const Error& e) {
    rep.add("map_valid", false, e.what());
    return rep;
  }
  bool surf_ok = st.components == 1 && st.genus() == P.g && st.boundary() == P.b;
  rep.add("surface_matches_params", surf_ok, st.str());

  const int want = P.g - P.p;
  for (FamilyLabel l : {FamilyLabel::alpha, FamilyLabel::beta, FamilyLabel::gamma}) {
    const CurveFamily* fam = m.find_family(l);
    int have = fam ? (int)fam->members.size() : -1;
    // ArcCountMismatch when the family size disagrees with g - p.
    rep.add(std::string(label_name(l)) + "_count", have == want,
            std::to_string(have) + " members, expected " + std::to_string(want));
    if (have != want) continue;
    auto sub = validate_cut_system(m, l, P.p);
    // CutGenusMismatch and friends surface as the sub-report entries.
    for (auto& item : sub.items)
      rep.add(std::string(label_name(l)) + "_" + item.check, item.pass, item.detail);
  }
  if (!rep.ok()) return rep;

  // Homological necessary condition: each pairwise diagram presents a free
  // abelian H1 of the rank forced by the sector data. This check is
  // necessary, not sufficient; no 3-manifold recognition is attempted.
  struct PairSpec {
    FamilyLabel a, b;
    int k;
  };
  const PairSpec pairs[3] = {{FamilyLabel::alpha, FamilyLabel::beta, P.k[0]},
                             {FamilyLabel::beta, FamilyLabel::gamma, P.k[1]},
                             {FamilyLabel::gamma, FamilyLabel::alpha, P.k[2]}};
  for (const auto& pr : pairs) {
    auto xn = intersection_numbers(m, pr.a, pr.b);
    auto g = cokernel(imat_from(xn.algebraic));
    std::string name = std::string("h1_") + label_name(pr.a) + "_" + label_name(pr.b) +
                       "_necessary_not_sufficient";
    bool ok = g.torsion.empty() && g.free_rank == pr.k;
    rep.add(name, ok, g.str() + ", expected Z^" + std::to_string(pr.k));
  }
  return rep;
}

namespace {

bool check_arc_basis(Report& rep, const CombinatorialMap& m, FamilyLabel curves,
                     FamilyLabel arcs) {
  std::string name = std::string("arc_basis_") + label_name(arcs);
  try {
    CombinatorialMap page = surger_keeping(m, curves, {arcs});
    std::vector<MemberRef> locus;
    const auto& fam = page.family(arcs);
    for (int i = 0; i < (int)fam.members.size(); i++) locus.push_back(MemberRef{arcs, i});
    auto cs = cut_stats(page, locus);
    bool ok = cs.stats.components == 1 && cs.stats.genus_per_component[0] == 0 &&
              cs.stats.boundary_per_component[0] == 1;
    rep.add(name, ok, cs.stats.str());
    return ok;
  } catch (const Error& e) {
    rep.add(name, false, e.what());
    return false;
  }
}

}  // namespace

Report validate_arced(const ArcedTrisectionDiagram& d) {
  Report rep;
  const auto& m = d.base.map;
  const auto& P = d.base.params;
  const int n = 2 * P.p + P.b - 1;
  try {
    validate_map(m);
    rep.add("map_valid", true);
  } catch (const Error& e) {
    rep.add("map_valid", false, e.what());
    return rep;
  }
  for (FamilyLabel l : {FamilyLabel::arc_a, FamilyLabel::arc_b, FamilyLabel::arc_c}) {
    const CurveFamily* fam = m.find_family(l);
    int have = fam ? (int)fam->members.size() : -1;
    rep.add(std::string("arcs_") + label_name(l) + "_count", have == n,
            std::to_string(have) + " arcs, expected 2p+b-1 = " + std::to_string(n));
  }
  if (!rep.ok()) return rep;

  // Diagonal +1, off-diagonal 0 pattern among the three arc families.
  struct PairSpec {
    FamilyLabel a, b;
  };
  for (const auto& pr : {PairSpec{FamilyLabel::arc_a, FamilyLabel::arc_b},
                         PairSpec{FamilyLabel::arc_b, FamilyLabel::arc_c},
                         PairSpec{FamilyLabel::arc_a, FamilyLabel::arc_c}}) {
    auto xn = intersection_numbers(m, pr.a, pr.b);
    bool ok = true;
    std::ostringstream why;
    for (int i = 0; i < n && ok; i++)
      for (int j = 0; j < n && ok; j++) {
        long long geo = xn.geometric[i][j], alg = xn.algebraic[i][j];
        if (i == j ? (geo != 1 || alg != 1) : (geo != 0)) {
          ok = false;
          why << "(" << i << "," << j << "): geo " << geo << " alg " << alg;
        }
      }
    rep.add(std::string("pattern_") + label_name(pr.a) + label_name(pr.b), ok, why.str());
  }

  // Disjointness from the matching closed curves.
  struct DisjSpec {
    FamilyLabel arcs, curves;
  };
  for (const auto& ds : {DisjSpec{FamilyLabel::arc_a, FamilyLabel::alpha},
                         DisjSpec{FamilyLabel::arc_b, FamilyLabel::alpha},
                         DisjSpec{FamilyLabel::arc_b, FamilyLabel::beta},
                         DisjSpec{FamilyLabel::arc_c, FamilyLabel::beta},
                         DisjSpec{FamilyLabel::arc_c, FamilyLabel::gamma}}) {
    if (!m.find_family(ds.curves)) continue;
    auto xn = intersection_numbers(m, ds.arcs, ds.curves);
    long long total = 0;
    for (const auto& row : xn.geometric)
      for (long long x : row) total += x;
    rep.add(std::string(label_name(ds.arcs)) + "_disjoint_from_" + label_name(ds.curves),
            total == 0, std::to_string(total) + " crossings");
  }

  // Arc-basis property through the paired cut system.
  if (m.find_family(FamilyLabel::alpha)) {
    check_arc_basis(rep, m, FamilyLabel::alpha, FamilyLabel::arc_a);
    check_arc_basis(rep, m, FamilyLabel::beta, FamilyLabel::arc_b);
    check_arc_basis(rep, m, FamilyLabel::gamma, FamilyLabel::arc_c);
  }

  // Recorded endpoint order, if present, must match the map.
  if (!d.endpoint_order.empty()) {
    auto derived = derive_endpoint_order(m);
    bool ok = derived.size() == d.endpoint_order.size();
    for (size_t i = 0; ok && i < derived.size(); i++) {
      const auto& want = d.endpoint_order[i];
      const auto& got = derived[i];
      if (got.boundary_face != want.boundary_face || got.order.size() != want.order.size()) {
        ok = false;
        break;
      }
      // Compare up to cyclic rotation.
      bool any = want.order.empty();
      for (size_t r = 0; r < want.order.size() && !any; r++) {
        bool match = true;
        for (size_t t = 0; t < want.order.size() && match; t++)
          match = want.order[(r + t) % want.order.size()] == got.order[t];
        any = match;
      }
      ok = any;
    }
    rep.add("endpoint_order_matches", ok);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Standard models

CombinatorialMap standard_arc_basis(int p, int b) {
  require(p >= 0 && b >= 1, Err::InvalidParams, "need p >= 0, b >= 1");
  CombinatorialMap page = canonical_surface(p, b);
  const int n = 2 * p + b - 1;
  if (n == 0) {
    return page.with_families({CurveFamily{FamilyLabel::arc_a, {}}});
  }
  MapBuilder bd(page);
  int count = 0;
  // Finds an interior-side boundary half on the face of `anchor`, skipping
  // halves of the boundary circle whose hole face contains `exclude_hole`.
  auto find_boundary_half_in_face = [&](HalfEdge anchor, HalfEdge exclude_hole) -> HalfEdge {
    HalfEdge g = anchor;
    do {
      if (bd.boundary_edge_any(g) && !bd.boundary_side(g)) {
        if (exclude_hole < 0 || !bd.same_face_orbit(bd.twin(g), exclude_hole)) return g;
      }
      g = bd.prev(bd.twin(g));
    } while (g != anchor);
    fail(Err::InternalError, "no usable boundary edge on the face");
  };
  auto draw_arc = [&](const Route& r) {
    auto walk = draw_route(bd, r);
    Member mem;
    mem.name = std::string("a") + std::to_string(++count);
    mem.walk = walk;
    bd.add_member(FamilyLabel::arc_a, mem);
  };

  // Handle duals: for each handle, one arc crossing x once and one crossing
  // y once. Loop halves in canonical_surface: x = (2+4j, 3+4j), y = (4+4j,
  // 5+4j).
  for (int j = 0; j < p; j++) {
    for (HalfEdge target : {HalfEdge(2 + 4 * j), HalfEdge(4 + 4 * j)}) {
      Route r;
      r.closed = false;
      r.start = find_boundary_half_in_face(target, -1);
      r.crossings = {target};
      r.end_auto = true;
      draw_arc(r);
    }
  }
  // Spanning arcs to each extra boundary circle.
  const int L = 2 + 4 * p;
  for (int i = 1; i < b; i++) {
    HalfEdge lp = L + 4 * (i - 1);
    HalfEdge lm = lp + 1;
    HalfEdge inner_side = bd.boundary_side(lp) ? lm : lp;
    HalfEdge inner_hole = bd.twin(inner_side);
    Route r;
    r.closed = false;
    r.start = find_boundary_half_in_face(inner_side, inner_hole);
    r.crossings = {};
    r.end = inner_side;
    draw_arc(r);
  }
  CombinatorialMap out = bd.finalize();
  return out;
}

CombinatorialMap add_arc_translates(const CombinatorialMap& m, FamilyLabel src, FamilyLabel dst,
                                    const std::vector<FamilyLabel>& check_inherited) {
  const CurveFamily& fam = m.family(src);
  CombinatorialMap cur = m;
  for (int i = 0; i < (int)fam.members.size(); i++) {
    bool done = false;
    std::string err;
    for (int side : {+1, -1}) {
      const auto& W = cur.family(src).members[i].walk;
      Route r;
      try {
        r = translate_route(cur, W, false, side);
      } catch (const Error& e) {
        err = e.what();
        continue;
      }
      // End twist: cross the source arc once near its far endpoint and land
      // on the boundary edge on its far side. All names are static: no route
      // crossing touches the endpoint vertex.
      HalfEdge last = (side > 0) ? W.back() : cur.twin(W.front());
      HalfEdge u_end = cur.twin(last);
      r.crossings.push_back(last);
      r.end = cur.twin(cur.next(u_end));
      if (!cur.boundary_edge(*r.end) || cur.boundary_side(*r.end)) {
        err = "no boundary edge on the far side of the twist";
        continue;
      }
      MapBuilder bd(cur);
      std::vector<HalfEdge> walk;
      try {
        walk = draw_route(bd, r);
      } catch (const Error& e) {
        err = e.what();
        continue;
      }
      if (side < 0) {
        // Reorient the copy to run parallel to the original.
        std::reverse(walk.begin(), walk.end());
        for (auto& h : walk) h = bd.twin(h);
      }
      Member mem;
      mem.name = std::string(label_name(dst)) + std::to_string(i + 1);
      mem.walk = walk;
      bd.add_member(dst, mem);
      CombinatorialMap candidate = bd.finalize();
      // The copy must meet its original exactly once, positively, and any
      // crossing pattern the source had with the listed families must be
      // inherited verbatim on the diagonal.
      auto pattern_ok = [&]() {
        auto xn = intersection_numbers(candidate, src, dst);
        int ns = static_cast<int>(candidate.family(src).members.size());
        int nd = static_cast<int>(candidate.family(dst).members.size());
        for (int a = 0; a < ns; a++)
          for (int bb = 0; bb < nd; bb++) {
            long long geo = xn.geometric[a][bb], alg = xn.algebraic[a][bb];
            if (a == bb ? (geo != 1 || alg != 1) : geo != 0) return false;
          }
        for (FamilyLabel other : check_inherited) {
          auto want = intersection_numbers(candidate, other, src);
          auto got = intersection_numbers(candidate, other, dst);
          int no = static_cast<int>(candidate.family(other).members.size());
          for (int a = 0; a < no; a++)
            for (int bb = 0; bb <= i; bb++)
              if (want.geometric[a][bb] != got.geometric[a][bb] ||
                  want.algebraic[a][bb] != got.algebraic[a][bb])
                return false;
        }
        return true;
      };
      if (!pattern_ok()) {
        err = "translate pattern came out wrong";
        continue;
      }
      cur = std::move(candidate);
      done = true;
      break;
    }
    require(done, Err::InvalidBand,
            "could not place a translate of " + fam.members[i].name + ": " + err);
  }
  return cur;
}

}  // namespace trisect
