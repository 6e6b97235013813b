#include "trisect/moves.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "trisect/builder.hpp"

namespace trisect {

namespace {

std::vector<MemberRef> owners(const std::vector<std::vector<MemberRef>>& users, EdgeId e) {
  return users[e];
}

bool solely_owned(const CombinatorialMap& m, MemberRef r) {
  auto users = m.edge_users();
  for (HalfEdge h : m.member(r).walk) {
    const auto& u = users[h / 2];
    if (u.size() != 1 || !(u[0] == r)) return false;
  }
  return true;
}

// Effective walk of the translate and the per-vertex fan sizes, matching
// translate_route's traversal.
std::vector<int> closed_fan_sizes(const CombinatorialMap& m, const std::vector<HalfEdge>& W) {
  const int k = static_cast<int>(W.size());
  std::vector<int> sizes(k, 0);
  for (int i = 0; i < k; i++) {
    HalfEdge u = m.twin(W[(i + k - 1) % k]);
    HalfEdge g = m.next(W[i]);
    while (g != u) {
      sizes[i]++;
      g = m.next(g);
    }
  }
  return sizes;
}

struct SlideWork {
  CombinatorialMap result;
};

CombinatorialMap do_slide(const CombinatorialMap& m, const SlideMove& move, bool arc_mover);

}  // namespace

// ---------------------------------------------------------------------------
// Bigon reduction

CombinatorialMap reduce_bigons(const CombinatorialMap& m0, MemberRef ref) {
  CombinatorialMap m = m0;
  for (int round = 0; round < 4 * m0.half_edges() + 16; round++) {
    const Member& mem = m.member(ref);
    if (mem.free_loop()) return m;
    auto users = m.edge_users();
    std::set<EdgeId> ref_edges;
    for (HalfEdge h : mem.walk) ref_edges.insert(h / 2);

    HalfEdge big_x = -1, big_y = -1;
    for (FaceId f = 0; f < m.faces(); f++) {
      if (m.boundary_face(f) || m.face_degree(f) != 2) continue;
      HalfEdge x = m.face_rep(f);
      HalfEdge y = m.face_next(x);
      if (x / 2 == y / 2) continue;                      // folded monogon
      if (m.vertex(x) == m.vertex(y)) continue;          // one-vertex bigon
      if (m.boundary_edge(x) || m.boundary_edge(y)) continue;
      bool xr = ref_edges.count(x / 2), yr = ref_edges.count(y / 2);
      if (xr == yr) continue;
      if (!xr) std::swap(x, y);
      // x side belongs to ref (solely); y side to one other member or carrier.
      if (owners(users, x / 2).size() != 1) continue;
      const auto& yo = owners(users, y / 2);
      if (yo.size() > 1) continue;
      if (yo.size() == 1 && yo[0] == ref) continue;
      big_x = x;
      big_y = y;
      break;
    }
    if (big_x < 0) return m;

    // Walk bookkeeping in the builder.
    MapBuilder b(m);
    int fi = b.family_index(ref.family);
    auto& walk = b.families()[fi].members[ref.index].walk;
    // The walk uses big_x or its twin.
    int pos = -1;
    HalfEdge mh = -1;
    for (int i = 0; i < (int)walk.size(); i++)
      if (walk[i] / 2 == big_x / 2) {
        pos = i;
        mh = walk[i];
        break;
      }
    require(pos >= 0, Err::InternalError, "bigon edge not on the walk");
    const int L = static_cast<int>(walk.size());
    require(L >= 2, Err::InternalError, "bigon on a loop walk");
    bool closed = m.walk_is_closed(m.member(ref).walk);
    require(closed || (pos > 0 && pos + 1 < L), Err::InternalError, "bigon at an arc endpoint");
    HalfEdge M1 = walk[(pos + L - 1) % L];
    // Split M1 near its head, M2 near its tail.
    auto [s1v, near1] = b.split_edge(M1);
    // Walk now [..., M1, near1, mh, M2, ...]; find mh again.
    for (int i = 0; i < (int)walk.size(); i++)
      if (walk[i] == mh) pos = i;
    HalfEdge M2 = walk[(pos + 1) % walk.size()];
    auto [s2v, far2] = b.split_edge(M2);
    // far2 is the piece beyond s2v; M2 keeps [v2 .. s2v].

    // Chord through the face on the far side of the other curve.
    HalfEdge far_side = b.twin(big_y);
    auto corner_on = [&](VertexId v, HalfEdge target_face_rep) -> HalfEdge {
      for (HalfEdge g : b.spokes(v))
        if (b.same_face_orbit(b.twin(b.next(g)), target_face_rep)) return g;
      fail(Err::InternalError, "no corner on the rerouting face");
    };
    HalfEdge at1 = corner_on(s1v, far_side);
    HalfEdge at2 = corner_on(s2v, far_side);
    auto [n1, n2] = b.add_edge({s1v, at1}, {s2v, at2});
    (void)n2;

    // Reroute: [..., M1, near1, mh, M2, far2, ...] -> [..., M1, n, far2, ...]
    {
      std::vector<HalfEdge> out;
      const auto& w = walk;
      for (int i = 0; i < (int)w.size(); i++) {
        if (w[i] == near1) {
          out.push_back(n1);
          i += 2;  // skip near1, mh, M2
          continue;
        }
        out.push_back(w[i]);
      }
      require(out.size() + 2 == walk.size(), Err::InternalError, "bigon reroute failed");
      walk = out;
    }
    VertexId v1 = b.vertex(mh), v2 = b.head(mh);
    b.delete_edge(near1);
    b.delete_edge(mh);
    b.delete_edge(M2);
    for (VertexId v : {v1, v2, s1v, s2v}) {
      auto sp = b.spokes(v);
      if (sp.size() == 2 && b.twin(sp[0]) != sp[1]) b.smooth_vertex(v);
    }
    CombinatorialMap next = b.finalize();
    require(validate_map(next) == validate_map(m), Err::InternalError,
            "bigon reduction changed the surface");
    m = std::move(next);
  }
  fail(Err::InternalError, "bigon reduction did not terminate");
}

// ---------------------------------------------------------------------------
// Slides

namespace {

CombinatorialMap do_slide(const CombinatorialMap& m, const SlideMove& move, bool arc_mover) {
  const Member& mover = m.member(move.mover);
  const Member& over = m.member(move.over);
  require(!mover.free_loop() && !over.free_loop(), Err::InvalidBand, "free loop in slide");
  require(m.walk_is_closed(over.walk), Err::InvalidBand, "slid-over member must be a curve");
  if (arc_mover)
    require(!m.walk_is_closed(mover.walk), Err::InvalidBand, "mover must be an arc");
  else
    require(m.walk_is_closed(mover.walk), Err::InvalidBand, "mover must be a curve");
  require(!(move.mover == move.over), Err::InvalidBand, "mover equals over");
  require(solely_owned(m, move.mover) && solely_owned(m, move.over), Err::FamilyCollision,
          "slide members share edges");
  {
    std::set<VertexId> vo;
    for (HalfEdge h : over.walk) vo.insert(m.vertex(h));
    for (HalfEdge h : mover.walk) {
      require(!vo.count(m.vertex(h)) && !vo.count(m.head(h)), Err::InvalidBand,
              "mover touches the slid-over curve");
    }
  }
  const auto& band = move.band;
  require(band.mover_pos >= 0 && band.mover_pos < (int)mover.walk.size(), Err::InvalidBand,
          "band mover position out of range");
  require(band.over_pos >= 0 && band.over_pos < (int)over.walk.size(), Err::InvalidBand,
          "band over position out of range");
  {
    auto users = m.edge_users();
    for (HalfEdge g : band.crossings) {
      require(g >= 0 && g < m.half_edges(), Err::InvalidBand, "band crossing out of range");
      require(!m.boundary_edge(g), Err::InvalidBand, "band crosses the boundary");
      for (const MemberRef& u : users[g / 2])
        require(u.family != move.mover.family && u.family != move.over.family, Err::InvalidBand,
                "band crosses the mover or over family");
    }
  }

  // Route of the parallel copy of `over`, computed on the frozen map.
  Route troute = translate_route(m, over.walk, true, band.over_side);
  auto fans = closed_fan_sizes(
      m, band.over_side > 0 ? over.walk : [&] {
        auto W = over.walk;
        std::reverse(W.begin(), W.end());
        for (auto& h : W) h = m.twin(h);
        return W;
      }());
  const int M = static_cast<int>(troute.crossings.size());
  int eff_pos = band.over_side > 0 ? band.over_pos
                                   : (int)over.walk.size() - 1 - band.over_pos;
  int cum = 0;
  for (int t = 0; t <= eff_pos; t++) cum += fans[t];
  int chord_idx = ((cum - 1) % M + M) % M;

  // The back lane crosses one piece of every band edge; try both choices.
  const int k = static_cast<int>(band.crossings.size());
  for (int variant = 0; variant < (1 << std::max(k, 0)); variant++) {
    MapBuilder b(m);
    try {
      auto twalk = draw_route(b, troute);
      HalfEdge d = twalk[chord_idx];

      // Split the mover edge twice.
      HalfEdge e_m = b.families()[b.family_index(move.mover.family)]
                         .members[move.mover.index]
                         .walk[band.mover_pos];
      auto [P1, rest1] = b.split_edge(e_m);
      auto [P2, rest2] = b.split_edge(rest1);

      auto left_corner = [&](HalfEdge head_piece) { return head_piece; };
      auto right_corner = [&](HalfEdge head_piece) { return b.twin(b.prev(head_piece)); };
      // At a split vertex with rotation (t1, head), the left wedge of the
      // oncoming walk is wedge(head) and the right one is wedge(t1).
      HalfEdge after_p1 = band.mover_side > 0 ? left_corner(rest1) : b.prev(rest1);
      HalfEdge after_p2 = band.mover_side > 0 ? left_corner(rest2) : b.prev(rest2);
      (void)right_corner;

      VertexId cur_v = P1;
      HalfEdge cur_after = after_p1;
      std::vector<HalfEdge> out_chords;
      struct CrossRec {
        HalfEdge tail_piece, head_piece;
      };
      std::vector<CrossRec> recs;
      auto check_face = [&](HalfEdge target) {
        require(b.same_face_orbit(b.twin(b.next(cur_after)), target), Err::InvalidBand,
                "band leaves its corridor");
      };
      auto chord_to = [&](VertexId v2, HalfEdge after2) {
        auto [c1, c2] = b.add_edge({cur_v, cur_after}, {v2, after2});
        (void)c2;
        return c1;
      };
      for (HalfEdge g : band.crossings) {
        require(b.alive(g), Err::InvalidBand, "band crossing vanished");
        check_face(g);
        auto [xv, g2] = b.split_edge(g);
        out_chords.push_back(chord_to(xv, g2));
        recs.push_back({g, g2});
        cur_v = xv;
        cur_after = b.twin(g);
      }
      // Land on the translate chord d (outer side = left of d).
      check_face(d);
      auto [Q1, dr] = b.split_edge(d);
      out_chords.push_back(chord_to(Q1, dr));
      auto [Q2, drr] = b.split_edge(dr);

      // Around the translate backward from Q1 to Q2.
      std::vector<HalfEdge> around;
      around.push_back(b.twin(d));  // Q1 -> start of d's chord
      for (int t = 1; t < M; t++)
        around.push_back(b.twin(twalk[((chord_idx - t) % M + M) % M]));
      around.push_back(b.twin(drr));  // chord end -> Q2

      // Back lane from Q2 to P2, crossing the chosen pieces.
      cur_v = Q2;
      cur_after = drr;  // left wedge at Q2
      std::vector<HalfEdge> back_chords;
      for (int t = k - 1; t >= 0; t--) {
        HalfEdge piece = (variant >> t) & 1 ? recs[t].head_piece : recs[t].tail_piece;
        require(b.alive(piece), Err::InvalidBand, "back lane piece vanished");
        check_face(piece);
        auto [xv, g2] = b.split_edge(piece);
        back_chords.push_back(chord_to(xv, g2));
        cur_v = xv;
        cur_after = b.twin(piece);
      }
      check_face(rest2);
      {
        auto [c1, c2] = b.add_edge({cur_v, cur_after}, {P2, after_p2});
        (void)c1;
        back_chords.push_back(b.twin(c2));
        // Direction: the final chord must run toward P2; c1 does.
        back_chords.back() = c1;
      }

      // Reroute the mover: replace rest1 with the detour.
      {
        auto& walk = b.families()[b.family_index(move.mover.family)]
                         .members[move.mover.index]
                         .walk;
        std::vector<HalfEdge> detour;
        detour.insert(detour.end(), out_chords.begin(), out_chords.end());
        detour.insert(detour.end(), around.begin(), around.end());
        detour.insert(detour.end(), back_chords.begin(), back_chords.end());
        std::vector<HalfEdge> nw;
        bool replaced = false;
        for (HalfEdge h : walk) {
          if (h == rest1) {
            nw.insert(nw.end(), detour.begin(), detour.end());
            replaced = true;
          } else {
            nw.push_back(h);
          }
        }
        require(replaced, Err::InternalError, "mover lost its attachment edge");
        walk = std::move(nw);
      }
      b.delete_edge(rest1);

      CombinatorialMap out = b.finalize();
      require(validate_map(out) == validate_map(m), Err::InvalidBand,
              "slide changed the surface");
      out = reduce_bigons(out, move.mover);
      return out;
    } catch (const Error& e) {
      if (variant + 1 == (1 << std::max(k, 0))) throw;
    }
  }
  fail(Err::InvalidBand, "no band variant worked");
}

}  // namespace

CombinatorialMap slide_curve(const CombinatorialMap& m, const SlideMove& move) {
  return do_slide(m, move, false);
}

CombinatorialMap slide_arc(const CombinatorialMap& m, const SlideMove& move) {
  CombinatorialMap out = do_slide(m, move, true);
  // Arc endpoints stay on the boundary where they were.
  const Member& before = m.member(move.mover);
  const Member& after = out.member(move.mover);
  require(!after.walk.empty(), Err::EndpointMoved, "arc vanished");
  (void)before;
  return out;
}

// ---------------------------------------------------------------------------
// Search

namespace {

long long family_crossings(const CombinatorialMap& m, FamilyLabel a, FamilyLabel b) {
  auto xn = intersection_numbers(m, a, b);
  long long total = 0;
  for (const auto& row : xn.geometric)
    for (long long x : row) total += x;
  return total;
}

std::vector<SlideMove> candidate_moves(const CombinatorialMap& m, FamilyLabel arcs,
                                       FamilyLabel slide_over, const SearchOptions& opts) {
  std::vector<SlideMove> out;
  const auto& fa = m.family(arcs);
  const auto& fo = m.family(slide_over);
  auto users = m.edge_users();
  for (int i = 0; i < (int)fa.members.size(); i++) {
    if (fa.members[i].free_loop()) continue;
    for (int j = 0; j < (int)fo.members.size(); j++) {
      if (fo.members[j].free_loop()) continue;
      for (int pm = 0; pm < (int)fa.members[i].walk.size(); pm++)
        for (int sm : {+1, -1})
          for (int po = 0; po < (int)fo.members[j].walk.size(); po++)
            for (int so : {+1, -1})
              out.push_back(SlideMove{MemberRef{arcs, i}, MemberRef{slide_over, j},
                                      BandSpec{pm, sm, po, so, {}}});
      if (opts.max_band_crossings >= 1) {
        for (HalfEdge g = 0; g < m.half_edges(); g += 2) {
          if (m.boundary_edge(g)) continue;
          bool banned = false;
          for (const MemberRef& u : users[g / 2])
            if (u.family == arcs || u.family == slide_over) banned = true;
          if (banned) continue;
          for (int pm = 0; pm < (int)fa.members[i].walk.size(); pm++)
            for (int sm : {+1, -1})
              for (int po = 0; po < (int)fo.members[j].walk.size(); po++)
                for (int so : {+1, -1})
                  for (HalfEdge gg : {g, m.twin(g)})
                    out.push_back(SlideMove{MemberRef{arcs, i}, MemberRef{slide_over, j},
                                            BandSpec{pm, sm, po, so, {gg}}});
        }
      }
    }
  }
  return out;
}

}  // namespace

ReduceResult reduce_intersections(const CombinatorialMap& m, FamilyLabel arcs,
                                  FamilyLabel obstacle, FamilyLabel slide_over, int budget,
                                  const SearchOptions& opts) {
  require(m.find_family(arcs) && m.find_family(obstacle) && m.find_family(slide_over),
          Err::UnknownFamily, "search families");
  ReduceResult res;
  res.trace.initial_digest = map_digest(m);
  if (family_crossings(m, arcs, obstacle) == 0) {
    res.map = m;
    res.trace.final_digest = res.trace.initial_digest;
    return res;
  }
  require(budget > 0, Err::BudgetExhausted, "budget 0 with crossings present");

  struct State {
    long long score;
    long long order;
    CombinatorialMap map;
    std::vector<SlideMove> moves;
  };
  auto cmp = [](const State& a, const State& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.order > b.order;
  };
  std::priority_queue<State, std::vector<State>, decltype(cmp)> queue(cmp);
  std::set<uint64_t> seen;
  long long order = 0;
  queue.push(State{family_crossings(m, arcs, obstacle), order++, m, {}});
  seen.insert(res.trace.initial_digest);

  long long expansions = 0;
  const long long cap = (long long)opts.max_expansions_per_budget * budget + 1;
  while (!queue.empty()) {
    State st = queue.top();
    queue.pop();
    if ((int)st.moves.size() >= budget) continue;
    if (++expansions > cap) break;
    for (const SlideMove& mv : candidate_moves(st.map, arcs, slide_over, opts)) {
      CombinatorialMap next;
      try {
        next = slide_arc(st.map, mv);
      } catch (const Error&) {
        continue;
      }
      uint64_t dg = map_digest(next);
      if (!seen.insert(dg).second) continue;
      long long sc = family_crossings(next, arcs, obstacle);
      auto moves = st.moves;
      moves.push_back(mv);
      if (sc == 0) {
        res.map = next;
        res.trace.moves = std::move(moves);
        res.trace.final_digest = dg;
        return res;
      }
      queue.push(State{sc, order++, std::move(next), std::move(moves)});
    }
  }
  fail(Err::BudgetExhausted, "no slide sequence within budget " + std::to_string(budget));
}

CombinatorialMap replay(const CombinatorialMap& initial, const SlideTrace& trace) {
  require(map_digest(initial) == trace.initial_digest, Err::ValidationFailed,
          "replay initial digest mismatch");
  CombinatorialMap m = initial;
  for (const SlideMove& mv : trace.moves)
    m = is_arc_label(mv.mover.family) ? slide_arc(m, mv) : slide_curve(m, mv);
  require(map_digest(m) == trace.final_digest, Err::ValidationFailed,
          "replay final digest mismatch");
  return m;
}

DeriveResult derive_arced_diagram(const RelativeTrisectionDiagram& d, int budget,
                                  const SearchOptions& opts) {
  const CombinatorialMap& m0 = d.map;
  require(m0.find_family(FamilyLabel::arc_a), Err::ValidationFailed, "no a arcs");
  {
    auto xn = intersection_numbers(m0, FamilyLabel::arc_a, FamilyLabel::alpha);
    for (const auto& row : xn.geometric)
      for (long long x : row)
        require(x == 0, Err::ValidationFailed, "a arcs meet alpha");
  }
  CombinatorialMap with_b = add_arc_translates(m0, FamilyLabel::arc_a, FamilyLabel::arc_b);
  auto red_b = reduce_intersections(with_b, FamilyLabel::arc_b, FamilyLabel::beta,
                                    FamilyLabel::alpha, budget, opts);
  CombinatorialMap with_c =
      add_arc_translates(red_b.map, FamilyLabel::arc_b, FamilyLabel::arc_c);
  auto red_c = reduce_intersections(with_c, FamilyLabel::arc_c, FamilyLabel::gamma,
                                    FamilyLabel::beta, budget, opts);

  DeriveResult out;
  out.diagram.base.map = red_c.map;
  out.diagram.base.params = d.params;
  out.diagram.endpoint_order = derive_endpoint_order(red_c.map);
  out.trace_b = red_b.trace;
  out.trace_c = red_c.trace;
  Report rep = validate_arced(out.diagram);
  require(rep.ok(), Err::ValidationFailed, "derived diagram invalid:\n" + rep.summary());
  return out;
}

}  // namespace trisect
