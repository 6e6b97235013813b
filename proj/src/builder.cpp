#include "trisect/builder.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace trisect {

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

MapBuilder::MapBuilder(const CombinatorialMap& m) {
  const int n = m.half_edges();
  next_.resize(n);
  prev_.resize(n);
  twin_.resize(n);
  vertex_.resize(n);
  boundary_side_.resize(n);
  alive_.assign(n, 1);
  for (HalfEdge h = 0; h < n; h++) {
    next_[h] = m.next(h);
    prev_[h] = m.prev(h);
    twin_[h] = m.twin(h);
    vertex_[h] = m.vertex(h);
    boundary_side_[h] = m.boundary_side(h) ? 1 : 0;
  }
  vertex_counter_ = m.vertices();
  families_ = m.families();
  for (auto& fam : families_)
    for (auto& mem : fam.members)
      if (mem.free_loop()) mem.free_host = m.face_rep(mem.free_host);
  if (m.basepoint()) basepoint_side_ = m.face_rep(*m.basepoint());
}

int MapBuilder::degree(VertexId v) const {
  int d = 0;
  for (HalfEdge h = 0; h < (HalfEdge)next_.size(); h++)
    if (alive_[h] && vertex_[h] == v) d++;
  return d;
}

std::vector<HalfEdge> MapBuilder::spokes(VertexId v) const {
  std::vector<HalfEdge> out;
  HalfEdge start = -1;
  for (HalfEdge h = 0; h < (HalfEdge)next_.size(); h++)
    if (alive_[h] && vertex_[h] == v) {
      start = h;
      break;
    }
  if (start < 0) return out;
  HalfEdge g = start;
  do {
    out.push_back(g);
    g = next_[g];
  } while (g != start);
  return out;
}

bool MapBuilder::same_face_orbit(HalfEdge h, HalfEdge g) const {
  HalfEdge x = h;
  do {
    if (x == g) return true;
    x = prev_[twin_[x]];
  } while (x != h);
  return false;
}

VertexId MapBuilder::new_vertex() { return vertex_counter_++; }

HalfEdge MapBuilder::alloc_half() {
  next_.push_back(-1);
  prev_.push_back(-1);
  twin_.push_back(-1);
  vertex_.push_back(-1);
  boundary_side_.push_back(0);
  alive_.push_back(1);
  return static_cast<HalfEdge>(next_.size() - 1);
}

void MapBuilder::set_raw(HalfEdge h, HalfEdge nx, HalfEdge pv, HalfEdge tw, VertexId v,
                         bool bside) {
  next_[h] = nx;
  prev_[h] = pv;
  twin_[h] = tw;
  vertex_[h] = v;
  boundary_side_[h] = bside ? 1 : 0;
}

void MapBuilder::set_cycle(const std::vector<HalfEdge>& rot, VertexId v) {
  const int k = static_cast<int>(rot.size());
  for (int i = 0; i < k; i++) {
    next_[rot[i]] = rot[(i + 1) % k];
    prev_[rot[(i + 1) % k]] = rot[i];
    vertex_[rot[i]] = v;
  }
}

void MapBuilder::rotation_insert_after(HalfEdge spot, HalfEdge h) {
  next_[h] = next_[spot];
  prev_[next_[spot]] = h;
  next_[spot] = h;
  prev_[h] = spot;
  vertex_[h] = vertex_[spot];
}

void MapBuilder::rotation_remove(HalfEdge h) {
  if (next_[h] == h) return;
  next_[prev_[h]] = next_[h];
  prev_[next_[h]] = prev_[h];
}

std::pair<HalfEdge, HalfEdge> MapBuilder::add_edge(Attach a, Attach b) {
  HalfEdge h1 = alloc_half();
  HalfEdge h2 = alloc_half();
  twin_[h1] = h2;
  twin_[h2] = h1;
  auto attach = [&](HalfEdge h, const Attach& at) {
    if (at.after >= 0) {
      require(alive_[at.after] && vertex_[at.after] == at.v, Err::InternalError,
              "attach spoke not at vertex");
      rotation_insert_after(at.after, h);
    } else {
      vertex_[h] = at.v;
      next_[h] = h;
      prev_[h] = h;
    }
  };
  attach(h1, a);
  if (b.after < 0 && b.v == a.v)
    rotation_insert_after(h1, h2);  // loop on a previously isolated vertex
  else
    attach(h2, b);
  return {h1, h2};
}

std::pair<VertexId, HalfEdge> MapBuilder::split_edge(HalfEdge h) {
  require(alive_[h], Err::InternalError, "split of a dead edge");
  HalfEdge t = twin_[h];
  VertexId mid = new_vertex();
  HalfEdge t1 = alloc_half();  // mid -> tail(h)
  HalfEdge h2 = alloc_half();  // mid -> head(h)
  twin_[h] = t1;
  twin_[t1] = h;
  twin_[h2] = t;
  twin_[t] = h2;
  vertex_[t1] = mid;
  vertex_[h2] = mid;
  next_[t1] = h2;
  prev_[h2] = t1;
  next_[h2] = t1;
  prev_[t1] = h2;
  boundary_side_[h2] = boundary_side_[h];
  boundary_side_[t1] = boundary_side_[t];
  replace_in_walks(h, {h, h2});
  replace_in_walks(t, {t, t1});
  return {mid, h2};
}

void MapBuilder::replace_in_walks(HalfEdge h, const std::vector<HalfEdge>& repl) {
  for (auto& fam : families_) {
    for (auto& mem : fam.members) {
      if (mem.free_loop()) continue;
      bool hit = false;
      for (HalfEdge x : mem.walk)
        if (x == h) {
          hit = true;
          break;
        }
      if (!hit) continue;
      std::vector<HalfEdge> out;
      out.reserve(mem.walk.size() + 1);
      for (HalfEdge x : mem.walk) {
        if (x == h)
          out.insert(out.end(), repl.begin(), repl.end());
        else
          out.push_back(x);
      }
      mem.walk = std::move(out);
    }
  }
}

void MapBuilder::delete_edge(HalfEdge h) {
  HalfEdge t = twin_[h];
  for (const auto& fam : families_)
    for (const auto& mem : fam.members)
      for (HalfEdge x : mem.walk)
        require(x != h && x != t, Err::InternalError, "deleting an edge in use");
  rotation_remove(h);
  rotation_remove(t);
  alive_[h] = alive_[t] = 0;
}

void MapBuilder::smooth_vertex(VertexId v) {
  auto sp = spokes(v);
  require(sp.size() == 2, Err::InternalError, "smoothing a non-2-valent vertex");
  HalfEdge s1 = sp[0], s2 = sp[1];
  require(twin_[s1] != s2, Err::InternalError, "smoothing a loop vertex");
  HalfEdge A = twin_[s1], B = twin_[s2];
  require(boundary_side_[A] == boundary_side_[s2] && boundary_side_[B] == boundary_side_[s1],
          Err::InternalError, "boundary flags disagree across smoothing");
  for (auto& fam : families_) {
    for (auto& mem : fam.members) {
      if (mem.free_loop() || mem.walk.empty()) continue;
      auto& w = mem.walk;
      bool closed = vertex_[w.front()] == vertex_[twin_[w.back()]];
      if (closed && w.size() > 1 && (w.front() == s1 || w.front() == s2))
        std::rotate(w.begin(), w.begin() + 1, w.end());
      std::vector<HalfEdge> out;
      for (size_t i = 0; i < w.size(); i++) {
        HalfEdge x = w[i];
        if (x == A || x == B) {
          HalfEdge expect = (x == A) ? s2 : s1;
          if (i + 1 < w.size() && w[i + 1] == expect) {
            out.push_back(x);
            i++;
            continue;
          }
        }
        require(x != s1 && x != s2, Err::InternalError, "walk stranded by smoothing");
        out.push_back(x);
      }
      w = std::move(out);
    }
  }
  twin_[A] = B;
  twin_[B] = A;
  alive_[s1] = alive_[s2] = 0;
}

CurveFamily& MapBuilder::family(FamilyLabel l) {
  for (auto& f : families_)
    if (f.label == l) return f;
  families_.push_back(CurveFamily{l, {}});
  return families_.back();
}

int MapBuilder::family_index(FamilyLabel l) const {
  for (int i = 0; i < (int)families_.size(); i++)
    if (families_[i].label == l) return i;
  return -1;
}

int MapBuilder::add_member(FamilyLabel l, Member member) {
  CurveFamily& f = family(l);
  f.members.push_back(std::move(member));
  return static_cast<int>(f.members.size()) - 1;
}

void MapBuilder::remove_member(MemberRef r, bool smooth_freed) {
  int fi = family_index(r.family);
  require(fi >= 0 && r.index < (int)families_[fi].members.size(), Err::UnknownFamily,
          "remove_member");
  Member doomed = families_[fi].members[r.index];
  families_[fi].members.erase(families_[fi].members.begin() + r.index);
  if (doomed.free_loop()) return;
  std::set<VertexId> verts;
  for (HalfEdge h : doomed.walk) verts.insert(vertex_[h]);
  verts.insert(vertex_[twin_[doomed.walk.back()]]);
  std::set<HalfEdge> in_use;
  for (const auto& fam : families_)
    for (const auto& mem : fam.members)
      for (HalfEdge h : mem.walk) in_use.insert(std::min(h, twin_[h]));
  std::set<HalfEdge> doomed_edges;
  for (HalfEdge h : doomed.walk) doomed_edges.insert(std::min(h, twin_[h]));
  for (HalfEdge e : doomed_edges)
    if (!in_use.count(e)) delete_edge(e);
  if (!smooth_freed) return;
  for (VertexId v : verts) {
    auto sp = spokes(v);
    if (sp.size() == 2 && twin_[sp[0]] != sp[1]) smooth_vertex(v);
  }
}

CombinatorialMap MapBuilder::finalize() const {
  const int n = static_cast<int>(next_.size());
  std::vector<HalfEdge> newid(n, -1);
  int count = 0;
  for (HalfEdge h = 0; h < n; h++) {
    if (!alive_[h] || newid[h] != -1) continue;
    require(alive_[twin_[h]], Err::InternalError, "half-dead edge at finalize");
    newid[h] = count++;
    newid[twin_[h]] = count++;
  }
  std::map<VertexId, VertexId> vmap;
  for (HalfEdge h = 0; h < n; h++)
    if (alive_[h]) vmap.emplace(vertex_[h], -1);
  {
    VertexId idx = 0;
    for (auto& [old_v, new_v] : vmap) new_v = idx++;
  }
  std::vector<HalfEdge> nx(count);
  std::vector<VertexId> vx(count);
  std::vector<uint8_t> bs(count);
  for (HalfEdge h = 0; h < n; h++) {
    if (!alive_[h]) continue;
    nx[newid[h]] = newid[next_[h]];
    vx[newid[h]] = vmap[vertex_[h]];
    bs[newid[h]] = boundary_side_[h];
  }
  CombinatorialMap base = CombinatorialMap::from_raw(nx, vx, bs, {});

  std::vector<CurveFamily> fams = families_;
  for (auto& fam : fams) {
    for (auto& mem : fam.members) {
      if (mem.free_loop()) {
        HalfEdge rep = mem.free_host;
        require(rep >= 0 && rep < n && alive_[rep], Err::DanglingFreeLoop,
                "free loop host vanished: " + mem.name);
        mem.free_host = base.face(newid[rep]);
      } else {
        for (auto& h : mem.walk) {
          require(alive_[h], Err::InternalError, "walk references a dead half-edge");
          h = newid[h];
        }
      }
    }
  }
  std::optional<FaceId> bp;
  if (basepoint_side_ >= 0) {
    require(alive_[basepoint_side_], Err::InternalError, "basepoint side vanished");
    bp = base.face(newid[basepoint_side_]);
  }
  return CombinatorialMap::from_raw(std::move(nx), std::move(vx), std::move(bs), std::move(fams),
                                    bp);
}

// ---------------------------------------------------------------------------
// Route drawing

namespace {

// Representative half-edge of the face owning the wedge after g.
HalfEdge wedge_face_rep(const MapBuilder& b, HalfEdge g) { return b.twin(b.next(g)); }

}  // namespace

std::vector<HalfEdge> draw_route(MapBuilder& b, const Route& route) {
  std::vector<HalfEdge> walk;
  VertexId cur_v = -1;
  HalfEdge cur_after = -1;
  HalfEdge first_entry_after = -1;
  VertexId first_v = -1;

  auto check_face = [&](HalfEdge target) {
    require(b.same_face_orbit(wedge_face_rep(b, cur_after), target), Err::InvalidBand,
            "route leaves its face corridor");
  };
  auto chord_to = [&](VertexId v2, HalfEdge after2) {
    auto [c1, c2] = b.add_edge({cur_v, cur_after}, {v2, after2});
    (void)c2;
    walk.push_back(c1);
  };

  if (route.closed) {
    require(!route.crossings.empty(), Err::InvalidBand, "closed route needs a crossing");
    require(!route.start && !route.end, Err::InvalidBand, "closed route with endpoints");
  } else {
    require(route.start && (route.end || route.end_auto), Err::InvalidBand,
            "open route needs endpoints");
    HalfEdge s = *route.start;
    require(b.alive(s) && b.boundary_side(b.twin(s)) && !b.boundary_side(s), Err::InvalidBand,
            "arc start not on the interior side of a boundary edge");
    auto [sv, s2] = b.split_edge(s);
    cur_v = sv;
    cur_after = s2;
  }

  bool first = true;
  for (HalfEdge g : route.crossings) {
    require(g >= 0 && g < b.half_edge_slots() && b.alive(g), Err::InvalidBand,
            "route crosses a dead edge");
    require(!b.boundary_edge_any(g), Err::InvalidBand, "route crosses the boundary");
    if (route.closed && first) {
      auto [mv, g2] = b.split_edge(g);
      first_v = mv;
      first_entry_after = g2;
      cur_v = mv;
      cur_after = b.twin(g);
      first = false;
      continue;
    }
    check_face(g);
    auto [mv, g2] = b.split_edge(g);
    chord_to(mv, g2);
    cur_v = mv;
    cur_after = b.twin(g);
    first = false;
  }

  if (route.closed) {
    require(b.same_face_orbit(wedge_face_rep(b, cur_after), wedge_face_rep(b, first_entry_after)),
            Err::InvalidBand, "closed route does not return to its starting face");
    chord_to(first_v, first_entry_after);
  } else {
    HalfEdge e = -1;
    if (route.end_auto) {
      HalfEdge rep = wedge_face_rep(b, cur_after);
      HalfEdge g = rep;
      do {
        if (b.boundary_edge_any(g) && !b.boundary_side(g)) {
          e = g;
          break;
        }
        g = b.prev(b.twin(g));
      } while (g != rep);
      require(e >= 0, Err::InvalidBand, "route ends in a face with no boundary edge");
    } else {
      e = *route.end;
    }
    require(b.alive(e) && b.boundary_side(b.twin(e)) && !b.boundary_side(e), Err::InvalidBand,
            "arc end not on the interior side of a boundary edge");
    check_face(e);
    auto [ev, e2] = b.split_edge(e);
    chord_to(ev, e2);
  }
  return walk;
}

Route translate_route(const CombinatorialMap& m, const std::vector<HalfEdge>& walk, bool closed,
                      int side) {
  std::vector<HalfEdge> W = walk;
  if (side < 0) {
    std::reverse(W.begin(), W.end());
    for (auto& h : W) h = m.twin(h);
  }
  const int k = static_cast<int>(W.size());
  Route route;
  route.closed = closed;

  auto fan_crossings = [&](HalfEdge u, HalfEdge w) {
    std::vector<HalfEdge> fan;
    HalfEdge g = m.next(w);
    while (g != u) {
      require(g != w, Err::InvalidBand, "degenerate strand");
      fan.push_back(g);
      g = m.next(g);
    }
    std::reverse(fan.begin(), fan.end());  // cross the spoke nearest u first
    for (HalfEdge x : fan)
      require(!m.boundary_edge(x), Err::InvalidBand, "translate would cross the boundary");
    return fan;
  };

  if (closed) {
    for (int i = 0; i < k; i++) {
      HalfEdge u = m.twin(W[(i + k - 1) % k]);
      auto fan = fan_crossings(u, W[i]);
      route.crossings.insert(route.crossings.end(), fan.begin(), fan.end());
    }
    require(!route.crossings.empty(), Err::InvalidBand, "translate meets nothing");
  } else {
    HalfEdge w0 = W[0];
    HalfEdge sb = m.next(w0);
    require(m.boundary_edge(sb), Err::InvalidBand, "arc start lacks a boundary edge on this side");
    route.start = m.twin(sb);
    for (int i = 1; i < k; i++) {
      HalfEdge u = m.twin(W[i - 1]);
      auto fan = fan_crossings(u, W[i]);
      route.crossings.insert(route.crossings.end(), fan.begin(), fan.end());
    }
    HalfEdge u_end = m.twin(W[k - 1]);
    HalfEdge eb = m.prev(u_end);
    require(m.boundary_edge(eb), Err::InvalidBand, "arc end lacks a boundary edge on this side");
    route.end = eb;
  }
  return route;
}

// ---------------------------------------------------------------------------
// Mirror

CombinatorialMap mirror(const CombinatorialMap& m) {
  const int n = m.half_edges();
  std::vector<HalfEdge> nx(n);
  std::vector<VertexId> vx(n);
  std::vector<uint8_t> bs(n);
  for (HalfEdge h = 0; h < n; h++) {
    nx[h] = m.prev(h);
    vx[h] = m.vertex(h);
    bs[h] = m.boundary_side(m.twin(h)) ? 1 : 0;
  }
  CombinatorialMap base = CombinatorialMap::from_raw(nx, vx, bs, {});
  std::vector<CurveFamily> fams = m.families();
  for (auto& fam : fams)
    for (auto& mem : fam.members)
      if (mem.free_loop()) mem.free_host = base.face(m.twin(m.face_rep(mem.free_host)));
  std::optional<FaceId> bp;
  if (m.basepoint()) bp = base.face(m.twin(m.face_rep(*m.basepoint())));
  return CombinatorialMap::from_raw(std::move(nx), std::move(vx), std::move(bs), std::move(fams),
                                    bp);
}

// ---------------------------------------------------------------------------
// Gluing

CombinatorialMap glue_boundaries(const CombinatorialMap& a, const CombinatorialMap& b,
                                 const std::vector<std::pair<HalfEdge, HalfEdge>>& matching,
                                 std::optional<HalfEdge> basepoint_corner_b) {
  const int na = a.half_edges();
  MapBuilder bd;
  {
    int hoff = 0, voff = 0;
    for (const CombinatorialMap* mp : {&a, &b}) {
      const CombinatorialMap& m = *mp;
      for (HalfEdge h = 0; h < m.half_edges(); h++) bd.alloc_half();
      for (HalfEdge h = 0; h < m.half_edges(); h++)
        bd.set_raw(hoff + h, hoff + m.next(h), hoff + m.prev(h), hoff + m.twin(h),
                   voff + m.vertex(h), m.boundary_side(h));
      for (const auto& fam : m.families()) {
        CurveFamily& dst = bd.family(fam.label);
        for (const auto& mem : fam.members) {
          Member copy = mem;
          if (copy.free_loop())
            copy.free_host = hoff + m.face_rep(mem.free_host);
          else
            for (auto& h : copy.walk) h += hoff;
          dst.members.push_back(std::move(copy));
        }
      }
      hoff += m.half_edges();
      voff += m.vertices();
      bd.bump_vertex_counter(voff);
    }
  }

  require(!matching.empty(), Err::InvalidParams, "empty gluing");
  struct GluePair {
    HalfEdge ha, hb, ia, ib;
  };
  std::vector<GluePair> pairs;
  std::set<FaceId> glued_a, glued_b;
  for (auto [ha, hb] : matching) {
    require(a.boundary_side(ha) && b.boundary_side(hb), Err::InvalidParams,
            "matching must pair outward boundary halves");
    glued_a.insert(a.face(ha));
    glued_b.insert(b.face(hb));
    pairs.push_back(GluePair{ha, static_cast<HalfEdge>(na + hb), a.twin(ha),
                             static_cast<HalfEdge>(na + b.twin(hb))});
  }
  {
    std::set<HalfEdge> matched;
    for (const auto& p : pairs) {
      matched.insert(p.ha);
      matched.insert(p.hb);
    }
    for (FaceId f : glued_a)
      for (HalfEdge h : a.face_halves(f))
        require(matched.count(h), Err::InvalidParams, "partially matched boundary circle");
    for (FaceId f : glued_b)
      for (HalfEdge h : b.face_halves(f))
        require(matched.count(static_cast<HalfEdge>(na + h)), Err::InvalidParams,
                "partially matched boundary circle");
  }

  // Vertex identification: tail(ha) == head(hb), head(ha) == tail(hb).
  UF vuf(a.vertices() + b.vertices());
  std::set<VertexId> circle_vertices;
  for (const auto& p : pairs) {
    VertexId ta = bd.vertex(p.ha), ha_head = bd.vertex(bd.twin(p.ha));
    VertexId tb = bd.vertex(p.hb), hb_head = bd.vertex(bd.twin(p.hb));
    vuf.unite(ta, hb_head);
    vuf.unite(ha_head, tb);
    circle_vertices.insert({ta, ha_head, tb, hb_head});
  }
  std::map<int, std::vector<VertexId>> groups;
  for (VertexId v : circle_vertices) groups[vuf.find(v)].push_back(v);

  // Drop the outward halves from the rotations, then mark them dead. Their
  // boundary flags stay readable for the outside-wedge test below.
  for (const auto& p : pairs) {
    bd.rotation_remove(p.ha);
    bd.rotation_remove(p.hb);
  }
  for (const auto& p : pairs) {
    bd.kill_half(p.ha);
    bd.kill_half(p.hb);
  }

  auto outside = [&](HalfEdge g) { return bd.boundary_side(bd.twin(bd.next(g))); };
  for (auto& [root, vs] : groups) {
    require(vs.size() == 2, Err::ArcMirrorMismatch, "gluing merges more than two vertices");
    HalfEdge X[2] = {-1, -1};
    for (int i = 0; i < 2; i++) {
      auto sp = bd.spokes(vs[i]);
      require(!sp.empty(), Err::InvalidParams, "boundary vertex lost all spokes");
      int found = 0;
      for (HalfEdge g : sp)
        if (outside(g)) {
          X[i] = g;
          found++;
        }
      require(found == 1, Err::InvalidParams, "no unique outside wedge at a glued vertex");
    }
    HalfEdge Y0 = bd.next(X[0]), Y1 = bd.next(X[1]);
    bd.splice_next(X[0], Y1);
    bd.splice_next(X[1], Y0);
    VertexId keep = std::min(vs[0], vs[1]);
    HalfEdge g = X[0];
    do {
      bd.set_vertex(g, keep);
      g = bd.next(g);
    } while (g != X[0]);
  }
  for (const auto& p : pairs) {
    bd.set_twin(p.ia, p.ib);
    bd.set_twin(p.ib, p.ia);
    bd.set_boundary_side(p.ia, false);
    bd.set_boundary_side(p.ib, false);
  }

  if (basepoint_corner_b) {
    HalfEdge g = static_cast<HalfEdge>(na + *basepoint_corner_b);
    require(bd.alive(g), Err::InvalidParams, "basepoint corner died in the gluing");
    bd.set_basepoint_side(bd.twin(bd.next(g)));
  }
  return bd.finalize();
}

// ---------------------------------------------------------------------------
// restrict_to / surger

CombinatorialMap restrict_to(const CombinatorialMap& m, const std::vector<FamilyLabel>& keep) {
  std::set<FamilyLabel> keep_set;
  for (FamilyLabel l : keep) {
    require(m.find_family(l) != nullptr, Err::UnknownFamily, label_name(l));
    keep_set.insert(l);
  }
  SurfaceStats before = validate_map(m);

  MapBuilder b(m);
  std::set<VertexId> freed;
  for (const auto& fam : m.families()) {
    if (keep_set.count(fam.label)) continue;
    for (int i = (int)fam.members.size() - 1; i >= 0; i--) {
      const Member& mem = fam.members[i];
      for (HalfEdge h : mem.walk) {
        freed.insert(m.vertex(h));
        freed.insert(m.head(h));
      }
      b.remove_member(MemberRef{fam.label, i}, false);
    }
  }
  // Faces merge exactly across the deleted edges.
  UF fuf(m.faces());
  for (HalfEdge h = 0; h < m.half_edges(); h += 2)
    if (!b.alive(h)) fuf.unite(m.face(h), m.face(m.twin(h)));

  for (VertexId v : freed) {
    auto sp = b.spokes(v);
    if (sp.size() == 2 && b.twin(sp[0]) != sp[1]) b.smooth_vertex(v);
  }

  // Kept members reduced to isolated loops become free loops.
  for (auto& fam : b.families()) {
    for (auto& mem : fam.members) {
      if (mem.free_loop() || mem.walk.size() != 1) continue;
      HalfEdge h = mem.walk[0];
      VertexId v = b.vertex(h);
      auto sp = b.spokes(v);
      if (!(sp.size() == 2 && b.twin(sp[0]) == sp[1])) continue;
      fuf.unite(m.face(h), m.face(b.twin(h)));
      int cls = fuf.find(m.face(h));
      mem.walk.clear();
      b.delete_edge(h);
      HalfEdge rep = -1;
      for (HalfEdge g = 0; g < m.half_edges(); g++)
        if (b.alive(g) && fuf.find(m.face(g)) == cls) {
          rep = g;
          break;
        }
      require(rep >= 0, Err::DanglingFreeLoop, "free loop lost its host surface: " + mem.name);
      mem.free_host = rep;
    }
  }
  // Remap hosts of surviving free loops through the merge.
  for (auto& fam : b.families()) {
    for (auto& mem : fam.members) {
      if (!mem.free_loop()) continue;
      HalfEdge rep = mem.free_host;
      if (b.alive(rep)) continue;
      int cls = fuf.find(m.face(rep));
      HalfEdge pick = -1;
      for (HalfEdge g = 0; g < m.half_edges(); g++)
        if (b.alive(g) && fuf.find(m.face(g)) == cls) {
          pick = g;
          break;
        }
      require(pick >= 0, Err::DanglingFreeLoop, "free loop host erased");
      mem.free_host = pick;
    }
  }
  if (m.basepoint()) {
    int cls = fuf.find(*m.basepoint());
    HalfEdge pick = -1;
    for (HalfEdge g = 0; g < m.half_edges(); g++)
      if (b.alive(g) && fuf.find(m.face(g)) == cls) {
        pick = g;
        break;
      }
    require(pick >= 0, Err::InvariantError, "basepoint region erased");
    b.set_basepoint_side(pick);
  }

  // Erased families disappear entirely.
  auto& fams = b.families();
  fams.erase(std::remove_if(fams.begin(), fams.end(),
                            [&](const CurveFamily& f) { return !keep_set.count(f.label); }),
             fams.end());

  CombinatorialMap out = b.finalize();
  SurfaceStats after = validate_map(out);
  require(after == before, Err::InvariantError,
          "restriction changed the underlying surface: " + before.str() + " -> " + after.str());
  return out;
}

CombinatorialMap surger(const CombinatorialMap& m, FamilyLabel family) {
  const CurveFamily& fam = m.family(family);
  std::set<VertexId> locus_vertices;
  for (const auto& mem : fam.members)
    for (HalfEdge h : mem.walk) locus_vertices.insert(m.vertex(h));
  for (const auto& other : m.families()) {
    if (other.label == family) continue;
    for (const auto& mem : other.members)
      for (HalfEdge h : mem.walk)
        require(!locus_vertices.count(m.vertex(h)) && !locus_vertices.count(m.head(h)),
                Err::CurveMeetsSurgeryLocus,
                std::string(label_name(other.label)) + " member " + mem.name);
  }

  MapBuilder b(m);
  int fi = b.family_index(family);
  std::vector<Member> members = b.families()[fi].members;
  b.families()[fi].members.clear();

  for (const Member& mem : members) {
    if (mem.free_loop()) {
      // Compressing a loop inside a disk region splits off a sphere.
      VertexId v = b.new_vertex();
      b.add_edge({v, -1}, {v, -1});
      continue;
    }
    const auto& W = mem.walk;
    require(m.walk_is_closed(W), Err::ArcInFamily, mem.name);
    const int k = static_cast<int>(W.size());
    std::vector<HalfEdge> u(k);
    std::vector<VertexId> vl(k), vr(k);
    for (int i = 0; i < k; i++) {
      u[i] = b.twin(W[(i + k - 1) % k]);
      vl[i] = b.vertex(W[i]);
      vr[i] = b.new_vertex();
    }
    std::vector<HalfEdge> L1(k), L2(k), R1(k), R2(k);
    for (int i = 0; i < k; i++) {
      L1[i] = b.alloc_half();
      L2[i] = b.alloc_half();
      R1[i] = b.alloc_half();
      R2[i] = b.alloc_half();
    }
    for (int i = 0; i < k; i++) {
      int ip = (i + k - 1) % k;
      std::vector<HalfEdge> left_fan, right_fan;
      for (HalfEdge g = b.next(W[i]); g != u[i]; g = b.next(g)) left_fan.push_back(g);
      for (HalfEdge g = b.next(u[i]); g != W[i]; g = b.next(g)) right_fan.push_back(g);
      std::vector<HalfEdge> lrot{L1[i]};
      lrot.insert(lrot.end(), left_fan.begin(), left_fan.end());
      lrot.push_back(L2[ip]);
      std::vector<HalfEdge> rrot{R1[i], R2[ip]};
      rrot.insert(rrot.end(), right_fan.begin(), right_fan.end());
      b.set_cycle(lrot, vl[i]);
      b.set_cycle(rrot, vr[i]);
    }
    for (int i = 0; i < k; i++) {
      b.set_twin(L1[i], L2[i]);
      b.set_twin(L2[i], L1[i]);
      b.set_twin(R1[i], R2[i]);
      b.set_twin(R2[i], R1[i]);
    }
    for (int i = 0; i < k; i++) b.kill_edge_keep_rotation(W[i]);
  }
  return b.finalize();
}

CombinatorialMap surger_keeping(const CombinatorialMap& m, FamilyLabel family,
                                const std::vector<FamilyLabel>& keep) {
  std::vector<FamilyLabel> with = keep;
  if (std::find(with.begin(), with.end(), family) == with.end()) with.push_back(family);
  return surger(restrict_to(m, with), family);
}

}  // namespace trisect
