#include "trisect/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace trisect {

const char* err_name(Err e) {
  switch (e) {
    case Err::NonInvolutiveTwin: return "NonInvolutiveTwin";
    case Err::UnorientedRotation: return "UnorientedRotation";
    case Err::DanglingFreeLoop: return "DanglingFreeLoop";
    case Err::NonTransverseVertex: return "NonTransverseVertex";
    case Err::UnknownFamily: return "UnknownFamily";
    case Err::FamilyNotDisjoint: return "FamilyNotDisjoint";
    case Err::ArcInFamily: return "ArcInFamily";
    case Err::CurveMeetsSurgeryLocus: return "CurveMeetsSurgeryLocus";
    case Err::InvalidBand: return "InvalidBand";
    case Err::FamilyCollision: return "FamilyCollision";
    case Err::EndpointMoved: return "EndpointMoved";
    case Err::BudgetExhausted: return "BudgetExhausted";
    case Err::ValidationFailed: return "ValidationFailed";
    case Err::ArcMirrorMismatch: return "ArcMirrorMismatch";
    case Err::InvalidParams: return "InvalidParams";
    case Err::NotClosed: return "NotClosed";
    case Err::NotFullCutSystem: return "NotFullCutSystem";
    case Err::CapExceeded: return "CapExceeded";
    case Err::BasepointOnCurve: return "BasepointOnCurve";
    case Err::AmbiguousCorner: return "AmbiguousCorner";
    case Err::MissingCorner: return "MissingCorner";
    case Err::ArcCountMismatch: return "ArcCountMismatch";
    case Err::CutGenusMismatch: return "CutGenusMismatch";
    case Err::SyntaxError: return "SyntaxError";
    case Err::SchemaError: return "SchemaError";
    case Err::InvariantError: return "InvariantError";
    case Err::InternalError: return "InternalError";
  }
  return "UnknownError";
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& it : items) {
    os << (it.pass ? "pass " : "FAIL ") << it.check;
    if (!it.detail.empty()) os << " (" << it.detail << ")";
    os << "\n";
  }
  return os.str();
}

const char* label_name(FamilyLabel l) {
  switch (l) {
    case FamilyLabel::alpha: return "alpha";
    case FamilyLabel::beta: return "beta";
    case FamilyLabel::gamma: return "gamma";
    case FamilyLabel::arc_a: return "a";
    case FamilyLabel::arc_b: return "b";
    case FamilyLabel::arc_c: return "c";
  }
  return "?";
}

std::optional<FamilyLabel> label_from_name(const std::string& s) {
  if (s == "alpha") return FamilyLabel::alpha;
  if (s == "beta") return FamilyLabel::beta;
  if (s == "gamma") return FamilyLabel::gamma;
  if (s == "a") return FamilyLabel::arc_a;
  if (s == "b") return FamilyLabel::arc_b;
  if (s == "c") return FamilyLabel::arc_c;
  return std::nullopt;
}

bool is_arc_label(FamilyLabel l) {
  return l == FamilyLabel::arc_a || l == FamilyLabel::arc_b || l == FamilyLabel::arc_c;
}

std::string SurfaceStats::str() const {
  std::ostringstream os;
  os << "components=" << components << " euler=" << euler << " [";
  for (int i = 0; i < components; i++) {
    if (i) os << ", ";
    os << "g" << genus_per_component[i] << "b" << boundary_per_component[i];
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// CombinatorialMap

CombinatorialMap CombinatorialMap::from_raw(std::vector<HalfEdge> next, std::vector<VertexId> vertex,
                                            std::vector<uint8_t> boundary_side,
                                            std::vector<CurveFamily> families,
                                            std::optional<FaceId> basepoint) {
  CombinatorialMap m;
  m.next_ = std::move(next);
  m.vertex_ = std::move(vertex);
  m.boundary_side_ = std::move(boundary_side);
  m.families_ = std::move(families);
  const size_t n = m.next_.size();
  require(n % 2 == 0, Err::InvariantError, "odd half-edge count");
  require(m.vertex_.size() == n && m.boundary_side_.size() == n, Err::InvariantError,
          "half-edge array size mismatch");
  m.build_caches();
  if (basepoint) {
    require(*basepoint >= 0 && *basepoint < m.faces() && !m.boundary_face(*basepoint),
            Err::InvariantError, "basepoint face invalid");
    m.basepoint_ = basepoint;
  }
  // Walk sanity: chained half-edges in range.
  for (const auto& fam : m.families_) {
    for (const auto& mem : fam.members) {
      if (mem.free_loop()) {
        require(mem.walk.empty(), Err::InvariantError, "free loop with walk");
        require(mem.free_host < m.faces() && !m.boundary_face(mem.free_host),
                Err::DanglingFreeLoop, "host face missing for " + mem.name);
        continue;
      }
      require(!mem.walk.empty(), Err::InvariantError, "empty walk " + mem.name);
      for (size_t i = 0; i < mem.walk.size(); i++) {
        HalfEdge h = mem.walk[i];
        require(h >= 0 && h < (HalfEdge)n, Err::InvariantError, "walk half-edge out of range");
        if (i + 1 < mem.walk.size())
          require(m.head(h) == m.vertex(mem.walk[i + 1]), Err::InvariantError,
                  "walk not chained in " + mem.name);
      }
    }
  }
  return m;
}

void CombinatorialMap::build_caches() {
  const int n = half_edges();
  prev_.assign(n, -1);
  for (HalfEdge h = 0; h < n; h++) {
    HalfEdge nx = next_[h];
    require(nx >= 0 && nx < n, Err::UnorientedRotation, "next out of range");
    require(prev_[nx] == -1, Err::UnorientedRotation, "rotation not a permutation");
    prev_[nx] = h;
    require(vertex_[nx] == vertex_[h], Err::UnorientedRotation, "rotation crosses vertices");
  }
  // Vertices contiguous, with representatives.
  vertex_count_ = 0;
  for (HalfEdge h = 0; h < n; h++) vertex_count_ = std::max(vertex_count_, vertex_[h] + 1);
  vertex_rep_.assign(vertex_count_, -1);
  for (HalfEdge h = n - 1; h >= 0; h--) vertex_rep_[vertex_[h]] = h;
  for (VertexId v = 0; v < vertex_count_; v++)
    require(vertex_rep_[v] >= 0, Err::InvariantError, "vertex ids not contiguous");
  // Faces: orbits of h -> prev(twin(h)), numbered by smallest member.
  face_of_.assign(n, -1);
  face_rep_.clear();
  face_degree_.clear();
  face_boundary_.clear();
  interior_face_count_ = 0;
  for (HalfEdge h = 0; h < n; h++) {
    if (face_of_[h] != -1) continue;
    FaceId f = static_cast<FaceId>(face_rep_.size());
    face_rep_.push_back(h);
    int deg = 0;
    bool any_b = false, all_b = true;
    HalfEdge g = h;
    do {
      face_of_[g] = f;
      deg++;
      if (boundary_side_[g]) any_b = true;
      else all_b = false;
      g = prev_[g ^ 1];
    } while (g != h);
    require(!any_b || all_b, Err::InvariantError, "mixed boundary flags in one face orbit");
    face_degree_.push_back(deg);
    face_boundary_.push_back(any_b ? 1 : 0);
    if (!any_b) interior_face_count_++;
  }
}

bool CombinatorialMap::boundary_vertex(VertexId v) const {
  HalfEdge h = vertex_rep_[v];
  HalfEdge g = h;
  do {
    if (boundary_edge(g)) return true;
    g = next_[g];
  } while (g != h);
  return false;
}

std::vector<HalfEdge> CombinatorialMap::face_halves(FaceId f) const {
  std::vector<HalfEdge> out;
  HalfEdge h = face_rep_[f];
  HalfEdge g = h;
  do {
    out.push_back(g);
    g = prev_[g ^ 1];
  } while (g != h);
  return out;
}

int CombinatorialMap::degree(VertexId v) const {
  int d = 0;
  HalfEdge h = vertex_rep_[v], g = h;
  do {
    d++;
    g = next_[g];
  } while (g != h);
  return d;
}

std::vector<HalfEdge> CombinatorialMap::spokes(VertexId v) const {
  std::vector<HalfEdge> out;
  HalfEdge h = vertex_rep_[v], g = h;
  do {
    out.push_back(g);
    g = next_[g];
  } while (g != h);
  return out;
}

const CurveFamily* CombinatorialMap::find_family(FamilyLabel l) const {
  for (const auto& f : families_)
    if (f.label == l) return &f;
  return nullptr;
}

const CurveFamily& CombinatorialMap::family(FamilyLabel l) const {
  const CurveFamily* f = find_family(l);
  require(f != nullptr, Err::UnknownFamily, label_name(l));
  return *f;
}

CombinatorialMap CombinatorialMap::with_basepoint(FaceId f) const {
  CombinatorialMap m = *this;
  require(f >= 0 && f < faces() && !boundary_face(f), Err::InvariantError, "bad basepoint");
  m.basepoint_ = f;
  return m;
}

CombinatorialMap CombinatorialMap::with_families(std::vector<CurveFamily> fams) const {
  return from_raw(next_, vertex_, boundary_side_, std::move(fams), basepoint_);
}

std::vector<std::vector<MemberRef>> CombinatorialMap::edge_users() const {
  std::vector<std::vector<MemberRef>> users(edges());
  for (const auto& fam : families_)
    for (int i = 0; i < (int)fam.members.size(); i++)
      for (HalfEdge h : fam.members[i].walk) {
        auto& u = users[h / 2];
        MemberRef r{fam.label, i};
        if (u.empty() || !(u.back() == r)) u.push_back(r);
      }
  return users;
}

bool CombinatorialMap::walk_is_closed(const std::vector<HalfEdge>& walk) const {
  return !walk.empty() && head(walk.back()) == vertex(walk.front());
}

// ---------------------------------------------------------------------------
// Strands and intersections

std::vector<Strand> member_strands(const CombinatorialMap& m, const Member& mem) {
  std::vector<Strand> out;
  if (mem.free_loop()) return out;
  const auto& w = mem.walk;
  const int k = static_cast<int>(w.size());
  const bool closed = m.walk_is_closed(w);
  for (int i = 0; i < k; i++) {
    if (i == 0 && !closed) continue;
    HalfEdge arr = w[(i + k - 1) % k];
    out.push_back(Strand{m.twin(arr), w[i], m.vertex(w[i]), i});
  }
  return out;
}

bool ccw_between(const CombinatorialMap& m, HalfEdge from, HalfEdge to, HalfEdge g) {
  HalfEdge cur = m.next(from);
  while (cur != to) {
    if (cur == g) return true;
    if (cur == from) return false;  // safety
    cur = m.next(cur);
  }
  return false;
}

int crossing_sign(const CombinatorialMap& m, const Strand& a, const Strand& b) {
  if (a.vertex != b.vertex) return 0;
  // Shared spokes mean shared edges, never a transverse crossing.
  if (a.u == b.u || a.u == b.w || a.w == b.u || a.w == b.w) return 0;
  bool u_left = ccw_between(m, a.w, a.u, b.u);
  bool w_left = ccw_between(m, a.w, a.u, b.w);
  if (u_left == w_left) return 0;  // nested, no crossing
  return u_left ? +1 : -1;
}

namespace {

bool same_edge_set(const Member& x, const Member& y) {
  if (x.free_loop() || y.free_loop()) return false;
  std::set<EdgeId> a, b;
  for (HalfEdge h : x.walk) a.insert(h / 2);
  for (HalfEdge h : y.walk) b.insert(h / 2);
  return a == b;
}

}  // namespace

IntersectionData intersection_numbers(const CombinatorialMap& m, FamilyLabel la, FamilyLabel lb) {
  const CurveFamily& A = m.family(la);
  const CurveFamily& B = m.family(lb);
  const int na = static_cast<int>(A.members.size());
  const int nb = static_cast<int>(B.members.size());
  IntersectionData out;
  out.geometric.assign(na, std::vector<long long>(nb, 0));
  out.algebraic.assign(na, std::vector<long long>(nb, 0));

  // Strands grouped per vertex for each member.
  auto strands_by_vertex = [&](const Member& mem) {
    std::map<VertexId, std::vector<Strand>> g;
    for (const Strand& s : member_strands(m, mem)) g[s.vertex].push_back(s);
    return g;
  };
  std::vector<std::map<VertexId, std::vector<Strand>>> sa(na), sb(nb);
  for (int i = 0; i < na; i++) sa[i] = strands_by_vertex(A.members[i]);
  for (int j = 0; j < nb; j++) sb[j] = strands_by_vertex(B.members[j]);

  for (int i = 0; i < na; i++) {
    for (int j = 0; j < nb; j++) {
      if (la == lb && i == j) continue;
      if (same_edge_set(A.members[i], B.members[j])) continue;  // coincident copies
      // Shared edges outside the identical case are tangencies.
      std::set<EdgeId> ea;
      for (HalfEdge h : A.members[i].walk) ea.insert(h / 2);
      for (HalfEdge h : B.members[j].walk)
        require(!ea.count(h / 2), Err::NonTransverseVertex,
                "members share edges: " + A.members[i].name + ", " + B.members[j].name);
      for (const auto& [v, as] : sa[i]) {
        auto it = sb[j].find(v);
        if (it == sb[j].end()) continue;
        for (const Strand& x : as) {
          for (const Strand& y : it->second) {
            int s = crossing_sign(m, x, y);
            require(s != 0, Err::NonTransverseVertex,
                    "tangent strands at vertex " + std::to_string(v));
            out.geometric[i][j] += 1;
            out.algebraic[i][j] += s;
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// validate_map

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

SurfaceStats validate_map(const CombinatorialMap& m) {
  const int n = m.half_edges();
  require(n > 0, Err::InvariantError, "empty map");

  // Components over vertices.
  UnionFind uf(m.vertices());
  for (HalfEdge h = 0; h < n; h += 2) uf.unite(m.vertex(h), m.vertex(h ^ 1));

  std::map<int, int> comp_index;  // root -> component id (ordered by smallest vertex)
  for (VertexId v = 0; v < m.vertices(); v++) {
    int r = uf.find(v);
    if (!comp_index.count(r)) comp_index[r] = 0;
  }
  {
    int idx = 0;
    for (auto& [root, id] : comp_index) id = idx++;
  }
  const int nc = static_cast<int>(comp_index.size());
  std::vector<long long> V(nc, 0), E(nc, 0), F(nc, 0), B(nc, 0);
  for (VertexId v = 0; v < m.vertices(); v++) V[comp_index[uf.find(v)]]++;
  for (HalfEdge h = 0; h < n; h += 2) E[comp_index[uf.find(m.vertex(h))]]++;
  for (FaceId f = 0; f < m.faces(); f++) {
    int c = comp_index[uf.find(m.vertex(m.face_rep(f)))];
    if (m.boundary_face(f)) B[c]++;
    else F[c]++;
  }

  SurfaceStats st;
  st.components = nc;
  for (int c = 0; c < nc; c++) {
    long long chi = V[c] - E[c] + F[c];
    long long g2 = 2 - chi - B[c];
    require(g2 >= 0 && g2 % 2 == 0, Err::UnorientedRotation,
            "euler characteristic inconsistent with an oriented surface");
    st.genus_per_component.push_back(static_cast<int>(g2 / 2));
    st.boundary_per_component.push_back(static_cast<int>(B[c]));
    st.euler += chi;
  }

  // Boundary faces must be embedded circles (each vertex visited once).
  for (FaceId f = 0; f < m.faces(); f++) {
    if (!m.boundary_face(f)) continue;
    std::set<VertexId> seen;
    for (HalfEdge h : m.face_halves(f))
      require(seen.insert(m.vertex(h)).second, Err::InvariantError,
              "boundary face revisits a vertex");
  }

  // Family invariants.
  struct VertexUse {
    MemberRef ref;
    Strand strand;
  };
  std::map<VertexId, std::vector<VertexUse>> uses;
  for (const auto& fam : m.families()) {
    for (int i = 0; i < (int)fam.members.size(); i++) {
      const Member& mem = fam.members[i];
      if (mem.free_loop()) {
        require(!m.boundary_face(mem.free_host), Err::DanglingFreeLoop,
                "free loop hosted on boundary face");
        continue;
      }
      bool closed = m.walk_is_closed(mem.walk);
      if (is_arc_label(fam.label)) {
        require(!closed || mem.walk.size() == 0, Err::InvariantError,
                "arc member is a closed walk: " + mem.name);
        VertexId s = m.vertex(mem.walk.front());
        VertexId e = m.head(mem.walk.back());
        require(m.boundary_vertex(s) && m.boundary_vertex(e), Err::InvariantError,
                "arc endpoints not on the boundary: " + mem.name);
      } else {
        require(closed, Err::InvariantError, "curve member is not closed: " + mem.name);
      }
      // Embedded: vertices along the walk distinct.
      std::set<VertexId> seen;
      for (size_t k = 0; k < mem.walk.size(); k++)
        require(seen.insert(m.vertex(mem.walk[k])).second, Err::InvariantError,
                "walk revisits a vertex: " + mem.name);
      if (!closed) {
        require(!seen.count(m.head(mem.walk.back())), Err::InvariantError,
                "walk revisits a vertex: " + mem.name);
      }
      for (const Strand& s : member_strands(m, mem))
        uses[s.vertex].push_back({MemberRef{fam.label, i}, s});
    }
    // Pairwise disjoint members within one family.
    for (int i = 0; i < (int)fam.members.size(); i++) {
      for (int j = i + 1; j < (int)fam.members.size(); j++) {
        std::set<VertexId> vi;
        for (HalfEdge h : fam.members[i].walk) vi.insert(m.vertex(h));
        if (!m.walk_is_closed(fam.members[i].walk) && !fam.members[i].walk.empty())
          vi.insert(m.head(fam.members[i].walk.back()));
        for (HalfEdge h : fam.members[j].walk)
          require(!vi.count(m.vertex(h)), Err::FamilyNotDisjoint,
                  std::string(label_name(fam.label)) + " members touch");
      }
    }
  }

  // Transversality where members of different families meet.
  for (const auto& [v, us] : uses) {
    std::set<std::pair<int, int>> distinct;
    for (const auto& u : us) distinct.insert({static_cast<int>(u.ref.family), u.ref.index});
    if (distinct.size() < 2) continue;
    std::vector<VertexUse> parties;
    for (const auto& u : us) parties.push_back(u);
    // Exempt coincident copies (identical edge sets) pairwise.
    bool all_coincident = true;
    for (size_t i = 0; i + 1 < parties.size() && all_coincident; i++)
      all_coincident = same_edge_set(m.member(parties[i].ref), m.member(parties[i + 1].ref));
    if (all_coincident) continue;
    require(parties.size() == 2, Err::NonTransverseVertex,
            "more than two strands at vertex " + std::to_string(v));
    require(parties[0].ref.family != parties[1].ref.family, Err::NonTransverseVertex,
            "same-family members meet at vertex " + std::to_string(v));
    require(m.degree(v) == 4, Err::NonTransverseVertex,
            "crossing vertex not 4-valent: " + std::to_string(v));
    require(crossing_sign(m, parties[0].strand, parties[1].strand) != 0, Err::NonTransverseVertex,
            "non-alternating crossing at vertex " + std::to_string(v));
  }

  return st;
}

// ---------------------------------------------------------------------------
// Cutting

CutStats cut_stats(const CombinatorialMap& m, const std::vector<MemberRef>& locus) {
  std::set<EdgeId> locus_edges;
  std::vector<FaceId> free_hosts;
  std::set<VertexId> locus_vertices;
  for (const MemberRef& r : locus) {
    const Member& mem = m.member(r);
    if (mem.free_loop()) {
      free_hosts.push_back(mem.free_host);
      continue;
    }
    for (HalfEdge h : mem.walk) {
      require(locus_edges.insert(h / 2).second, Err::FamilyNotDisjoint,
              "cut members share an edge");
      require(!m.boundary_edge(h), Err::InvariantError, "cut locus touches the boundary polygon");
    }
    for (HalfEdge h : mem.walk) {
      VertexId v = m.vertex(h);
      locus_vertices.insert(v);
    }
    // Disjointness across members at the vertex level.
  }
  {
    std::set<VertexId> seen;
    for (const MemberRef& r : locus) {
      const Member& mem = m.member(r);
      std::set<VertexId> mine;
      for (HalfEdge h : mem.walk) mine.insert(m.vertex(h));
      if (!mem.walk.empty() && !m.walk_is_closed(mem.walk)) mine.insert(m.head(mem.walk.back()));
      for (VertexId v : mine)
        require(seen.insert(v).second, Err::FamilyNotDisjoint, "cut members share a vertex");
    }
  }

  auto is_locus = [&](HalfEdge h) { return locus_edges.count(h / 2) > 0; };

  // Components of interior faces, merged across non-locus edges.
  UnionFind uf(m.faces());
  for (HalfEdge h = 0; h < m.half_edges(); h += 2) {
    if (is_locus(h)) continue;
    FaceId f1 = m.face(h), f2 = m.face(h ^ 1);
    if (m.boundary_face(f1) || m.boundary_face(f2)) continue;
    uf.unite(f1, f2);
  }
  std::map<int, int> comp_of_root;
  for (FaceId f = 0; f < m.faces(); f++) {
    if (m.boundary_face(f)) continue;
    int r = uf.find(f);
    if (!comp_of_root.count(r)) comp_of_root[r] = 0;
  }
  {
    int idx = 0;
    for (auto& [r, id] : comp_of_root) id = idx++;
  }
  int nc = static_cast<int>(comp_of_root.size());
  auto comp_of_face = [&](FaceId f) -> int {
    if (m.boundary_face(f)) return -1;
    return comp_of_root[uf.find(f)];
  };

  std::vector<long long> F(nc, 0), E(nc, 0), V(nc, 0), Bcyc(nc, 0);
  for (FaceId f = 0; f < m.faces(); f++)
    if (!m.boundary_face(f)) F[comp_of_face(f)]++;

  for (HalfEdge h = 0; h < m.half_edges(); h += 2) {
    if (is_locus(h)) {
      for (HalfEdge g : {h, (HalfEdge)(h ^ 1)}) {
        int c = comp_of_face(m.face(g));
        if (c >= 0) E[c]++;
      }
    } else {
      int c1 = comp_of_face(m.face(h)), c2 = comp_of_face(m.face(h ^ 1));
      int c = c1 >= 0 ? c1 : c2;
      if (c >= 0) E[c]++;
    }
  }

  // Vertex fans: wedges glued across non-locus spokes.
  for (VertexId v = 0; v < m.vertices(); v++) {
    auto sp = m.spokes(v);
    int k = static_cast<int>(sp.size());
    UnionFind wuf(k);
    auto interior = [&](int i) { return comp_of_face(m.corner_face(sp[i])) >= 0; };
    for (int i = 0; i < k; i++) {
      // wedge(sp[i]) and wedge(sp[i-1]) are adjacent across spoke sp[i].
      int j = (i + k - 1) % k;
      if (is_locus(sp[i])) continue;
      if (!interior(i) || !interior(j)) continue;
      wuf.unite(i, j);
    }
    std::set<int> fans;
    for (int i = 0; i < k; i++)
      if (interior(i)) fans.insert(wuf.find(i));
    for (int root : fans) V[comp_of_face(m.corner_face(sp[root]))]++;
  }

  // New boundary circles: cycles of sides under the boundary successor.
  std::map<HalfEdge, HalfEdge> succ;
  std::vector<HalfEdge> sides;
  for (HalfEdge h = 0; h < m.half_edges(); h++) {
    bool cut_side = is_locus(h);
    bool old_side = m.boundary_edge(h) && !m.boundary_face(m.face(h));
    if (!(cut_side || old_side)) continue;
    sides.push_back(h);
  }
  std::set<HalfEdge> side_set(sides.begin(), sides.end());
  for (HalfEdge h : sides) {
    HalfEdge g = m.prev(m.twin(h));
    while (!is_locus(g) && !m.boundary_edge(g)) g = m.prev(g);
    require(side_set.count(g), Err::InternalError, "boundary successor left the side set");
    succ[h] = g;
  }
  {
    std::set<HalfEdge> visited;
    for (HalfEdge h : sides) {
      if (visited.count(h)) continue;
      HalfEdge g = h;
      do {
        visited.insert(g);
        g = succ[g];
      } while (g != h);
      int c = comp_of_face(m.face(h));
      require(c >= 0, Err::InternalError, "side bounded by a boundary face");
      Bcyc[c]++;
    }
  }

  CutStats cs;
  cs.num_components = nc;
  cs.component_of_face.assign(m.faces(), -1);
  for (FaceId f = 0; f < m.faces(); f++) cs.component_of_face[f] = comp_of_face(f);

  std::vector<long long> chi(nc), bnd(nc);
  for (int c = 0; c < nc; c++) {
    chi[c] = V[c] - E[c] + F[c];
    bnd[c] = Bcyc[c];
  }
  // Free loops: the host component gains a boundary circle, and the piece
  // inside the loop splits off as a disk.
  int extra_disks = 0;
  for (FaceId host : free_hosts) {
    int c = comp_of_face(host);
    require(c >= 0, Err::DanglingFreeLoop, "free loop host is a boundary face");
    chi[c] -= 1;
    bnd[c] += 1;
    extra_disks++;
  }

  SurfaceStats st;
  st.components = nc + extra_disks;
  for (int c = 0; c < nc; c++) {
    long long g2 = 2 - chi[c] - bnd[c];
    require(g2 >= 0 && g2 % 2 == 0, Err::InternalError, "cut produced non-surface stats");
    st.genus_per_component.push_back(static_cast<int>(g2 / 2));
    st.boundary_per_component.push_back(static_cast<int>(bnd[c]));
    st.euler += chi[c];
    cs.component_genus.push_back(static_cast<int>(g2 / 2));
    cs.component_boundary.push_back(static_cast<int>(bnd[c]));
    cs.component_euler.push_back(chi[c]);
  }
  for (int d = 0; d < extra_disks; d++) {
    st.genus_per_component.push_back(0);
    st.boundary_per_component.push_back(1);
    st.euler += 1;
  }
  cs.stats = st;
  return cs;
}

SurfaceStats cut_along(const CombinatorialMap& m, FamilyLabel family) {
  const CurveFamily& fam = m.family(family);
  std::vector<MemberRef> locus;
  for (int i = 0; i < (int)fam.members.size(); i++) {
    const Member& mem = fam.members[i];
    if (!mem.free_loop())
      require(m.walk_is_closed(mem.walk), Err::ArcInFamily, mem.name);
    locus.push_back(MemberRef{family, i});
  }
  return cut_stats(m, locus).stats;
}

// ---------------------------------------------------------------------------
// Canonical models

CombinatorialMap canonical_surface(int genus, int boundary) {
  require(genus >= 0 && boundary >= 0, Err::InvalidParams, "negative parameters");
  if (boundary == 0) {
    // One-vertex polygon model. Edge j has halves 2j (out) and 2j+1 (back).
    int loops = genus == 0 ? 1 : 2 * genus;
    std::vector<HalfEdge> nx(2 * loops);
    std::vector<VertexId> vx(2 * loops, 0);
    std::vector<uint8_t> bs(2 * loops, 0);
    std::vector<HalfEdge> order;
    if (genus == 0) {
      order = {0, 1};
    } else {
      // Rotation a+ b+ a- b- per handle.
      for (int j = 0; j < genus; j++) {
        order.push_back(4 * j + 0);
        order.push_back(4 * j + 2);
        order.push_back(4 * j + 1);
        order.push_back(4 * j + 3);
      }
    }
    for (size_t i = 0; i < order.size(); i++) nx[order[i]] = order[(i + 1) % order.size()];
    return CombinatorialMap::from_raw(std::move(nx), std::move(vx), std::move(bs), {});
  }

  // Half-edge layout:
  //   outer loop: 0 (outward side), 1 (inward side)
  //   handles j = 0..g-1: x: 2+4j, 3+4j ; y: 4+4j, 5+4j
  //   per extra boundary i = 1..b-1: inner loop: L+4(i-1), L+4(i-1)+1,
  //     connector: L+4(i-1)+2, L+4(i-1)+3
  int g = genus, bo = boundary;
  int L = 2 + 4 * g;
  int H = L + 4 * (bo - 1);
  std::vector<HalfEdge> nx(H, -1);
  std::vector<VertexId> vx(H, -1);
  std::vector<uint8_t> bs(H, 0);
  // Vertex 0: outer circle vertex carries everything attached to the disk.
  // Rotation at v0 (counterclockwise): outer-outward, outer-inward precedes
  // handle loops and connectors hanging in the interior face.
  std::vector<HalfEdge> rot;
  rot.push_back(0);  // outward side of outer loop
  rot.push_back(1);  // inward side
  for (int j = 0; j < g; j++) {
    HalfEdge xp = 2 + 4 * j, xm = 3 + 4 * j, yp = 4 + 4 * j, ym = 5 + 4 * j;
    rot.push_back(xp);
    rot.push_back(yp);
    rot.push_back(xm);
    rot.push_back(ym);
    vx[xp] = vx[xm] = vx[yp] = vx[ym] = 0;
  }
  for (int i = 1; i < bo; i++) {
    HalfEdge conn_at0 = L + 4 * (i - 1) + 2;
    rot.push_back(conn_at0);
  }
  vx[0] = vx[1] = 0;
  for (size_t i = 0; i < rot.size(); i++) nx[rot[i]] = rot[(i + 1) % rot.size()];
  bs[0] = 1;
  // Inner circles with their connectors.
  for (int i = 1; i < bo; i++) {
    VertexId vi = i;
    HalfEdge lp = L + 4 * (i - 1), lm = lp + 1, conn0 = lp + 2, conni = lp + 3;
    vx[lp] = vx[lm] = vx[conni] = vi;
    vx[conn0] = 0;
    // Rotation at vi: loop, connector, loop back. The hole is the singleton
    // face orbit of the inward side.
    nx[lp] = conni;
    nx[conni] = lm;
    nx[lm] = lp;
    bs[lm] = 1;
  }
  return CombinatorialMap::from_raw(std::move(nx), std::move(vx), std::move(bs), {});
}

// ---------------------------------------------------------------------------
// Digest

namespace {

uint64_t fnv1a(const std::vector<int64_t>& data) {
  uint64_t h = 1469598103934665603ull;
  for (int64_t v : data) {
    for (int i = 0; i < 8; i++) {
      h ^= static_cast<uint64_t>(v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Deterministic labeling of one component starting from s.
std::vector<int> component_labels(const CombinatorialMap& m, HalfEdge s, int& count) {
  std::vector<int> label(m.half_edges(), -1);
  std::vector<HalfEdge> stack{s};
  label[s] = 0;
  count = 1;
  size_t qi = 0;
  std::vector<HalfEdge> queue{s};
  while (qi < queue.size()) {
    HalfEdge h = queue[qi++];
    for (HalfEdge nb : {m.next(h), m.twin(h)}) {
      if (label[nb] == -1) {
        label[nb] = count++;
        queue.push_back(nb);
      }
    }
  }
  return label;
}

// Full encoding under a complete labeling: structure in label order,
// then family member keys (sorted within each family) and the basepoint.
std::vector<int64_t> encode_full(const CombinatorialMap& m, const std::vector<int>& label) {
  const int n = m.half_edges();
  std::vector<HalfEdge> inv(n, -1);
  for (HalfEdge h = 0; h < n; h++) inv[label[h]] = h;
  std::vector<int64_t> enc;
  enc.reserve(3 * n + 16);
  for (HalfEdge pos = 0; pos < n; pos++) {
    HalfEdge h = inv[pos];
    enc.push_back(label[m.next(h)]);
    enc.push_back(label[m.twin(h)]);
    enc.push_back(m.boundary_side(h) ? 1 : 0);
  }
  for (const auto& fam : m.families()) {
    enc.push_back(-100 - static_cast<int>(fam.label));
    std::vector<std::vector<int64_t>> keys;
    for (const auto& mem : fam.members) {
      std::vector<int64_t> key;
      if (mem.free_loop()) {
        int best = 1 << 30;
        for (HalfEdge h = 0; h < n; h++)
          if (m.face(h) == mem.free_host) best = std::min(best, label[h]);
        key = {-1, best};
      } else {
        for (HalfEdge h : mem.walk) key.push_back(label[h]);
        if (m.walk_is_closed(mem.walk)) {
          std::vector<int64_t> best = key;
          for (size_t r = 1; r < key.size(); r++) {
            std::rotate(key.begin(), key.begin() + 1, key.end());
            if (key < best) best = key;
          }
          key = best;
        }
      }
      keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    for (auto& k : keys) {
      enc.push_back(-8);
      enc.insert(enc.end(), k.begin(), k.end());
    }
  }
  if (m.basepoint()) {
    int best = 1 << 30;
    for (HalfEdge h = 0; h < n; h++)
      if (m.face(h) == *m.basepoint()) best = std::min(best, label[h]);
    enc.push_back(-9);
    enc.push_back(best);
  }
  return enc;
}

}  // namespace

uint64_t map_digest(const CombinatorialMap& m) {
  const int n = m.half_edges();
  // Components of half-edges under {next, twin}.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (HalfEdge h = 0; h < n; h++) {
    if (comp[h] != -1) continue;
    std::vector<HalfEdge> stack{h};
    comp[h] = ncomp;
    while (!stack.empty()) {
      HalfEdge x = stack.back();
      stack.pop_back();
      for (HalfEdge nb : {m.next(x), m.twin(x)})
        if (comp[nb] == -1) {
          comp[nb] = ncomp;
          stack.push_back(nb);
        }
    }
    ncomp++;
  }

  if (ncomp == 1) {
    // Canonical form: minimize the full encoding over all starts.
    std::vector<int64_t> best;
    for (HalfEdge s = 0; s < n; s++) {
      int cnt = 0;
      auto label = component_labels(m, s, cnt);
      auto enc = encode_full(m, label);
      if (best.empty() || enc < best) best = std::move(enc);
    }
    return fnv1a(best);
  }

  // Multiple components: canonical per-component structure picks the order;
  // the first minimal labeling found breaks ties among automorphic starts.
  std::vector<std::vector<int64_t>> best_enc(ncomp);
  std::vector<std::vector<int>> best_label(ncomp);
  for (HalfEdge s = 0; s < n; s++) {
    int c = comp[s];
    int cnt = 0;
    auto label = component_labels(m, s, cnt);
    std::vector<HalfEdge> inv;
    inv.assign(cnt, -1);
    for (HalfEdge h = 0; h < n; h++)
      if (label[h] >= 0) inv[label[h]] = h;
    std::vector<int64_t> enc;
    for (int pos = 0; pos < cnt; pos++) {
      HalfEdge h = inv[pos];
      enc.push_back(label[m.next(h)]);
      enc.push_back(label[m.twin(h)]);
      enc.push_back(m.boundary_side(h) ? 1 : 0);
    }
    if (best_enc[c].empty() || enc < best_enc[c]) {
      best_enc[c] = std::move(enc);
      best_label[c] = std::move(label);
    }
  }
  std::vector<int> order(ncomp);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int bb) { return best_enc[a] < best_enc[bb]; });
  std::vector<int> offset(ncomp, 0);
  {
    int off = 0;
    for (int i = 0; i < ncomp; i++) {
      offset[order[i]] = off;
      off += static_cast<int>(best_enc[order[i]].size()) / 3;
    }
  }
  std::vector<int> glabel(n, -1);
  for (HalfEdge h = 0; h < n; h++) glabel[h] = best_label[comp[h]][h] + offset[comp[h]];
  return fnv1a(encode_full(m, glabel));
}

std::string map_brief(const CombinatorialMap& m) {
  std::ostringstream os;
  os << "V=" << m.vertices() << " E=" << m.edges() << " F=" << m.interior_faces() << "+"
     << (m.faces() - m.interior_faces()) << "b";
  return os.str();
}

}  // namespace trisect
