#include "trisect/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace trisect {

using Rat = boost::multiprecision::cpp_rational;

IMat imat_from(const std::vector<std::vector<long long>>& m) {
  IMat out(m.size());
  for (size_t i = 0; i < m.size(); i++) out[i] = std::vector<Int>(m[i].begin(), m[i].end());
  return out;
}

IMat identity(int n) {
  IMat out(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; i++) out[i][i] = 1;
  return out;
}

IMat transpose(const IMat& m) {
  if (m.empty()) return {};
  IMat out(m[0].size(), std::vector<Int>(m.size()));
  for (size_t i = 0; i < m.size(); i++)
    for (size_t j = 0; j < m[i].size(); j++) out[j][i] = m[i][j];
  return out;
}

IMat mul(const IMat& a, const IMat& b) {
  if (a.empty() || b.empty()) return {};
  IMat out(a.size(), std::vector<Int>(b[0].size(), 0));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t k = 0; k < b.size(); k++) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b[0].size(); j++) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

namespace {

struct SnfWork {
  IMat d, u, v;
  int rows, cols;

  void row_swap(int i, int j) {
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
  }
  void col_swap(int i, int j) {
    for (int k = 0; k < rows; k++) std::swap(d[k][i], d[k][j]);
    for (size_t k = 0; k < v.size(); k++) std::swap(v[k][i], v[k][j]);
  }
  void row_add(int dst, int src, const Int& f) {
    for (int k = 0; k < cols; k++) d[dst][k] += f * d[src][k];
    for (int k = 0; k < rows; k++) u[dst][k] += f * u[src][k];
  }
  void col_add(int dst, int src, const Int& f) {
    for (int k = 0; k < rows; k++) d[k][dst] += f * d[k][src];
    for (size_t k = 0; k < v.size(); k++) v[k][dst] += f * v[k][src];
  }
  void row_neg(int i) {
    for (int k = 0; k < cols; k++) d[i][k] = -d[i][k];
    for (int k = 0; k < rows; k++) u[i][k] = -u[i][k];
  }

  // Clears the block starting at t into diagonal form.
  void eliminate_from(int t0) {
    for (int t = t0; t < rows && t < cols; t++) {
      int pi = -1, pj = -1;
      for (int i = t; i < rows && pi < 0; i++)
        for (int j = t; j < cols; j++)
          if (d[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) return;
      row_swap(t, pi);
      col_swap(t, pj);
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (int i = t + 1; i < rows; i++) {
          while (d[i][t] != 0) {
            Int q = d[i][t] / d[t][t];
            row_add(i, t, -q);
            if (d[i][t] != 0) {
              row_swap(t, i);
              dirty = true;
            }
          }
        }
        for (int j = t + 1; j < cols; j++) {
          while (d[t][j] != 0) {
            Int q = d[t][j] / d[t][t];
            col_add(j, t, -q);
            if (d[t][j] != 0) {
              col_swap(t, j);
              dirty = true;
            }
          }
        }
      }
      if (d[t][t] < 0) row_neg(t);
    }
  }
};

}  // namespace

SmithResult smith_normal_form(const IMat& m) {
  const int r = static_cast<int>(m.size());
  const int c = r == 0 ? 0 : static_cast<int>(m[0].size());
  SnfWork w{m, identity(r), identity(c), r, c};
  if (r > 0 && c > 0) {
    w.eliminate_from(0);
    // Divisibility chain.
    bool changed = true;
    while (changed) {
      changed = false;
      int rank = 0;
      while (rank < r && rank < c && w.d[rank][rank] != 0) rank++;
      for (int i = 0; i + 1 < rank; i++) {
        if (w.d[i + 1][i + 1] % w.d[i][i] == 0) continue;
        w.col_add(i, i + 1, 1);
        w.eliminate_from(i);
        changed = true;
        break;
      }
    }
  }
  return SmithResult{std::move(w.d), std::move(w.u), std::move(w.v)};
}

std::string AbelianGroup::str() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (long long t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbelianGroup cokernel(const IMat& m) {
  AbelianGroup g;
  if (m.empty()) return g;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  auto snf = smith_normal_form(m);
  int nonzero = 0;
  for (int i = 0; i < rows && i < cols; i++) {
    if (snf.d[i][i] == 0) continue;
    nonzero++;
    if (snf.d[i][i] > 1) g.torsion.push_back(snf.d[i][i].convert_to<long long>());
  }
  g.free_rank = rows - nonzero;
  std::sort(g.torsion.begin(), g.torsion.end());
  return g;
}

std::vector<std::vector<Int>> integer_kernel(const IMat& m) {
  if (m.empty()) return {};
  const int r = static_cast<int>(m.size());
  const int c = static_cast<int>(m[0].size());
  auto snf = smith_normal_form(m);
  std::vector<std::vector<Int>> out;
  for (int j = 0; j < c; j++) {
    if (j < r && snf.d[j][j] != 0) continue;
    std::vector<Int> col(c);
    for (int i = 0; i < c; i++) col[i] = snf.v[i][j];
    out.push_back(std::move(col));
  }
  return out;
}

std::optional<std::vector<Int>> solve_integer(const IMat& m, const std::vector<Int>& b) {
  if (m.empty()) {
    for (const Int& x : b)
      if (x != 0) return std::nullopt;
    return std::vector<Int>{};
  }
  const int r = static_cast<int>(m.size());
  const int c = static_cast<int>(m[0].size());
  auto snf = smith_normal_form(m);
  std::vector<Int> ub(r, 0);
  for (int i = 0; i < r; i++)
    for (int k = 0; k < r; k++) ub[i] += snf.u[i][k] * b[k];
  std::vector<Int> y(c, 0);
  for (int i = 0; i < r; i++) {
    Int di = (i < c) ? snf.d[i][i] : Int(0);
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % di != 0) return std::nullopt;
      y[i] = ub[i] / di;
    }
  }
  std::vector<Int> x(c, 0);
  for (int i = 0; i < c; i++)
    for (int k = 0; k < c; k++) x[i] += snf.v[i][k] * y[k];
  return x;
}

// ---------------------------------------------------------------------------

AbelianGroup h1_from_diagram(const CombinatorialMap& m, FamilyLabel la, FamilyLabel lb) {
  for (FaceId f = 0; f < m.faces(); f++)
    require(!m.boundary_face(f), Err::NotClosed, "h1 needs a closed surface");
  auto st = validate_map(m);
  require(st.components == 1, Err::NotClosed, "h1 needs a connected surface");
  const auto& A = m.family(la);
  const auto& B = m.family(lb);
  require(A.members.size() == B.members.size(), Err::NotFullCutSystem, "family sizes differ");
  require((int)A.members.size() == st.genus(), Err::NotFullCutSystem,
          "family size does not match the genus");
  for (FamilyLabel l : {la, lb}) {
    if (m.family(l).members.empty()) continue;
    auto cut = cut_along(m, l);
    require(cut.components == 1 && cut.genus_per_component[0] == 0, Err::NotFullCutSystem,
            label_name(l));
  }
  auto xn = intersection_numbers(m, la, lb);
  return cokernel(imat_from(xn.algebraic));
}

std::optional<long long> detect_s1s2_homology(const AbelianGroup& g) {
  if (!g.torsion.empty()) return std::nullopt;
  return g.free_rank;
}

// ---------------------------------------------------------------------------
// Exact simplex for the sign-definite test.

namespace {

// max c.z  s.t.  A z <= b, z >= 0 with exact rationals and Bland's rule.
std::vector<Rat> simplex_max(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                             const std::vector<Rat>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<Rat>> T(m + 1, std::vector<Rat>(n + m + 1, 0));
  for (int i = 0; i < m; i++) {
    for (int j = 0; j < n; j++) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][n + m] = b[i];
  }
  for (int j = 0; j < n; j++) T[m][j] = -c[j];
  std::vector<int> basis(m);
  for (int i = 0; i < m; i++) basis[i] = n + i;

  for (int iter = 0; iter < 100000; iter++) {
    int pivot_col = -1;
    for (int j = 0; j < n + m; j++)
      if (T[m][j] < 0) {
        pivot_col = j;
        break;  // Bland's rule
      }
    if (pivot_col < 0) break;
    int pivot_row = -1;
    Rat best;
    for (int i = 0; i < m; i++) {
      if (T[i][pivot_col] <= 0) continue;
      Rat ratio = T[i][n + m] / T[i][pivot_col];
      if (pivot_row < 0 || ratio < best || (ratio == best && basis[i] < basis[pivot_row])) {
        pivot_row = i;
        best = ratio;
      }
    }
    require(pivot_row >= 0, Err::InternalError, "unbounded LP in the admissibility test");
    Rat p = T[pivot_row][pivot_col];
    for (auto& x : T[pivot_row]) x /= p;
    for (int i = 0; i <= m; i++) {
      if (i == pivot_row || T[i][pivot_col] == 0) continue;
      Rat f = T[i][pivot_col];
      for (int j = 0; j <= n + m; j++) T[i][j] -= f * T[pivot_row][j];
    }
    basis[pivot_row] = pivot_col;
  }
  std::vector<Rat> z(n, 0);
  for (int i = 0; i < m; i++)
    if (basis[i] < n) z[basis[i]] = T[i][n + m];
  return z;
}

}  // namespace

std::optional<std::vector<Int>> nonnegative_span_element(const std::vector<std::vector<Int>>& basis,
                                                         int n) {
  const int r = static_cast<int>(basis.size());
  if (r == 0) return std::nullopt;
  // lambda = p - q with p, q >= 0; constraints 0 <= B lambda <= 1;
  // maximize sum(B lambda).
  std::vector<std::vector<Rat>> A(2 * n, std::vector<Rat>(2 * r, 0));
  std::vector<Rat> b(2 * n, 0), c(2 * r, 0);
  for (int i = 0; i < n; i++) {
    for (int k = 0; k < r; k++) {
      Rat v(basis[k][i]);
      A[i][k] = -v;
      A[i][r + k] = v;
      A[n + i][k] = v;
      A[n + i][r + k] = -v;
      c[k] += v;
      c[r + k] -= v;
    }
    b[n + i] = 1;
  }
  auto z = simplex_max(A, b, c);
  std::vector<Rat> x(n, 0);
  for (int i = 0; i < n; i++)
    for (int k = 0; k < r; k++) x[i] += Rat(basis[k][i]) * (z[k] - z[r + k]);
  Rat total = 0;
  for (const auto& xi : x) total += xi;
  if (total == 0) return std::nullopt;
  Int l = 1;
  for (const auto& xi : x) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(xi));
  std::vector<Int> out(n);
  for (int i = 0; i < n; i++)
    out[i] =
        boost::multiprecision::numerator(x[i]) * (l / boost::multiprecision::denominator(x[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Cycle coordinates

CycleSpace::CycleSpace(const CombinatorialMap& m) {
  edges_ = m.edges();
  IMat face_cols;
  for (FaceId f = 0; f < m.faces(); f++) {
    if (m.boundary_face(f)) continue;
    std::vector<Int> col(edges_, 0);
    for (HalfEdge h : m.face_halves(f)) col[h / 2] += (h % 2 == 0) ? 1 : -1;
    face_cols.push_back(std::move(col));
  }
  IMat B = transpose(face_cols);  // edges x faces
  if (B.empty()) B.assign(edges_, std::vector<Int>{});
  auto snf = smith_normal_form(B);
  int rank = 0;
  const int cols = B.empty() ? 0 : static_cast<int>(B[0].size());
  while (rank < edges_ && rank < cols && snf.d[rank][rank] != 0) rank++;
  for (int i = rank; i < edges_; i++) projector_.push_back(snf.u[i]);
  rank_ = edges_ - rank;
}

std::vector<Int> CycleSpace::class_of(const std::vector<HalfEdge>& walk) const {
  std::vector<Int> chain(edges_, 0);
  for (HalfEdge h : walk) chain[h / 2] += (h % 2 == 0) ? 1 : -1;
  std::vector<Int> out(projector_.size(), 0);
  for (size_t i = 0; i < projector_.size(); i++)
    for (int e = 0; e < edges_; e++) out[i] += projector_[i][e] * chain[e];
  return out;
}

}  // namespace trisect
