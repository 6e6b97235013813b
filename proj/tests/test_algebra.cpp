#include "trisect/algebra.hpp"

#include <random>

#include "doctest.h"

using namespace trisect;

namespace {

// Independent oracle: invariant factors from gcds of k x k minors.
std::vector<Int> minor_gcd_factors(const IMat& m) {
  const int r = static_cast<int>(m.size());
  const int c = r == 0 ? 0 : static_cast<int>(m[0].size());
  int kmax = std::min(r, c);
  std::vector<Int> gcds(kmax + 1, 0);
  gcds[0] = 1;
  // Enumerate all k x k minors by choosing row and column subsets.
  std::vector<int> rows, cols;
  std::function<Int(std::vector<int>&, std::vector<int>&)> det =
      [&](std::vector<int>& rs, std::vector<int>& cs) -> Int {
    int k = static_cast<int>(rs.size());
    if (k == 1) return m[rs[0]][cs[0]];
    Int acc = 0;
    for (int i = 0; i < k; i++) {
      std::vector<int> rs2;
      for (int j = 0; j < k; j++)
        if (j != i) rs2.push_back(rs[j]);
      std::vector<int> cs2(cs.begin() + 1, cs.end());
      Int sub = det(rs2, cs2);
      acc += ((i % 2 == 0) ? 1 : -1) * m[rs[i]][cs[0]] * sub;
    }
    return acc;
  };
  std::function<void(int, int, std::vector<int>&, std::vector<int>&, int)> go;
  for (int k = 1; k <= kmax; k++) {
    std::vector<std::vector<int>> rsets, csets;
    std::vector<int> cur;
    std::function<void(int, int, std::vector<std::vector<int>>&, int)> choose =
        [&](int start, int need, std::vector<std::vector<int>>& out, int limit) {
          if (need == 0) {
            out.push_back(cur);
            return;
          }
          for (int i = start; i <= limit - need; i++) {
            cur.push_back(i);
            choose(i + 1, need - 1, out, limit);
            cur.pop_back();
          }
        };
    choose(0, k, rsets, r);
    choose(0, k, csets, c);
    Int g = 0;
    for (auto& rs : rsets)
      for (auto& cs : csets) {
        auto rs2 = rs;
        auto cs2 = cs;
        g = boost::multiprecision::gcd(g, det(rs2, cs2));
      }
    gcds[k] = g;
  }
  std::vector<Int> factors;
  for (int k = 1; k <= kmax; k++) {
    if (gcds[k] == 0) break;
    factors.push_back(gcds[k] / gcds[k - 1]);
  }
  return factors;
}

IMat random_mat(std::mt19937& rng, int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IMat m(r, std::vector<Int>(c));
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

}  // namespace

TEST_CASE("snf simple cases") {
  auto s0 = smith_normal_form(imat_from({{0}}));
  CHECK(s0.d[0][0] == 0);
  auto s1 = smith_normal_form(imat_from({{5}}));
  CHECK(s1.d[0][0] == 5);
  auto s2 = smith_normal_form(imat_from({{2, 0}, {0, 3}}));
  CHECK(s2.d[0][0] == 1);
  CHECK(s2.d[1][1] == 6);
}

TEST_CASE("snf factorization and divisibility on random matrices") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 80; trial++) {
    int r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    IMat m = random_mat(rng, r, c, -6, 6);
    auto s = smith_normal_form(m);
    // d == u m v
    auto umv = mul(mul(s.u, m), s.v);
    CHECK(umv == s.d);
    // diagonal, divisibility chain
    for (int i = 0; i < r; i++)
      for (int j = 0; j < (int)s.d[i].size(); j++)
        if (i != j) CHECK(s.d[i][j] == 0);
    for (int i = 0; i + 1 < std::min(r, c); i++) {
      if (s.d[i + 1][i + 1] != 0) {
        CHECK(s.d[i][i] != 0);
        CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
      }
    }
    // Against the minor-gcd oracle.
    auto oracle = minor_gcd_factors(m);
    for (size_t k = 0; k < oracle.size(); k++) CHECK(s.d[k][k] == oracle[k]);
  }
}

TEST_CASE("snf invariant under permutations and sign flips") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 30; trial++) {
    IMat m = random_mat(rng, 3, 3, -5, 5);
    auto base = smith_normal_form(m);
    IMat p = m;
    std::swap(p[0], p[2]);
    for (auto& x : p[1]) x = -x;
    auto alt = smith_normal_form(p);
    for (int i = 0; i < 3; i++) CHECK(base.d[i][i] == alt.d[i][i]);
  }
}

TEST_CASE("cokernel descriptors") {
  CHECK(cokernel(imat_from({{0}})) == AbelianGroup{1, {}});
  CHECK(cokernel(imat_from({{1}})) == AbelianGroup{0, {}});
  CHECK(cokernel(imat_from({{5}})) == AbelianGroup{0, {5}});
  CHECK(cokernel(imat_from({{2, 0}, {0, 3}})) == AbelianGroup{0, {6}});
  CHECK(cokernel(imat_from({{2, 0}, {0, 4}})) == AbelianGroup{0, {2, 4}});
}

TEST_CASE("random unimodular matrices have trivial cokernel") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 25; trial++) {
    // Product of elementary matrices is unimodular.
    IMat m = identity(4);
    for (int step = 0; step < 12; step++) {
      int i = rng() % 4, j = rng() % 4;
      if (i == j) continue;
      Int f = d(rng);
      for (int k = 0; k < 4; k++) m[i][k] += f * m[j][k];
    }
    CHECK(cokernel(m).trivial());
  }
}

TEST_CASE("integer kernel and solve") {
  IMat m = imat_from({{1, 2, 3}, {2, 4, 6}});
  auto ker = integer_kernel(m);
  CHECK(ker.size() == 2);
  for (const auto& k : ker) {
    CHECK(k[0] + 2 * k[1] + 3 * k[2] == 0);
  }
  auto sol = solve_integer(m, {3, 6});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] + 2 * (*sol)[1] + 3 * (*sol)[2] == 3);
  CHECK(!solve_integer(m, {1, 1}).has_value());
  CHECK(!solve_integer(imat_from({{2}}), {1}).has_value());
}

TEST_CASE("detect s1s2") {
  CHECK(*detect_s1s2_homology(AbelianGroup{2, {}}) == 2);
  CHECK(!detect_s1s2_homology(AbelianGroup{0, {5}}).has_value());
  CHECK(*detect_s1s2_homology(AbelianGroup{0, {}}) == 0);
}

TEST_CASE("nonnegative span detection") {
  // span{(1,1)}: the all-ones direction is nonnegative.
  auto w = nonnegative_span_element({{Int(1), Int(1)}}, 2);
  REQUIRE(w.has_value());
  CHECK((*w)[0] > 0);
  CHECK((*w)[1] > 0);
  // span{(1,-1)}: mixed signs only.
  CHECK(!nonnegative_span_element({{Int(1), Int(-1)}}, 2).has_value());
  // span{(1,-1),(0,1)} contains (1,0).
  auto w2 = nonnegative_span_element({{Int(1), Int(-1)}, {Int(0), Int(1)}}, 2);
  REQUIRE(w2.has_value());
  // rank 0
  CHECK(!nonnegative_span_element({}, 3).has_value());
}
