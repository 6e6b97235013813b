#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "trisect/common.hpp"
#include "trisect/surface.hpp"

namespace trisect {

// Exact integer linear algebra. Entries live in cpp_int so pivot growth
// during the normal form reductions is a non-issue; the public descriptors
// stay in long long.
using Int = boost::multiprecision::cpp_int;
using IMat = std::vector<std::vector<Int>>;

IMat imat_from(const std::vector<std::vector<long long>>& m);
IMat identity(int n);
IMat transpose(const IMat& m);
IMat mul(const IMat& a, const IMat& b);

struct SmithResult {
  IMat d;  // u * m * v, diagonal with divisibility chain
  IMat u;  // unimodular
  IMat v;  // unimodular
};

SmithResult smith_normal_form(const IMat& m);

// Invariant factors >= 2 and the free rank of coker(m) for an r x c matrix
// presenting Z^r / col-span... (columns are relations on Z^rows).
struct AbelianGroup {
  long long free_rank = 0;
  std::vector<long long> torsion;  // d1 | d2 | ..., each >= 2
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroup&) const = default;
  std::string str() const;
};

// coker of m acting on Z^(#rows): Z^rows / (column span of m).
AbelianGroup cokernel(const IMat& m);

// Basis of the integer kernel {x : m x = 0}, as columns.
std::vector<std::vector<Int>> integer_kernel(const IMat& m);

// One solution of m x = b over the integers, if any.
std::optional<std::vector<Int>> solve_integer(const IMat& m, const std::vector<Int>& b);

// --- Spec operations --------------------------------------------------------

// H1 of the closed 3-manifold presented by two full cut systems: cokernel of
// the algebraic intersection matrix.
AbelianGroup h1_from_diagram(const CombinatorialMap& m, FamilyLabel a, FamilyLabel b);

std::optional<long long> detect_s1s2_homology(const AbelianGroup& g);

// --- Rational feasibility (used by admissibility) ---------------------------

// Decides whether the rational column span of `basis` (vectors of length n)
// meets the nonnegative orthant outside 0. Returns a nonzero integer witness
// x >= 0 in the span when it does.
std::optional<std::vector<Int>> nonnegative_span_element(
    const std::vector<std::vector<Int>>& basis, int n);

// --- Homology classes of walks on a closed map ------------------------------

// Coordinates of closed walks in H1(surface; Z): exact pairing-free cycle
// coordinates, usable to compare classes and test [m'] = [m] +- [o].
class CycleSpace {
 public:
  explicit CycleSpace(const CombinatorialMap& m);
  // Class of a closed walk as a vector in Z^(2g + ...) (H1 modulo torsZero).
  std::vector<Int> class_of(const std::vector<HalfEdge>& walk) const;
  int rank() const { return rank_; }

 private:
  int edges_ = 0;
  int rank_ = 0;
  IMat projector_;  // maps edge chains to the quotient coordinates
};

}  // namespace trisect
