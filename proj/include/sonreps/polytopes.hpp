#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

// Halfspace and vertex machinery for the hypercube C_n, the parity polytopes
// PP_n / PP_n^- and their polars. These polytopes are the diagonal sections
// of the orthogonal-group hulls and drive the facet-count lower bounds.

namespace sonreps {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class FacetFamily { Box, OddSet, EvenSet, AllSigns, Equality };

enum class PolytopeKind {
  Hypercube,
  CrossPolytope,
  ParityPolytope,
  OddParityPolytope,
  ParityPolar,
  OddParityPolar,
};

struct HPolytope {
  int n = 0;
  Matrix a;   // one inequality <a_k, x> <= b_k per row
  Vector b;
  std::vector<FacetFamily> family;  // per row

  int rows() const { return static_cast<int>(a.rows()); }
  void dump_csv(std::ostream& os) const;
};

struct VPolytope {
  int n = 0;
  Matrix vertices;  // one vertex per row
};

HPolytope hypercube(int n);
HPolytope cross_polytope(int n);
HPolytope parity_polytope(int n);       // even parity, PP_n
HPolytope odd_parity_polytope(int n);   // PP_n^-
HPolytope parity_polar(int n);          // PP_n^o
HPolytope odd_parity_polar(int n);      // (PP_n^-)^o

enum class Verdict { Inside, Boundary, Outside };

struct PolytopeMembership {
  Verdict verdict;
  double worst_slack;  // min_k (b_k - <a_k, x>)
  int violating_row;   // argmin, -1 if no rows
};

PolytopeMembership member(const HPolytope& p, const Vector& x,
                          double tol = 1e-7);

// Number of irredundant inequalities, decided by LP (a row is a facet iff
// maximizing <a_k, .> subject to the remaining rows exceeds b_k). Intended
// for the canonical bodies at n <= 6.
int facet_count(const HPolytope& p, double tol = 1e-7);

VPolytope vertices(PolytopeKind kind, int n);

// Lemma-style identity check: [x in C_n and x in (n-2) (PP_n^-)^o]
// agrees with [x in PP_n]. For n = 3 additionally requires PP_3 = (PP_3^-)^o.
bool ppalt_check(int n, const Vector& x, double tol = 1e-9);

// Euclidean projection onto PP_n: clip to the box, then if the single
// matching odd-set cut is violated, project onto that cut intersected with
// the box by bisection on the multiplier.
Vector project_parity_polytope(int n, const Vector& x);

// Linear programming over {x : Ax <= b} by dense simplex (free variables
// split into positive parts). Used by facet_count; exposed for tests.
struct LpResult {
  bool unbounded = false;
  double value = 0.0;
  Vector x;
};
LpResult simplex_maximize(const Matrix& a, const Vector& b, const Vector& c);

}  // namespace sonreps
