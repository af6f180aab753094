#pragma once

#include <Eigen/Dense>

#include "sonreps/hull_reps.hpp"
#include "sonreps/polytopes.hpp"

// Special singular value decomposition, membership oracles via diagonal
// reduction, and closed-form support functions.

namespace sonreps {

// X = U diag(sigma_tilde) V^T with det(U) det(V) = 1; sigma_tilde carries
// sign(det X) in its last entry.
struct SpecialSVD {
  Matrix u;
  Matrix v;
  Vector sigma_tilde;

  Matrix reconstruct() const { return u * sigma_tilde.asDiagonal() * v.transpose(); }
};

SpecialSVD special_svd(const Matrix& x, double tol = 1e-10);

struct MembershipReport {
  BodyKind body;
  Verdict verdict;
  double slack;       // signed margin; negative means outside
  int violated_row;   // polytope row for conv bodies, block index for polars
  Vector witness;     // top eigenvector for polar bodies
};

// Membership in conv SO(n) by the diagonal reduction: the verdict of the
// special singular values against PP_n.
MembershipReport member_conv_son(const Matrix& x, double tol = 1e-7);

// Membership in SO(n)°, O(n)° or SO^-(n)°: slack = 1 - lambda_max of the
// assembled pencil(s).
MembershipReport member_polar(BodyKind kind, const Matrix& y,
                              double tol = 1e-7);

struct SupportResult {
  double value = 0.0;
  Matrix maximizer;    // element of SO(n) attaining the value
  double eigengap = 0.0;
  bool degenerate = false;  // top eigenvalue was multiple; jitter applied
};

// h_{conv SO(n)}(C) = lambda_max(sum C_ij A_ij) with maximizer Q(v) for a
// top eigenvector v.
SupportResult support_conv_son(const Matrix& c);

// h_{conv O(n)}(C) = nuclear norm of C.
double support_conv_on(const Matrix& c);

// Horn-projection slack of diag(X) in PP_n for a rotation X. Throws
// std::invalid_argument if X is not a rotation within tol.
double horn_check(const Matrix& x, double tol = 1e-8);

}  // namespace sonreps
