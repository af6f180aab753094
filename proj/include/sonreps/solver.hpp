#pragma once

#include <Eigen/Dense>
#include <string>

#include "sonreps/hull_reps.hpp"

// Deterministic symmetric eigensolver contract plus self-contained iterative
// optimizers over LMIs, used to cross-validate the closed-form eigenvalue
// answers.

namespace sonreps {

struct EigenResult {
  Vector eigenvalues;   // sorted descending
  Matrix eigenvectors;  // columns match eigenvalues
  double top_gap;       // eigenvalues[0] - eigenvalues[1] (0 if size 1)
};

// Full decomposition of a symmetric matrix; input is symmetrized first.
// Deterministic for identical input bits.
EigenResult symmetric_eig(const Matrix& m);

struct SolveReport {
  double objective = 0.0;
  Matrix point;
  int iterations = 0;
  std::string termination;      // "converged", "iteration-limit"
  double feasibility_residual = 0.0;
};

// Maximizes <c, X> over the LMI feasible region by a log-det barrier path
// with damped Newton centering. Requires the origin strictly feasible.
// Throws std::invalid_argument on an infeasible start.
SolveReport maximize_linear_over_lmi(const LinearMatrixInequality& lmi,
                                     const Matrix& c, double tol = 1e-6,
                                     int max_iter = 5000);

// Frobenius projection of X0 onto the LMI feasible region by Dykstra
// alternating projections in a product space (affine block map vs the PSD
// cones). Used as the independent cross-check of project_conv_son.
Matrix project_lmi_dykstra(const LinearMatrixInequality& lmi,
                           const Matrix& x0, double tol = 1e-8,
                           int max_iter = 50000);

// Nearest point of conv SO(n) in Frobenius norm, via the special SVD and
// the parity-polytope projection of the special singular values.
Matrix project_conv_son(const Matrix& x, double tol = 1e-9);

}  // namespace sonreps
