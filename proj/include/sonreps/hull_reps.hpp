#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

// Spectrahedral representations of conv SO(n), SO(n) polar, conv O(n),
// O(n) polar, and the odd component SO^-(n) polar, together with the PSD
// lifts of conv SO(n) and of the nuclear-norm ball, and SDPA export.

namespace sonreps {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class BodyKind { ConvSOn, SOnPolar, ConvOn, OnPolar, SOnMinusPolar };

// One PSD block: feasible iff constant - sum_ij coeff[(i-1)*n+(j-1)] X_ij
// is positive semidefinite.
struct LmiBlock {
  Matrix constant;
  std::vector<Matrix> coeff;  // n^2 entries, row-major over (i,j)

  int size() const { return static_cast<int>(constant.rows()); }
};

struct LinearMatrixInequality {
  int n = 0;  // matrix variable is n x n
  std::vector<LmiBlock> blocks;
  // Optional affine restrictions: each row r gives sum_k eq(r,k) vec(X)_k = 0
  // with vec row-major. Used by the n=2 form of conv SO(2).
  Matrix eq;

  int total_size() const;
};

LinearMatrixInequality son_polar_rep(int n);        // size 2^(n-1)
LinearMatrixInequality on_polar_rep(int n);         // size 2^n, two blocks
LinearMatrixInequality son_minus_polar_rep(int n);  // Y -> RY substitution
LinearMatrixInequality conv_son_rep(int n);         // 2^(n-1)+2n (n>=4)
LinearMatrixInequality conv_on_rep(int n);          // size 2n
LinearMatrixInequality body_rep(BodyKind kind, int n);

// conv SO(n) as the projection of the trace-one PSD matrices of size
// 2^(n-1): Z -> [<A_ij, Z>]_ij.
struct PsdLiftConvSOn {
  int n = 0;
  int cone_size = 0;  // 2^(n-1)
  Matrix output(const Matrix& z) const;
};
PsdLiftConvSOn psd_lift_conv_son(int n);

// O(n) polar (nuclear-norm ball) as a PSD lift of size 2n:
// {Z : exists X, Y with [[X, Z], [Z^T, Y]] >= 0, tr X + tr Y = 2}.
struct NuclearLift {
  int n = 0;
  static Matrix assemble(const Matrix& x, const Matrix& z, const Matrix& y);
  // Returns a feasible certificate (X, Y) when one exists.
  bool feasible(const Matrix& z, Matrix* x_out = nullptr,
                Matrix* y_out = nullptr, double tol = 1e-9) const;
};
NuclearLift nuclear_lift(int n);

struct LmiEvaluation {
  std::vector<Matrix> block_values;  // constant - sum coeff X, per block
  double min_eigenvalue;             // over all blocks
  double max_equality_violation;     // 0 when no equality rows
};
LmiEvaluation evaluate_lmi(const LinearMatrixInequality& lmi, const Matrix& x);

// SDPA sparse format (.dat-s): m = n^2 variables ordered row-major, upper
// triangle only, deterministic entry order. Equality rows, when present,
// are emitted as a diagonal LP block of paired inequalities.
void export_sdpa(const LinearMatrixInequality& lmi, const Matrix& objective,
                 const std::string& path);
void export_sdpa(const LinearMatrixInequality& lmi, const Matrix& objective,
                 std::ostream& os);

void dump_block_csv(const LmiBlock& block, int variable_index,
                    std::ostream& os);

}  // namespace sonreps
