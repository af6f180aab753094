#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

// Clifford algebra Cl(n) machinery: the even subalgebra Cl0(n), the generator
// multiplication matrices lambda_i / rho_i, the coefficient matrices A_ij of
// the quadratic map Q, and Spin(n) sampling/lifting.
//
// Basis convention: subsets I of {1..n} are encoded as n-bit ranks with
// rank = sum_{i in I} 2^(n-i), i.e. generator 1 owns the most significant
// bit. This matches the Kronecker-factor order of the generator matrices.
// The even subalgebra is indexed by the even-popcount ranks in ascending
// order, of which there are 2^(n-1).

namespace sonreps {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A signed permutation matrix M with M(r, perm[r]) = sign[r].
struct SignedPerm {
  std::vector<int> perm;
  std::vector<int> sign;

  int dim() const { return static_cast<int>(perm.size()); }

  static SignedPerm identity(int d);

  Vector apply(const Vector& v) const;
  // Matrix product this * other.
  SignedPerm compose(const SignedPerm& other) const;
  SignedPerm transpose() const;
  SignedPerm negate() const;
  Matrix dense() const;
};

// Ranks (ascending) of the even-cardinality subsets of {1..n}.
std::vector<int> even_ranks(int n);

struct GeneratorMatrices {
  int n = 0;
  std::vector<SignedPerm> lambda;  // lambda[i-1] is left mult by e_i, 2^n x 2^n
  std::vector<SignedPerm> rho;     // rho[i-1] is right mult by e_i
  std::vector<int> even;           // even-popcount ranks, ascending

  // 2^n x 2^(n-1) selection map with orthonormal 0/1 columns picking the
  // even ranks.
  Matrix p_even() const;
};

// Builds lambda_i, rho_i and the even selection. Requires 2 <= n <= 12.
GeneratorMatrices generator_matrices(int n);

// A symmetric signed permutation matrix of size 2^(n-1), used for the A_ij.
struct SignedSymmetricMatrix {
  std::vector<int> perm;
  std::vector<int> sign;

  int dim() const { return static_cast<int>(perm.size()); }
  Vector apply(const Vector& v) const;
  Matrix dense() const;
};

// A_ij = -P_even^T lambda_i rho_j P_even, 1-based indices. The full family
// for a given n is cached after first construction and safe to share.
const SignedSymmetricMatrix& a_matrix(int n, int i, int j);

// All n^2 matrices, row-major: family[(i-1)*n + (j-1)].
const std::vector<SignedSymmetricMatrix>& a_family(int n);

// Element of the even subalgebra Cl0(n) in even-basis coordinates.
struct CliffordEvenElement {
  int n = 0;
  Vector coords;  // length 2^(n-1), indexed by even_ranks(n)

  double squared_norm() const { return coords.squaredNorm(); }
};

// The multiplicative identity e_empty.
CliffordEvenElement even_identity(int n);

// [Q(x)]_ij = <x, A_ij x>, an n x n matrix. Maps Spin(n) onto SO(n).
Matrix quad_map(const CliffordEvenElement& x);

// Algebra product xy inside Cl0(n).
CliffordEvenElement even_product(const CliffordEvenElement& x,
                                 const CliffordEvenElement& y);

// conj(e_I) = (-1)^|I| e_{i_k}...e_{i_1}; on even elements a signed identity.
CliffordEvenElement conjugate(const CliffordEvenElement& x);

// Product u*v of two vectors u, v in the span of the generators:
// uv = -<u,v> e_empty + sum_{i<j} (u_i v_j - u_j v_i) e_{ij}.
CliffordEvenElement vector_pair_product(const Vector& u, const Vector& v);

// Product of 2k independent uniform unit vectors on S^(n-1); an element of
// Spin(n). Deterministic for a fixed seed. Requires 1 <= k <= 2n.
CliffordEvenElement spin_sample(int n, int k, std::uint64_t seed);

// Lifts a rotation X to x in Spin(n) with Q(x) = X, via reflection
// factorization. Throws std::invalid_argument if X is not a rotation
// within tol.
CliffordEvenElement spin_lift(const Matrix& X, double tol = 1e-9);

// Phi_{(U,V)}(x) = spin_lift(U) * x * conj(spin_lift(V)); satisfies
// U Q(x) V^T = Q(Phi x).
CliffordEvenElement equivariance_map(const Matrix& U, const Matrix& V,
                                     const CliffordEvenElement& x,
                                     double tol = 1e-9);

}  // namespace sonreps
