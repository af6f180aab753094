#include "sonreps/hull_reps.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "sonreps/clifford.hpp"

namespace sonreps {

namespace {

void check_range(int n, int lo, const char* what) {
  if (n < lo || n > 12) throw std::out_of_range(what);
}

// Block I_m - sum A_ij [SY]_ij where S = diag(s). With R = diag(1,..,1,-1)
// the entries satisfy [RY]_ij = s_i Y_ij, so the coefficient of Y_ij is
// s_i A_ij.
LmiBlock pencil_block(int n, const Vector& s, double scale) {
  const int m = 1 << (n - 1);
  LmiBlock b;
  b.constant = scale * Matrix::Identity(m, m);
  const auto& fam = a_family(n);
  b.coeff.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b.coeff.push_back(s[i] * fam[i * n + j].dense());
  return b;
}

Vector ones(int n) { return Vector::Ones(n); }

Vector r_signs(int n) {
  Vector s = Vector::Ones(n);
  s[n - 1] = -1.0;
  return s;
}

// Block I_2n - [[0, X], [X^T, 0]], i.e. the operator-norm constraint.
LmiBlock operator_norm_block(int n) {
  LmiBlock b;
  b.constant = Matrix::Identity(2 * n, 2 * n);
  b.coeff.assign(n * n, Matrix::Zero(2 * n, 2 * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix& c = b.coeff[i * n + j];
      c(i, n + j) = 1.0;
      c(n + j, i) = 1.0;
    }
  return b;
}

}  // namespace

int LinearMatrixInequality::total_size() const {
  int t = 0;
  for (const auto& b : blocks) t += b.size();
  return t;
}

LinearMatrixInequality son_polar_rep(int n) {
  check_range(n, 2, "son_polar_rep: n out of range");
  LinearMatrixInequality lmi;
  lmi.n = n;
  lmi.blocks.push_back(pencil_block(n, ones(n), 1.0));
  return lmi;
}

LinearMatrixInequality son_minus_polar_rep(int n) {
  check_range(n, 2, "son_minus_polar_rep: n out of range");
  LinearMatrixInequality lmi;
  lmi.n = n;
  lmi.blocks.push_back(pencil_block(n, r_signs(n), 1.0));
  return lmi;
}

LinearMatrixInequality on_polar_rep(int n) {
  check_range(n, 2, "on_polar_rep: n out of range");
  LinearMatrixInequality lmi;
  lmi.n = n;
  lmi.blocks.push_back(pencil_block(n, ones(n), 1.0));
  lmi.blocks.push_back(pencil_block(n, r_signs(n), 1.0));
  return lmi;
}

LinearMatrixInequality conv_on_rep(int n) {
  if (n < 1 || n > 12) throw std::out_of_range("conv_on_rep: n out of range");
  LinearMatrixInequality lmi;
  lmi.n = n;
  lmi.blocks.push_back(operator_norm_block(n));
  return lmi;
}

LinearMatrixInequality conv_son_rep(int n) {
  check_range(n, 2, "conv_son_rep: n out of range");
  LinearMatrixInequality lmi;
  lmi.n = n;
  if (n == 2) {
    // [[1+c, s], [s, 1-c]] >= 0 on the plane X_11 = X_22, X_12 = -X_21,
    // with c = X_11 and s = X_21.
    LmiBlock b;
    b.constant = Matrix::Identity(2, 2);
    b.coeff.assign(4, Matrix::Zero(2, 2));
    b.coeff[0] << -1, 0, 0, 1;   // X_11
    b.coeff[2] << 0, -1, -1, 0;  // X_21
    lmi.blocks.push_back(b);
    lmi.eq = Matrix::Zero(2, 4);
    lmi.eq(0, 0) = 1.0;
    lmi.eq(0, 3) = -1.0;  // X_11 - X_22 = 0
    lmi.eq(1, 1) = 1.0;
    lmi.eq(1, 2) = 1.0;  // X_12 + X_21 = 0
    return lmi;
  }
  if (n == 3) {
    lmi.blocks.push_back(pencil_block(3, r_signs(3), 1.0));
    return lmi;
  }
  lmi.blocks.push_back(operator_norm_block(n));
  lmi.blocks.push_back(
      pencil_block(n, r_signs(n), static_cast<double>(n - 2)));
  return lmi;
}

LinearMatrixInequality body_rep(BodyKind kind, int n) {
  switch (kind) {
    case BodyKind::ConvSOn:
      return conv_son_rep(n);
    case BodyKind::SOnPolar:
      return son_polar_rep(n);
    case BodyKind::ConvOn:
      return conv_on_rep(n);
    case BodyKind::OnPolar:
      return on_polar_rep(n);
    case BodyKind::SOnMinusPolar:
      return son_minus_polar_rep(n);
  }
  throw std::invalid_argument("body_rep: unknown kind");
}

Matrix PsdLiftConvSOn::output(const Matrix& z) const {
  const auto& fam = a_family(n);
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = fam[i * n + j].dense().cwiseProduct(z).sum();
  return out;
}

PsdLiftConvSOn psd_lift_conv_son(int n) {
  check_range(n, 2, "psd_lift_conv_son: n out of range");
  PsdLiftConvSOn lift;
  lift.n = n;
  lift.cone_size = 1 << (n - 1);
  return lift;
}

Matrix NuclearLift::assemble(const Matrix& x, const Matrix& z,
                             const Matrix& y) {
  const int n = static_cast<int>(z.rows());
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = x;
  m.topRightCorner(n, n) = z;
  m.bottomLeftCorner(n, n) = z.transpose();
  m.bottomRightCorner(n, n) = y;
  return m;
}

bool NuclearLift::feasible(const Matrix& z, Matrix* x_out, Matrix* y_out,
                           double tol) const {
  Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double nuclear = svd.singularValues().sum();
  if (nuclear > 1.0 + tol) return false;
  // Certificate X = U S U^T + c I, Y = V S V^T + c I with c padding the
  // traces to 2; [U;V] diag(sigma) [U;V]^T >= 0 gives the PSD block.
  const double pad = (1.0 - nuclear) / n;
  Matrix s = svd.singularValues().asDiagonal();
  if (x_out)
    *x_out = svd.matrixU() * s * svd.matrixU().transpose() +
             pad * Matrix::Identity(n, n);
  if (y_out)
    *y_out = svd.matrixV() * s * svd.matrixV().transpose() +
             pad * Matrix::Identity(n, n);
  return true;
}

NuclearLift nuclear_lift(int n) {
  if (n < 1 || n > 12) throw std::out_of_range("nuclear_lift: n out of range");
  NuclearLift lift;
  lift.n = n;
  return lift;
}

LmiEvaluation evaluate_lmi(const LinearMatrixInequality& lmi, const Matrix& x) {
  if (x.rows() != lmi.n || x.cols() != lmi.n)
    throw std::invalid_argument("evaluate_lmi: variable shape mismatch");
  LmiEvaluation ev;
  ev.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& b : lmi.blocks) {
    Matrix m = b.constant;
    for (int i = 0; i < lmi.n; ++i)
      for (int j = 0; j < lmi.n; ++j)
        m -= x(i, j) * b.coeff[i * lmi.n + j];
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    ev.min_eigenvalue = std::min(ev.min_eigenvalue, es.eigenvalues()[0]);
    ev.block_values.push_back(std::move(m));
  }
  ev.max_equality_violation = 0.0;
  if (lmi.eq.rows() > 0) {
    Vector v(lmi.n * lmi.n);
    for (int i = 0; i < lmi.n; ++i)
      for (int j = 0; j < lmi.n; ++j) v[i * lmi.n + j] = x(i, j);
    ev.max_equality_violation = (lmi.eq * v).cwiseAbs().maxCoeff();
  }
  return ev;
}

void export_sdpa(const LinearMatrixInequality& lmi, const Matrix& objective,
                 std::ostream& os) {
  const int n = lmi.n;
  const int m = n * n;
  if (objective.rows() != n || objective.cols() != n)
    throw std::invalid_argument("export_sdpa: objective shape mismatch");
  const int neq = static_cast<int>(lmi.eq.rows());
  const int nblocks = static_cast<int>(lmi.blocks.size()) + (neq > 0 ? 1 : 0);

  os << m << "\n" << nblocks << "\n";
  for (std::size_t b = 0; b < lmi.blocks.size(); ++b)
    os << lmi.blocks[b].size() << (b + 1 < lmi.blocks.size() || neq ? " " : "");
  if (neq > 0) os << -(2 * neq);  // LP block of paired equality rows
  os << "\n";
  os << std::setprecision(17);
  for (int k = 0; k < m; ++k)
    os << objective(k / n, k % n) << (k + 1 < m ? " " : "");
  os << "\n";

  // Convention: constraint is sum_k x_k F_k - F_0 >= 0 per block, so
  // F_0 = -constant and F_k = -coeff_k.
  auto emit = [&](int matno, int blkno, const Matrix& f) {
    for (int i = 0; i < f.rows(); ++i)
      for (int j = i; j < f.cols(); ++j)
        if (f(i, j) != 0.0)
          os << matno << " " << blkno << " " << i + 1 << " " << j + 1 << " "
             << f(i, j) << "\n";
  };
  for (std::size_t b = 0; b < lmi.blocks.size(); ++b)
    emit(0, static_cast<int>(b) + 1, -lmi.blocks[b].constant);
  for (int k = 0; k < m; ++k)
    for (std::size_t b = 0; b < lmi.blocks.size(); ++b)
      emit(k + 1, static_cast<int>(b) + 1, -lmi.blocks[b].coeff[k]);
  if (neq > 0) {
    const int blk = nblocks;
    for (int k = 0; k < m; ++k)
      for (int r = 0; r < neq; ++r) {
        double v = lmi.eq(r, k);
        if (v == 0.0) continue;
        os << k + 1 << " " << blk << " " << 2 * r + 1 << " " << 2 * r + 1
           << " " << v << "\n";
        os << k + 1 << " " << blk << " " << 2 * r + 2 << " " << 2 * r + 2
           << " " << -v << "\n";
      }
  }
}

void export_sdpa(const LinearMatrixInequality& lmi, const Matrix& objective,
                 const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("export_sdpa: cannot open " + path);
  export_sdpa(lmi, objective, f);
  if (!f.good()) throw std::runtime_error("export_sdpa: write failed " + path);
}

void dump_block_csv(const LmiBlock& block, int variable_index,
                    std::ostream& os) {
  const Matrix& m = variable_index < 0 ? block.constant
                                       : block.coeff.at(variable_index);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j)
      os << m(i, j) << (j + 1 < m.cols() ? "," : "");
    os << "\n";
  }
}

}  // namespace sonreps
