#include "sonreps/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sonreps/geometry.hpp"
#include "sonreps/polytopes.hpp"

namespace sonreps {

EigenResult symmetric_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("symmetric_eig: eigensolver failed");
  const int d = static_cast<int>(m.rows());
  EigenResult r;
  r.eigenvalues = es.eigenvalues().reverse();
  r.eigenvectors = es.eigenvectors().rowwise().reverse();
  r.top_gap = d > 1 ? r.eigenvalues[0] - r.eigenvalues[1] : 0.0;
  return r;
}

namespace {

Vector vec_rowmajor(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  Vector v(n * x.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < x.cols(); ++j) v[i * x.cols() + j] = x(i, j);
  return v;
}

Matrix unvec_rowmajor(const Vector& v, int n) {
  Matrix x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = v[i * n + j];
  return x;
}

Matrix block_value(const LmiBlock& b, const Vector& x) {
  Matrix m = b.constant;
  for (std::size_t k = 0; k < b.coeff.size(); ++k)
    if (b.coeff[k].size() > 0) m -= x[static_cast<int>(k)] * b.coeff[k];
  return m;
}

double min_block_eig(const LinearMatrixInequality& lmi, const Vector& x) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& b : lmi.blocks) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(block_value(b, x),
                                             Eigen::EigenvaluesOnly);
    worst = std::min(worst, es.eigenvalues().minCoeff());
  }
  return worst;
}

}  // namespace

SolveReport maximize_linear_over_lmi(const LinearMatrixInequality& lmi,
                                     const Matrix& c, double tol,
                                     int max_iter) {
  const int n = lmi.n;
  const int nvar = n * n;
  const Vector cv = vec_rowmajor(c);

  // Reduce out the equality rows: x = F z keeps eq x = 0 automatic.
  Matrix f = Matrix::Identity(nvar, nvar);
  if (lmi.eq.rows() > 0) {
    Eigen::FullPivLU<Matrix> lu(lmi.eq);
    f = lu.kernel();
  }
  const int nred = static_cast<int>(f.cols());

  Vector x = Vector::Zero(nvar);
  if (min_block_eig(lmi, x) <= 1e-12)
    throw std::invalid_argument(
        "maximize_linear_over_lmi: origin is not strictly feasible");

  double total_dim = 0.0;
  for (const auto& b : lmi.blocks) total_dim += b.size();

  auto barrier = [&](const Vector& xv, double mu) {
    double val = -cv.dot(xv);
    for (const auto& b : lmi.blocks) {
      Eigen::LLT<Matrix> llt(block_value(b, xv));
      if (llt.info() != Eigen::Success)
        return std::numeric_limits<double>::infinity();
      double logdet = 0.0;
      for (int i = 0; i < b.size(); ++i)
        logdet += std::log(llt.matrixL()(i, i));
      val -= 2.0 * mu * logdet;
    }
    return val;
  };

  SolveReport rep;
  double mu = std::max(1.0, cv.cwiseAbs().maxCoeff());
  int iters = 0;
  while (mu * total_dim > tol && iters < max_iter) {
    // Damped Newton centering at the current mu.
    for (int inner = 0; inner < 200 && iters < max_iter; ++inner, ++iters) {
      Vector grad = -cv;
      Matrix hess = Matrix::Zero(nvar, nvar);
      for (const auto& b : lmi.blocks) {
        Matrix minv = block_value(b, x).inverse();
        std::vector<Vector> s(b.coeff.size());
        for (std::size_t k = 0; k < b.coeff.size(); ++k) {
          if (b.coeff[k].size() == 0) continue;
          Matrix sk = minv * b.coeff[k];
          grad[static_cast<int>(k)] += mu * sk.trace();
          s[k] = vec_rowmajor(sk);
        }
        for (std::size_t k = 0; k < b.coeff.size(); ++k) {
          if (s[k].size() == 0) continue;
          Vector skt = vec_rowmajor(unvec_rowmajor(s[k], b.size()).transpose());
          for (std::size_t l = k; l < b.coeff.size(); ++l) {
            if (s[l].size() == 0) continue;
            double h = mu * skt.dot(s[l]);
            hess(static_cast<int>(k), static_cast<int>(l)) += h;
            if (l != k) hess(static_cast<int>(l), static_cast<int>(k)) += h;
          }
        }
      }
      Vector gz = f.transpose() * grad;
      Matrix hz = f.transpose() * hess * f +
                  1e-12 * Matrix::Identity(nred, nred);
      Vector dz = hz.ldlt().solve(-gz);
      double decrement = -gz.dot(dz);
      if (decrement < 1e-11) break;

      double base = barrier(x, mu);
      double t = 1.0;
      Vector dx = f * dz;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
        Vector xn = x + t * dx;
        if (barrier(xn, mu) <= base - 0.25 * t * decrement) {
          x = xn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    mu *= 0.1;
  }

  rep.objective = cv.dot(x);
  rep.point = unvec_rowmajor(x, n);
  rep.iterations = iters;
  rep.termination = iters >= max_iter ? "iteration-limit" : "converged";
  rep.feasibility_residual = std::max(0.0, -min_block_eig(lmi, x));
  return rep;
}

namespace {

// Per-block data for the Dykstra projection. Every representation in this
// library has blocks whose nonzero coefficient matrices are pairwise
// orthogonal with a common squared norm alpha, so the coefficient map is a
// scaled isometry on its support and the block projection reduces to an
// inner Dykstra in the symmetric-matrix space of the block.
struct BlockProjector {
  const LmiBlock* block;
  std::vector<int> support;  // variable indices with a nonzero coefficient
  double alpha;

  Matrix apply(const Vector& x) const {
    Matrix s = Matrix::Zero(block->size(), block->size());
    for (int k : support) s += x[k] * block->coeff[k];
    return s;
  }

  Matrix proj_range(const Matrix& s) const {
    Matrix out = Matrix::Zero(s.rows(), s.cols());
    for (int k : support)
      out += (block->coeff[k].cwiseProduct(s).sum() / alpha) * block->coeff[k];
    return out;
  }

  static Matrix psd_part(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
    Vector ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  }

  // Frobenius projection of x onto {x : constant - sum coeff_k x_k >= 0},
  // leaving coordinates outside the support untouched.
  Vector project(const Vector& x) const {
    Matrix s = apply(x);
    Matrix p = Matrix::Zero(s.rows(), s.cols());
    Matrix q = Matrix::Zero(s.rows(), s.cols());
    for (int it = 0; it < 5000; ++it) {
      Matrix prev = s;
      Matrix sr = proj_range(s + p);
      p = s + p - sr;
      Matrix sk = block->constant - psd_part(block->constant - (sr + q));
      q = sr + q - sk;
      s = sk;
      if ((s - prev).norm() < 1e-12) break;
    }
    Vector out = x;
    for (int k : support)
      out[k] = block->coeff[k].cwiseProduct(s).sum() / alpha;
    return out;
  }
};

}  // namespace

Matrix project_lmi_dykstra(const LinearMatrixInequality& lmi, const Matrix& x0,
                           double tol, int max_iter) {
  const int n = lmi.n;
  const int nvar = n * n;

  std::vector<BlockProjector> blocks;
  for (const auto& b : lmi.blocks) {
    BlockProjector bp;
    bp.block = &b;
    bp.alpha = 0.0;
    for (int k = 0; k < nvar; ++k) {
      if (b.coeff[k].size() == 0 || b.coeff[k].norm() < 1e-12) continue;
      bp.support.push_back(k);
      double nk = b.coeff[k].squaredNorm();
      if (bp.alpha == 0.0)
        bp.alpha = nk;
      else if (std::abs(nk - bp.alpha) > 1e-9 * bp.alpha)
        throw std::logic_error("project_lmi_dykstra: coefficient norms differ");
    }
    for (std::size_t a = 0; a < bp.support.size(); ++a)
      for (std::size_t c = a + 1; c < bp.support.size(); ++c)
        if (std::abs(b.coeff[bp.support[a]]
                         .cwiseProduct(b.coeff[bp.support[c]])
                         .sum()) > 1e-9 * bp.alpha)
          throw std::logic_error(
              "project_lmi_dykstra: coefficients are not orthogonal");
    blocks.push_back(bp);
  }

  // Equality rows enter as one more set, an affine subspace with an exact
  // projector.
  Matrix eq_proj;
  if (lmi.eq.rows() > 0) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(lmi.eq);
    eq_proj = Matrix::Identity(nvar, nvar) -
              cod.pseudoInverse() * lmi.eq;
  }

  const int nsets = static_cast<int>(blocks.size()) + (lmi.eq.rows() > 0);
  std::vector<Vector> increments(nsets, Vector::Zero(nvar));
  Vector x = vec_rowmajor(x0);

  for (int cycle = 0; cycle * nsets < max_iter; ++cycle) {
    Vector before = x;
    int s = 0;
    for (const auto& bp : blocks) {
      Vector y = x + increments[s];
      Vector xn = bp.project(y);
      increments[s] = y - xn;
      x = xn;
      ++s;
    }
    if (lmi.eq.rows() > 0) {
      Vector y = x + increments[s];
      Vector xn = eq_proj * y;
      increments[s] = y - xn;
      x = xn;
    }
    if (cycle > 0 && (x - before).norm() < tol) break;
  }
  return unvec_rowmajor(x, n);
}

Matrix project_conv_son(const Matrix& x, double tol) {
  const int n = static_cast<int>(x.rows());
  if (x.cols() != n)
    throw std::invalid_argument("project_conv_son: not square");
  SpecialSVD s = special_svd(x, tol);
  Vector p = project_parity_polytope(n, s.sigma_tilde);
  return s.u * p.asDiagonal() * s.v.transpose();
}

}  // namespace sonreps
