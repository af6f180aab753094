#include "sonreps/geometry.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "sonreps/clifford.hpp"
#include "sonreps/random.hpp"
#include "sonreps/solver.hpp"

namespace sonreps {

SpecialSVD special_svd(const Matrix& x, double tol) {
  if (!x.allFinite())
    throw std::invalid_argument("special_svd: non-finite input");
  const int n = static_cast<int>(x.rows());
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SpecialSVD s;
  s.u = svd.matrixU();
  s.v = svd.matrixV();
  s.sigma_tilde = svd.singularValues();
  if (s.u.determinant() * s.v.determinant() < 0) {
    s.u.col(n - 1) = -s.u.col(n - 1);
    s.sigma_tilde[n - 1] = -s.sigma_tilde[n - 1];
  }
  (void)tol;
  return s;
}

MembershipReport member_conv_son(const Matrix& x, double tol) {
  const int n = static_cast<int>(x.rows());
  if (x.cols() != n) throw std::invalid_argument("member_conv_son: not square");
  SpecialSVD s = special_svd(x);
  PolytopeMembership pm = member(parity_polytope(n), s.sigma_tilde, tol);
  MembershipReport r;
  r.body = BodyKind::ConvSOn;
  r.verdict = pm.verdict;
  r.slack = pm.worst_slack;
  r.violated_row = pm.violating_row;
  r.witness = s.sigma_tilde;
  return r;
}

namespace {

// lambda_max of sum Y_ij s_i A_ij together with the top eigenvector.
std::pair<double, Vector> pencil_top(const Matrix& y, bool flip_last) {
  const int n = static_cast<int>(y.rows());
  const auto& fam = a_family(n);
  const int m = 1 << (n - 1);
  Matrix p = Matrix::Zero(m, m);
  for (int i = 0; i < n; ++i) {
    double s = (flip_last && i == n - 1) ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) p += s * y(i, j) * fam[i * n + j].dense();
  }
  EigenResult er = symmetric_eig(p);
  return {er.eigenvalues[0], er.eigenvectors.col(0)};
}

}  // namespace

MembershipReport member_polar(BodyKind kind, const Matrix& y, double tol) {
  const int n = static_cast<int>(y.rows());
  if (y.cols() != n) throw std::invalid_argument("member_polar: not square");
  MembershipReport r;
  r.body = kind;
  double top;
  switch (kind) {
    case BodyKind::SOnPolar: {
      auto [t, v] = pencil_top(y, false);
      top = t;
      r.witness = v;
      r.violated_row = 0;
      break;
    }
    case BodyKind::SOnMinusPolar: {
      auto [t, v] = pencil_top(y, true);
      top = t;
      r.witness = v;
      r.violated_row = 0;
      break;
    }
    case BodyKind::OnPolar: {
      auto [t0, v0] = pencil_top(y, false);
      auto [t1, v1] = pencil_top(y, true);
      top = std::max(t0, t1);
      r.witness = t0 >= t1 ? v0 : v1;
      r.violated_row = t0 >= t1 ? 0 : 1;
      break;
    }
    default:
      throw std::invalid_argument("member_polar: not a polar body");
  }
  r.slack = 1.0 - top;
  if (r.slack < -tol)
    r.verdict = Verdict::Outside;
  else if (r.slack > tol)
    r.verdict = Verdict::Inside;
  else
    r.verdict = Verdict::Boundary;
  return r;
}

SupportResult support_conv_son(const Matrix& c) {
  const int n = static_cast<int>(c.rows());
  if (c.cols() != n)
    throw std::invalid_argument("support_conv_son: not square");
  const auto& fam = a_family(n);
  const int m = 1 << (n - 1);
  auto assemble = [&](const Matrix& y) {
    Matrix p = Matrix::Zero(m, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p += y(i, j) * fam[i * n + j].dense();
    return p;
  };

  EigenResult er = symmetric_eig(assemble(c));
  SupportResult res;
  res.value = er.eigenvalues[0];
  res.eigengap = er.top_gap;
  Vector v = er.eigenvectors.col(0);

  if (m > 1 && er.top_gap < 1e-10) {
    // Multiple top eigenvalue: an arbitrary eigenspace vector may leave
    // Spin(n). Jitter C to break the tie and keep the unperturbed value.
    res.degenerate = true;
    Rng rng(0x5eed5eedULL);
    Matrix cj = c + 1e-8 * rng.gaussian_matrix(n, n);
    EigenResult ej = symmetric_eig(assemble(cj));
    v = ej.eigenvectors.col(0);
  }
  CliffordEvenElement x;
  x.n = n;
  x.coords = v / v.norm();
  res.maximizer = quad_map(x);
  return res;
}

double support_conv_on(const Matrix& c) {
  Eigen::JacobiSVD<Matrix> svd(c);
  return svd.singularValues().sum();
}

double horn_check(const Matrix& x, double tol) {
  const int n = static_cast<int>(x.rows());
  if (x.cols() != n ||
      (x.transpose() * x - Matrix::Identity(n, n)).norm() > tol ||
      std::abs(x.determinant() - 1.0) > tol)
    throw std::invalid_argument("horn_check: input is not a rotation");
  return member(parity_polytope(n), x.diagonal()).worst_slack;
}

}  // namespace sonreps
