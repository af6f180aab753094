#include "sonreps/boundary.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sonreps/geometry.hpp"

namespace sonreps {

ProjectionPlane ProjectionPlane::orthonormalize(const Matrix& a,
                                                const Matrix& b) {
  ProjectionPlane p;
  double na = a.norm();
  if (na < 1e-12) throw std::invalid_argument("degenerate projection plane");
  p.d1 = a / na;
  Matrix r = b - p.d1.cwiseProduct(b).sum() * p.d1;
  double nr = r.norm();
  if (nr < 1e-12) throw std::invalid_argument("degenerate projection plane");
  p.d2 = r / nr;
  return p;
}

ProjectionPlane ProjectionPlane::standard(int n) {
  Matrix e11 = Matrix::Zero(n, n), e12 = Matrix::Zero(n, n);
  e11(0, 0) = 1.0;
  e12(0, 1) = 1.0;
  return orthonormalize(e11, e12);
}

std::vector<Eigen::Vector2d> boundary_points(BodyKind body, int n,
                                             const ProjectionPlane& plane,
                                             int count) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(count);
  for (int t = 0; t < count; ++t) {
    double theta = 2.0 * M_PI * t / count;
    Matrix c = std::cos(theta) * plane.d1 + std::sin(theta) * plane.d2;
    Matrix x;
    switch (body) {
      case BodyKind::ConvSOn:
        x = support_conv_son(c).maximizer;
        break;
      case BodyKind::ConvOn: {
        Eigen::JacobiSVD<Matrix> svd(c,
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
        x = svd.matrixU() * svd.matrixV().transpose();
        break;
      }
      default:
        throw std::invalid_argument("boundary_points: not a hull body");
    }
    pts.emplace_back(plane.d1.cwiseProduct(x).sum(),
                     plane.d2.cwiseProduct(x).sum());
  }
  return pts;
}

double polar_ray_length(BodyKind body, int n, const ProjectionPlane& plane,
                        double theta, double tol) {
  Matrix dir = std::cos(theta) * plane.d1 + std::sin(theta) * plane.d2;
  auto inside = [&](double t) {
    return member_polar(body, t * dir, 0.0).slack >= 0.0;
  };
  double hi = 1.0;
  int grow = 0;
  while (inside(hi)) {
    hi *= 2.0;
    if (++grow > 60) return std::numeric_limits<double>::infinity();
  }
  double lo = 0.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> polar_section(BodyKind body, int n,
                                  const ProjectionPlane& plane, int count,
                                  double tol) {
  std::vector<double> out;
  out.reserve(count);
  for (int t = 0; t < count; ++t)
    out.push_back(
        polar_ray_length(body, n, plane, 2.0 * M_PI * t / count, tol));
  return out;
}

}  // namespace sonreps
