#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sonreps/hull_reps.hpp"

// Two-dimensional boundary sampling of the hull bodies and their polars,
// used for figure output: support-oracle maximizers projected to a plane
// for the convex hulls, ray-shooting sections for the polars.

namespace sonreps {

struct ProjectionPlane {
  Matrix d1;  // orthonormal in the trace inner product
  Matrix d2;

  // Gram-Schmidt on (a, b); throws if the pair is degenerate.
  static ProjectionPlane orthonormalize(const Matrix& a, const Matrix& b);
  // Span of E_11 and E_12, orthonormalized.
  static ProjectionPlane standard(int n);
};

// For conv SO(n) / conv O(n): maximizes the functional cos(theta) D1 +
// sin(theta) D2 over the body for `count` equispaced angles and returns the
// projected maximizers (<D1, X>, <D2, X>).
std::vector<Eigen::Vector2d> boundary_points(BodyKind body, int n,
                                             const ProjectionPlane& plane,
                                             int count);

// For the polar bodies: length of the boundary ray along
// cos(theta) D1 + sin(theta) D2, found by bracket growth plus bisection on
// the membership oracle. Returns +infinity for recession directions.
double polar_ray_length(BodyKind body, int n, const ProjectionPlane& plane,
                        double theta, double tol = 1e-8);

// Full polar section: ray lengths for `count` equispaced angles.
std::vector<double> polar_section(BodyKind body, int n,
                                  const ProjectionPlane& plane, int count,
                                  double tol = 1e-8);

}  // namespace sonreps
