#include <doctest.h>

#include <sonreps/polytopes.hpp>
#include <sonreps/random.hpp>

using namespace sonreps;

namespace {

// Brute-force nearest vertex-hull point by projecting onto every face of the
// V-description is hopeless; instead verify the variational inequality: p is
// the projection of x onto the convex set iff <x - p, z - p> <= 0 for all
// vertices z (the set is a polytope, so vertices suffice).
bool is_projection(const Vector& x, const Vector& p, const Matrix& verts,
                   double tol) {
  for (int r = 0; r < verts.rows(); ++r) {
    Vector z = verts.row(r).transpose();
    if ((x - p).dot(z - p) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("facet families and row counts of the canonical polytopes") {
  CHECK(hypercube(4).rows() == 8);
  CHECK(cross_polytope(4).rows() == 16);
  CHECK(parity_polytope(4).rows() == 8 + 8);
  CHECK(parity_polytope(3).rows() == 4);
  CHECK(parity_polar(4).rows() == 8);
  CHECK(odd_parity_polar(4).rows() == 8);
}

TEST_CASE("vertex sets: counts and membership") {
  for (int n = 2; n <= 6; ++n) {
    auto pp = parity_polytope(n);
    auto v = vertices(PolytopeKind::ParityPolytope, n);
    CHECK(v.vertices.rows() == (1 << (n - 1)));
    for (int r = 0; r < v.vertices.rows(); ++r) {
      Vector x = v.vertices.row(r).transpose();
      int negs = 0;
      for (int i = 0; i < n; ++i) negs += x[i] < 0;
      CHECK(negs % 2 == 0);
      CHECK(member(pp, x).verdict != Verdict::Outside);
    }
    auto vo = vertices(PolytopeKind::OddParityPolytope, n);
    CHECK(vo.vertices.rows() == (1 << (n - 1)));
  }
}

TEST_CASE("membership verdicts on hand points") {
  auto pp4 = parity_polytope(4);
  Vector inside = Vector::Zero(4);
  CHECK(member(pp4, inside).verdict == Verdict::Inside);
  Vector v(4);
  v << 1, 1, 1, 1;
  CHECK(member(pp4, v).verdict == Verdict::Boundary);
  v << 1, 1, 1, -1;  // odd sign pattern: cut by the matching odd-set facet
  CHECK(member(pp4, v).verdict == Verdict::Outside);
  v << 1, 1, 1, -0.999;
  CHECK(member(pp4, v).verdict == Verdict::Outside);
  // PP_3 is the tetrahedron of even sign vectors; the origin is inside.
  auto pp3 = parity_polytope(3);
  Vector w = Vector::Zero(3);
  CHECK(member(pp3, w).verdict == Verdict::Inside);
  w << 1, -1, -1;
  CHECK(member(pp3, w).verdict == Verdict::Boundary);
  w << -1, -1, -1;
  CHECK(member(pp3, w).verdict == Verdict::Outside);
}

TEST_CASE("PP_2 is the segment between (1,1) and (-1,-1)") {
  auto pp2 = parity_polytope(2);
  Vector v(2);
  v << 0.4, 0.4;
  CHECK(member(pp2, v).verdict != Verdict::Outside);
  v << 0.4, 0.3;
  CHECK(member(pp2, v).verdict == Verdict::Outside);
}

TEST_CASE("simplex LP on a known instance") {
  // max x + y over the unit box: value 2 at (1, 1).
  auto box = hypercube(2);
  Vector c(2);
  c << 1, 1;
  auto r = simplex_maximize(box.a, box.b, c);
  CHECK(!r.unbounded);
  CHECK(r.value == doctest::Approx(2.0));
  // Unbounded: drop the ceiling.
  Matrix a(1, 1);
  a << -1;
  Vector b(1);
  b << 0;
  Vector c1(1);
  c1 << 1;
  CHECK(simplex_maximize(a, b, c1).unbounded);
}

TEST_CASE("facet counts reproduce the minimal descriptions") {
  for (int n = 2; n <= 5; ++n)
    CHECK(facet_count(hypercube(n)) == 2 * n);
  for (int n = 2; n <= 5; ++n)
    CHECK(facet_count(cross_polytope(n)) == (1 << n));
  for (int n = 2; n <= 6; ++n)
    CHECK(facet_count(parity_polar(n)) == (1 << (n - 1)));
  CHECK(facet_count(parity_polytope(3)) == 4);
  CHECK(facet_count(parity_polytope(4)) == 8 + 8);
  CHECK(facet_count(parity_polytope(5)) == 10 + 16);
}

TEST_CASE("alternative parity-polytope description agrees on random points") {
  Rng rng(23);
  for (int n = 3; n <= 6; ++n)
    for (int t = 0; t < 2000; ++t) {
      Vector x = 1.5 * rng.gaussian_vector(n);
      CHECK(ppalt_check(n, x));
    }
}

TEST_CASE("parity projection matches the variational inequality") {
  Rng rng(29);
  for (int n = 2; n <= 6; ++n) {
    Matrix verts = vertices(PolytopeKind::ParityPolytope, n).vertices;
    for (int t = 0; t < 500; ++t) {
      Vector x = 2.0 * rng.gaussian_vector(n);
      Vector p = project_parity_polytope(n, x);
      CHECK(member(parity_polytope(n), p, 1e-7).verdict != Verdict::Outside);
      CHECK(is_projection(x, p, verts, 1e-7));
    }
  }
}

TEST_CASE("parity projection fixes points of the polytope") {
  Rng rng(31);
  for (int n = 2; n <= 5; ++n) {
    Matrix verts = vertices(PolytopeKind::ParityPolytope, n).vertices;
    for (int t = 0; t < 100; ++t) {
      // Random convex combination of vertices.
      Vector w(verts.rows());
      for (int i = 0; i < w.size(); ++i) w[i] = rng.uniform();
      w /= w.sum();
      Vector x = verts.transpose() * w;
      CHECK((project_parity_polytope(n, x) - x).norm() < 1e-9);
    }
  }
}
