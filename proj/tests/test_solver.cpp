#include <doctest.h>

#include <sonreps/geometry.hpp>
#include <sonreps/random.hpp>
#include <sonreps/solver.hpp>

using namespace sonreps;

TEST_CASE("symmetric_eig sorts descending and reports the top gap") {
  Matrix m(3, 3);
  m << 2, 0, 0, 0, -1, 0, 0, 0, 5;
  auto r = symmetric_eig(m);
  CHECK(r.eigenvalues[0] == doctest::Approx(5.0));
  CHECK(r.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(r.eigenvalues[2] == doctest::Approx(-1.0));
  CHECK(r.top_gap == doctest::Approx(3.0));
  // Eigenvector columns match: M v_0 = 5 v_0.
  CHECK((m * r.eigenvectors.col(0) - 5.0 * r.eigenvectors.col(0)).norm() <
        1e-12);
  Rng rng(97);
  for (int t = 0; t < 20; ++t) {
    Matrix g = rng.gaussian_matrix(5, 5);
    auto e = symmetric_eig(g);
    Matrix sym = 0.5 * (g + g.transpose());
    CHECK((e.eigenvectors * e.eigenvalues.asDiagonal() *
               e.eigenvectors.transpose() -
           sym)
              .norm() < 1e-10);
  }
}

TEST_CASE("barrier solver matches the eigenvalue support oracle") {
  Rng rng(101);
  for (int n = 3; n <= 4; ++n) {
    auto rep = conv_son_rep(n);
    for (int t = 0; t < 10; ++t) {
      Matrix c = rng.gaussian_matrix(n, n);
      auto sol = maximize_linear_over_lmi(rep, c, 1e-7);
      double oracle = support_conv_son(c).value;
      CHECK(sol.objective == doctest::Approx(oracle).epsilon(1e-5));
      CHECK(sol.feasibility_residual <= 1e-8);
    }
  }
}

TEST_CASE("barrier solver handles the equality-constrained n=2 body") {
  auto rep = conv_son_rep(2);
  Matrix c(2, 2);
  c << 1, 0, 0, 1;  // best rotation is the identity, value 2
  auto sol = maximize_linear_over_lmi(rep, c, 1e-8);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-5));
  CHECK((sol.point - Matrix::Identity(2, 2)).norm() < 1e-2);
}

TEST_CASE("barrier solver rejects an infeasible origin") {
  LinearMatrixInequality lmi;
  lmi.n = 1;
  LmiBlock b;
  b.constant = -Matrix::Identity(1, 1);
  b.coeff.assign(1, Matrix::Zero(1, 1));
  lmi.blocks.push_back(b);
  CHECK_THROWS_AS(
      maximize_linear_over_lmi(lmi, Matrix::Identity(1, 1)),
      std::invalid_argument);
}

TEST_CASE("projection onto conv SO(n): idempotent, optimal, inside") {
  Rng rng(103);
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t < 30; ++t) {
      Matrix x = 1.5 * rng.gaussian_matrix(n, n);
      Matrix p = project_conv_son(x);
      CHECK(member_conv_son(p, 1e-7).verdict != Verdict::Outside);
      CHECK((project_conv_son(p) - p).norm() < 1e-8);
      // Variational inequality against sampled rotations.
      for (int k = 0; k < 100; ++k) {
        Matrix q = rng.haar_rotation(n);
        CHECK((x - p).cwiseProduct(q - p).sum() <= 1e-7);
      }
      // Points already inside are fixed.
      Matrix q = rng.haar_rotation(n);
      CHECK((project_conv_son(q) - q).norm() < 1e-9);
    }
}

TEST_CASE("Dykstra projection agrees with the closed-form projection") {
  Rng rng(107);
  for (int n = 2; n <= 4; ++n) {
    auto rep = conv_son_rep(n);
    for (int t = 0; t < 15; ++t) {
      Matrix x = 1.3 * rng.gaussian_matrix(n, n);
      Matrix pd = project_lmi_dykstra(rep, x, 1e-10);
      Matrix pc = project_conv_son(x);
      CHECK((pd - pc).norm() < 1e-4);
    }
  }
}
