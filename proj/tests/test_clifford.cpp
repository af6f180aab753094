#include <doctest.h>

#include <sonreps/clifford.hpp>
#include <sonreps/random.hpp>

using namespace sonreps;

namespace {

// Reference check that a matrix is a signed permutation with entries in
// {-1, 0, 1} and exactly one nonzero per row and column.
bool is_signed_permutation(const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    int row_nz = 0;
    for (int j = 0; j < m.cols(); ++j) {
      double v = m(i, j);
      if (v != 0.0 && v != 1.0 && v != -1.0) return false;
      if (v != 0.0) ++row_nz;
    }
    if (row_nz != 1) return false;
  }
  for (int j = 0; j < m.cols(); ++j) {
    int col_nz = 0;
    for (int i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0.0) ++col_nz;
    if (col_nz != 1) return false;
  }
  return true;
}

Matrix dense_left_mult_table(int n, const CliffordEvenElement& x) {
  // Left multiplication by x as a matrix on even coordinates, built one
  // basis vector at a time. Oracle for associativity checks.
  const int d = 1 << (n - 1);
  Matrix m(d, d);
  for (int j = 0; j < d; ++j) {
    CliffordEvenElement b;
    b.n = n;
    b.coords = Vector::Zero(d);
    b.coords[j] = 1.0;
    m.col(j) = even_product(x, b).coords;
  }
  return m;
}

}  // namespace

TEST_CASE("generator matrices are signed permutations obeying the relations") {
  for (int n = 2; n <= 5; ++n) {
    auto g = generator_matrices(n);
    const int d = 1 << n;
    Matrix id = Matrix::Identity(d, d);
    for (int i = 0; i < n; ++i) {
      Matrix li = g.lambda[i].dense();
      Matrix ri = g.rho[i].dense();
      CHECK(is_signed_permutation(li));
      CHECK(is_signed_permutation(ri));
      // e_i^2 = -1 on both sides.
      CHECK((li * li + id).norm() == 0.0);
      CHECK((ri * ri + id).norm() == 0.0);
      for (int j = i + 1; j < n; ++j) {
        Matrix lj = g.lambda[j].dense();
        CHECK((li * lj + lj * li).norm() == 0.0);  // anticommute
      }
      // Left and right multiplications commute (associativity).
      for (int j = 0; j < n; ++j) {
        Matrix rj = g.rho[j].dense();
        CHECK((li * rj - rj * li).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("a_matrix family: symmetric signed permutations, diagonal A_ii") {
  for (int n = 2; n <= 8; ++n) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        Matrix a = a_matrix(n, i, j).dense();
        CHECK((a - a.transpose()).norm() == 0.0);
        CHECK(is_signed_permutation(a));
        if (i == j) CHECK((a - Matrix(a.diagonal().asDiagonal())).norm() == 0.0);
      }
  }
}

TEST_CASE("a_matrix family is orthogonal with norm 2^(n-1) for n >= 3") {
  // At n = 2 the family degenerates: A_11 = A_22 and A_12 = -A_21.
  CHECK(a_matrix(2, 1, 1).dense() == a_matrix(2, 2, 2).dense());
  CHECK(a_matrix(2, 1, 2).dense() == Matrix(-a_matrix(2, 2, 1).dense()));
  for (int n = 3; n <= 5; ++n) {
    const auto& fam = a_family(n);
    const double alpha = 1 << (n - 1);
    for (int p = 0; p < n * n; ++p)
      for (int q = p; q < n * n; ++q) {
        double ip = fam[p].dense().cwiseProduct(fam[q].dense()).sum();
        CHECK(ip == (p == q ? alpha : 0.0));
      }
  }
}

TEST_CASE("n=2 matrices match the closed form") {
  Matrix a11(2, 2), a12(2, 2), a21(2, 2), a22(2, 2);
  a11 << 1, 0, 0, -1;
  a12 << 0, -1, -1, 0;
  a21 << 0, 1, 1, 0;
  a22 << 1, 0, 0, -1;
  CHECK(a_matrix(2, 1, 1).dense() == a11);
  CHECK(a_matrix(2, 1, 2).dense() == a12);
  CHECK(a_matrix(2, 2, 1).dense() == a21);
  CHECK(a_matrix(2, 2, 2).dense() == a22);
}

TEST_CASE("quad_map sends unit even elements of Spin(n) to rotations") {
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      auto x = spin_sample(n, 1 + trial % 3, 100 * n + trial);
      CHECK(x.coords.norm() == doctest::Approx(1.0).epsilon(1e-12));
      Matrix q = quad_map(x);
      CHECK((q.transpose() * q - Matrix::Identity(n, n)).norm() < 1e-12);
      CHECK(q.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("spin_lift inverts quad_map on Haar rotations") {
  Rng rng(7);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Matrix q = rng.haar_rotation(n);
      auto x = spin_lift(q);
      CHECK(x.coords.norm() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK((quad_map(x) - q).norm() < 1e-9);
    }
  }
  CHECK_THROWS_AS(spin_lift(2.0 * Matrix::Identity(3, 3)),
                  std::invalid_argument);
  Matrix refl = Matrix::Identity(3, 3);
  refl(2, 2) = -1.0;
  CHECK_THROWS_AS(spin_lift(refl), std::invalid_argument);
}

TEST_CASE("even_product is associative and has the identity") {
  Rng rng(11);
  for (int n = 2; n <= 5; ++n) {
    const int d = 1 << (n - 1);
    CliffordEvenElement a{n, rng.gaussian_vector(d)};
    CliffordEvenElement b{n, rng.gaussian_vector(d)};
    CliffordEvenElement c{n, rng.gaussian_vector(d)};
    auto ab_c = even_product(even_product(a, b), c);
    auto a_bc = even_product(a, even_product(b, c));
    CHECK((ab_c.coords - a_bc.coords).norm() < 1e-10);
    CHECK((even_product(even_identity(n), a).coords - a.coords).norm() == 0.0);
    CHECK((even_product(a, even_identity(n)).coords - a.coords).norm() == 0.0);
    // Left multiplication matrices compose: L(ab) = L(a) L(b).
    Matrix lab = dense_left_mult_table(n, even_product(a, b));
    Matrix la = dense_left_mult_table(n, a);
    Matrix lb = dense_left_mult_table(n, b);
    CHECK((lab - la * lb).norm() < 1e-10);
  }
}

TEST_CASE("conjugation is an involutive anti-automorphism fixing Spin norms") {
  Rng rng(13);
  for (int n = 2; n <= 5; ++n) {
    const int d = 1 << (n - 1);
    CliffordEvenElement a{n, rng.gaussian_vector(d)};
    CliffordEvenElement b{n, rng.gaussian_vector(d)};
    CHECK((conjugate(conjugate(a)).coords - a.coords).norm() == 0.0);
    auto lhs = conjugate(even_product(a, b));
    auto rhs = even_product(conjugate(b), conjugate(a));
    CHECK((lhs.coords - rhs.coords).norm() < 1e-10);
    // x conj(x) = |x|^2 for x in Spin(n).
    auto x = spin_sample(n, 2, 99 + n);
    auto prod = even_product(x, conjugate(x));
    Vector e0 = even_identity(n).coords;
    CHECK((prod.coords - e0).norm() < 1e-10);
  }
}

TEST_CASE("vector pair products lift plane rotations") {
  Rng rng(17);
  for (int n = 2; n <= 5; ++n) {
    Vector u = rng.unit_vector(n);
    Vector v = rng.unit_vector(n);
    auto x = vector_pair_product(u, v);
    // Q(uv) is the composition of the reflections in u and v.
    Matrix ru = Matrix::Identity(n, n) - 2.0 * u * u.transpose();
    Matrix rv = Matrix::Identity(n, n) - 2.0 * v * v.transpose();
    CliffordEvenElement xn{n, x.coords / x.coords.norm()};
    CHECK((quad_map(xn) - ru * rv).norm() < 1e-12);
  }
}

TEST_CASE("equivariance: U Q(x) V^T = Q(Phi_(U,V) x)") {
  Rng rng(19);
  for (int n = 2; n <= 5; ++n) {
    Matrix u = rng.haar_rotation(n);
    Matrix v = rng.haar_rotation(n);
    auto x = spin_sample(n, 2, 31 * n);
    auto y = equivariance_map(u, v, x);
    CHECK((u * quad_map(x) * v.transpose() - quad_map(y)).norm() < 1e-9);
  }
}
