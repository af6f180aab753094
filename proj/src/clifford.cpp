#include "sonreps/clifford.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace sonreps {

SignedPerm SignedPerm::identity(int d) {
  SignedPerm p;
  p.perm.resize(d);
  p.sign.assign(d, 1);
  for (int r = 0; r < d; ++r) p.perm[r] = r;
  return p;
}

Vector SignedPerm::apply(const Vector& v) const {
  Vector out(dim());
  for (int r = 0; r < dim(); ++r) out[r] = sign[r] * v[perm[r]];
  return out;
}

SignedPerm SignedPerm::compose(const SignedPerm& other) const {
  SignedPerm out;
  const int d = dim();
  out.perm.resize(d);
  out.sign.resize(d);
  for (int r = 0; r < d; ++r) {
    out.perm[r] = other.perm[perm[r]];
    out.sign[r] = sign[r] * other.sign[perm[r]];
  }
  return out;
}

SignedPerm SignedPerm::transpose() const {
  SignedPerm out;
  const int d = dim();
  out.perm.resize(d);
  out.sign.resize(d);
  for (int r = 0; r < d; ++r) {
    out.perm[perm[r]] = r;
    out.sign[perm[r]] = sign[r];
  }
  return out;
}

SignedPerm SignedPerm::negate() const {
  SignedPerm out = *this;
  for (auto& s : out.sign) s = -s;
  return out;
}

Matrix SignedPerm::dense() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (int r = 0; r < dim(); ++r) m(r, perm[r]) = sign[r];
  return m;
}

std::vector<int> even_ranks(int n) {
  std::vector<int> out;
  for (int r = 0; r < (1 << n); ++r)
    if (std::popcount(static_cast<unsigned>(r)) % 2 == 0) out.push_back(r);
  return out;
}

namespace {

// Bit owned by generator i (1-based): generator 1 is most significant.
int gen_bit(int n, int i) { return 1 << (n - i); }

// lambda_i = sigma_z^{(i-1)} (x) J (x) I^{(n-i)} with J = [[0,-1],[1,0]].
SignedPerm make_lambda(int n, int i) {
  const int d = 1 << n;
  SignedPerm p;
  p.perm.resize(d);
  p.sign.resize(d);
  for (int r = 0; r < d; ++r) {
    p.perm[r] = r ^ gen_bit(n, i);
    int s = (r & gen_bit(n, i)) ? 1 : -1;  // the J factor
    for (int k = 1; k < i; ++k)
      if (r & gen_bit(n, k)) s = -s;  // sigma_z factors
    p.sign[r] = s;
  }
  return p;
}

// rho_i = I^{(i-1)} (x) J (x) sigma_z^{(n-i)}.
SignedPerm make_rho(int n, int i) {
  const int d = 1 << n;
  SignedPerm p;
  p.perm.resize(d);
  p.sign.resize(d);
  for (int r = 0; r < d; ++r) {
    p.perm[r] = r ^ gen_bit(n, i);
    int s = (r & gen_bit(n, i)) ? 1 : -1;
    for (int k = i + 1; k <= n; ++k)
      if (r & gen_bit(n, k)) s = -s;
    p.sign[r] = s;
  }
  return p;
}

void check_dim(int n) {
  if (n < 2 || n > 12)
    throw std::out_of_range("clifford: dimension n must satisfy 2 <= n <= 12");
}

}  // namespace

Matrix GeneratorMatrices::p_even() const {
  const int d = 1 << n;
  const int h = d / 2;
  Matrix p = Matrix::Zero(d, h);
  for (int c = 0; c < h; ++c) p(even[c], c) = 1.0;
  return p;
}

GeneratorMatrices generator_matrices(int n) {
  check_dim(n);
  GeneratorMatrices g;
  g.n = n;
  g.even = even_ranks(n);
  for (int i = 1; i <= n; ++i) {
    g.lambda.push_back(make_lambda(n, i));
    g.rho.push_back(make_rho(n, i));
  }
  return g;
}

Vector SignedSymmetricMatrix::apply(const Vector& v) const {
  Vector out(dim());
  for (int r = 0; r < dim(); ++r) out[r] = sign[r] * v[perm[r]];
  return out;
}

Matrix SignedSymmetricMatrix::dense() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (int r = 0; r < dim(); ++r) m(r, perm[r]) = sign[r];
  return m;
}

namespace {

// Per-n cache: even-basis bookkeeping, the A_ij family, and (lazily) the
// left-multiplication table used by even_product.
struct CliffordCache {
  int n;
  std::vector<int> even;           // even ranks, ascending
  std::vector<int> rank_to_index;  // inverse map, -1 for odd ranks
  std::vector<SignedSymmetricMatrix> a;  // n^2, row-major

  std::once_flag mult_once;
  std::vector<SignedPerm> left_mult;  // per even basis element, dim 2^(n-1)
};

// Restrict a signed permutation on 2^n ranks to the even ranks. Valid only
// when the permutation maps even ranks to even ranks.
template <typename Out>
Out restrict_to_even(const SignedPerm& full, const CliffordCache& c) {
  const int h = static_cast<int>(c.even.size());
  Out out;
  out.perm.resize(h);
  out.sign.resize(h);
  for (int r = 0; r < h; ++r) {
    out.perm[r] = c.rank_to_index[full.perm[c.even[r]]];
    out.sign[r] = full.sign[c.even[r]];
  }
  return out;
}

CliffordCache& cache_for(int n) {
  check_dim(n);
  static std::mutex mu;
  static std::map<int, CliffordCache*> caches;
  std::lock_guard<std::mutex> lock(mu);
  auto it = caches.find(n);
  if (it != caches.end()) return *it->second;

  auto* c = new CliffordCache;
  c->n = n;
  c->even = even_ranks(n);
  c->rank_to_index.assign(1 << n, -1);
  for (int k = 0; k < static_cast<int>(c->even.size()); ++k)
    c->rank_to_index[c->even[k]] = k;

  GeneratorMatrices g = generator_matrices(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      SignedPerm full = g.lambda[i - 1].compose(g.rho[j - 1]).negate();
      c->a.push_back(restrict_to_even<SignedSymmetricMatrix>(full, *c));
    }
  caches[n] = c;
  return *c;
}

const std::vector<SignedPerm>& left_mult_table(CliffordCache& c) {
  std::call_once(c.mult_once, [&c] {
    GeneratorMatrices g = generator_matrices(c.n);
    c.left_mult.reserve(c.even.size());
    for (int rank : c.even) {
      // lambda_{e_I} = lambda_{e_{i1}} ... lambda_{e_{ik}}, i1 < ... < ik.
      SignedPerm full = SignedPerm::identity(1 << c.n);
      for (int i = 1; i <= c.n; ++i)
        if (rank & gen_bit(c.n, i)) full = full.compose(g.lambda[i - 1]);
      c.left_mult.push_back(restrict_to_even<SignedPerm>(full, c));
    }
  });
  return c.left_mult;
}

}  // namespace

const SignedSymmetricMatrix& a_matrix(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::out_of_range("a_matrix: index out of range");
  return cache_for(n).a[(i - 1) * n + (j - 1)];
}

const std::vector<SignedSymmetricMatrix>& a_family(int n) {
  return cache_for(n).a;
}

CliffordEvenElement even_identity(int n) {
  check_dim(n);
  CliffordEvenElement x;
  x.n = n;
  x.coords = Vector::Zero(1 << (n - 1));
  x.coords[0] = 1.0;
  return x;
}

Matrix quad_map(const CliffordEvenElement& x) {
  const auto& fam = a_family(x.n);
  const int n = x.n;
  Matrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      q(i, j) = x.coords.dot(fam[i * n + j].apply(x.coords));
  return q;
}

CliffordEvenElement even_product(const CliffordEvenElement& x,
                                 const CliffordEvenElement& y) {
  if (x.n != y.n)
    throw std::invalid_argument("even_product: dimension mismatch");
  auto& c = cache_for(x.n);
  const auto& table = left_mult_table(c);
  const int h = static_cast<int>(c.even.size());
  CliffordEvenElement out;
  out.n = x.n;
  out.coords = Vector::Zero(h);
  for (int k = 0; k < h; ++k) {
    const double xk = x.coords[k];
    if (xk == 0.0) continue;
    const SignedPerm& m = table[k];
    for (int r = 0; r < h; ++r)
      out.coords[r] += xk * m.sign[r] * y.coords[m.perm[r]];
  }
  return out;
}

CliffordEvenElement conjugate(const CliffordEvenElement& x) {
  auto& c = cache_for(x.n);
  CliffordEvenElement out = x;
  for (int k = 0; k < static_cast<int>(c.even.size()); ++k) {
    // conj sign on e_I is (-1)^(|I|(|I|+1)/2): + for |I| = 0 mod 4, - for 2.
    int m = std::popcount(static_cast<unsigned>(c.even[k]));
    if (m % 4 == 2) out.coords[k] = -out.coords[k];
  }
  return out;
}

CliffordEvenElement vector_pair_product(const Vector& u, const Vector& v) {
  const int n = static_cast<int>(u.size());
  auto& c = cache_for(n);
  CliffordEvenElement out;
  out.n = n;
  out.coords = Vector::Zero(c.even.size());
  out.coords[0] = -u.dot(v);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int rank = gen_bit(n, i) | gen_bit(n, j);
      out.coords[c.rank_to_index[rank]] = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1];
    }
  return out;
}

CliffordEvenElement spin_sample(int n, int k, std::uint64_t seed) {
  check_dim(n);
  if (k < 1 || k > 2 * n)
    throw std::invalid_argument("spin_sample: require 1 <= k <= 2n");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto unit = [&] {
    Vector u(n);
    do {
      for (int i = 0; i < n; ++i) u[i] = gauss(gen);
    } while (u.norm() < 1e-12);
    return Vector(u / u.norm());
  };
  CliffordEvenElement x = vector_pair_product(unit(), unit());
  for (int t = 1; t < k; ++t)
    x = even_product(x, vector_pair_product(unit(), unit()));
  return x;
}

CliffordEvenElement spin_lift(const Matrix& X, double tol) {
  const int n = static_cast<int>(X.rows());
  check_dim(n);
  if (X.cols() != n || (X.transpose() * X - Matrix::Identity(n, n)).norm() > tol ||
      std::abs(X.determinant() - 1.0) > tol)
    throw std::invalid_argument("spin_lift: input is not a rotation");

  // Reduce X to I column by column with well-conditioned reflections; the
  // collected unit normals satisfy X = H_{u_1} H_{u_2} ... H_{u_m}.
  std::vector<Vector> us;
  Matrix a = X;
  for (int k = 0; k < n; ++k) {
    Vector col = a.col(k);
    Vector ek = Vector::Zero(n);
    ek[k] = 1.0;
    Vector d = col - ek;
    if (d.norm() < 1e-13) continue;
    if (d.norm() >= 0.5) {
      Vector u = d / d.norm();
      a -= 2.0 * u * (u.transpose() * a);
      us.push_back(u);
    } else {
      // col is close to ek: reflect to -ek first, then -ek to ek.
      Vector u1 = (col + ek).normalized();
      a -= 2.0 * u1 * (u1.transpose() * a);
      a -= 2.0 * ek * (ek.transpose() * a);
      us.push_back(u1);
      us.push_back(ek);
    }
  }
  if (us.size() % 2 != 0) {
    // Pad with a double reflection in e_n; Q ignores the resulting -1 factor.
    Vector en = Vector::Zero(n);
    en[n - 1] = 1.0;
    us.push_back(en);
  }

  CliffordEvenElement x = even_identity(n);
  for (std::size_t t = 0; t + 1 < us.size(); t += 2)
    x = even_product(x, vector_pair_product(us[t], us[t + 1]));
  return x;
}

CliffordEvenElement equivariance_map(const Matrix& U, const Matrix& V,
                                     const CliffordEvenElement& x, double tol) {
  CliffordEvenElement u = spin_lift(U, tol);
  CliffordEvenElement v = spin_lift(V, tol);
  return even_product(even_product(u, x), conjugate(v));
}

}  // namespace sonreps
