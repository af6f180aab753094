#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace sonreps {

// Seedable RNG with the sampling helpers used across the library and tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return unif_(gen_); }
  double gaussian() { return gauss_(gen_); }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  // Uniform on the unit sphere S^(n-1).
  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v;
    do {
      v = gaussian_vector(n);
    } while (v.norm() < 1e-12);
    return v / v.norm();
  }

  Eigen::MatrixXd gaussian_matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = gaussian();
    return m;
  }

  // Haar-distributed rotation: QR of a Gaussian matrix with the R-diagonal
  // sign fix, then a last-column flip onto SO(n) if needed.
  Eigen::MatrixXd haar_rotation(int n) {
    Eigen::MatrixXd g = gaussian_matrix(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
      if (r(i, i) < 0) q.col(i) = -q.col(i);
    if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
    return q;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace sonreps
