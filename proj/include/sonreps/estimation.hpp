#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "sonreps/random.hpp"

// Attitude estimation on top of the support-function machinery: Wahba's
// problem as a symmetric eigenvalue problem, and joint attitude/spin-rate
// estimation by a grid-plus-refinement search over the spin rate.

namespace sonreps {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Sentinel concentration for exact (noiseless) generation.
inline constexpr double kExactKappa =
    std::numeric_limits<double>::infinity();

struct DirectionObservation {
  int k = 0;       // sample instant (used by joint_solve)
  Vector x;        // known direction, inertial frame, unit
  Vector y;        // measured direction, body frame, unit
  double kappa = 1.0;
};

struct SpinObservation {
  double omega_k = 0.0;  // measured spin rate, in [0, 2*pi)
  double kappa2 = 1.0;
};

struct AttitudeEstimate {
  Matrix q_hat;
  double omega_hat = 0.0;
  bool has_omega = false;
  double objective = 0.0;  // log-likelihood up to constants and scaling
  double eigengap = 0.0;
  bool ambiguous = false;  // top eigenvalue was (numerically) multiple
};

// Maximum-likelihood attitude from paired directions: maximizes
// sum_k kappa_k <y_k, Q x_k> over SO(n) via the top eigenvector of
// sum (B_ij A_ij) with B = sum_k kappa_k y_k x_k^T.
AttitudeEstimate wahba_solve(
    const std::vector<DirectionObservation>& observations);

// von Mises-Fisher sample on S^(n-1) by the rejection scheme for the
// tangential-radial decomposition. kappa = 0 is uniform on the sphere;
// kappa = kExactKappa returns the mean.
Vector sample_vmf(const Vector& mean, double kappa, Rng& rng);
Vector sample_vmf(const Vector& mean, double kappa, std::uint64_t seed);

// von Mises sample on the circle (Best-Fisher rejection), result in
// [0, 2*pi). kappa = 0 is uniform; kappa = kExactKappa returns the mean.
double sample_von_mises(double mean, double kappa, Rng& rng);

// Spin matrix about the first coordinate axis: identity except for the
// rotation by theta in the (2,3) plane. Requires n >= 3.
Matrix spin_matrix(int n, double theta);

// Joint attitude/spin-rate estimate for n = 3: scans omega over a uniform
// grid (default size 16 (T+1)), solves the per-omega Wahba problem with
// B(omega) = sum_k kappa_k (S(k omega)^T y_k) x_k^T plus the spin-rate
// log-likelihood, then refines around the best cell by golden section.
AttitudeEstimate joint_solve(
    const std::vector<DirectionObservation>& dir_obs,
    const std::vector<SpinObservation>& spin_obs, int grid_size = 0,
    int refine_iters = 60);

struct Scenario {
  std::vector<DirectionObservation> dir_obs;
  std::vector<SpinObservation> spin_obs;
};

// Random dataset from the generative model: x_k uniform on the sphere,
// y_k ~ vMF(Q(k) x_k, kappa1) with Q(k) = S(k omega_true) Q_true (the spin
// factor applies for n >= 3), omega_k ~ von Mises(omega_true, kappa2) for
// k = 1..T. Deterministic per seed.
Scenario synthesize_scenario(int n, int t, double kappa1, double kappa2,
                             const Matrix& q_true, double omega_true,
                             std::uint64_t seed);

// CSV rows: "dir,k,kappa,x_1,..,x_n,y_1,..,y_n" and "spin,omega,kappa2".
void write_scenario_csv(std::ostream& os, const Scenario& sc);
Scenario read_scenario_csv(std::istream& is);

}  // namespace sonreps
