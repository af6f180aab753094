#include "sonreps/estimation.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sonreps/geometry.hpp"

namespace sonreps {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

Matrix direction_b(const std::vector<DirectionObservation>& obs) {
  const int n = static_cast<int>(obs.front().x.size());
  Matrix b = Matrix::Zero(n, n);
  for (const auto& o : obs) {
    if (o.x.size() != n || o.y.size() != n)
      throw std::invalid_argument("wahba_solve: inconsistent dimensions");
    if (std::abs(o.x.norm() - 1.0) > 1e-10 || std::abs(o.y.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("wahba_solve: observations must be unit");
    b += o.kappa * o.y * o.x.transpose();
  }
  return b;
}

AttitudeEstimate from_support(const Matrix& b) {
  SupportResult s = support_conv_son(b);
  AttitudeEstimate e;
  e.q_hat = s.maximizer;
  e.objective = s.value;
  e.eigengap = s.eigengap;
  e.ambiguous = s.degenerate;
  return e;
}

}  // namespace

AttitudeEstimate wahba_solve(
    const std::vector<DirectionObservation>& observations) {
  if (observations.empty())
    throw std::invalid_argument("wahba_solve: no observations");
  const int n = static_cast<int>(observations.front().x.size());
  if (n < 2 || n > 8)
    throw std::invalid_argument("wahba_solve: dimension out of range");
  return from_support(direction_b(observations));
}

Vector sample_vmf(const Vector& mean, double kappa, Rng& rng) {
  const int n = static_cast<int>(mean.size());
  if (kappa < 0) throw std::invalid_argument("sample_vmf: kappa < 0");
  if (std::isinf(kappa)) return mean;
  if (kappa == 0.0) return rng.unit_vector(n);

  // Wood's rejection sampler for the radial component along the mean.
  const double d = n - 1;
  const double b = (-2.0 * kappa + std::sqrt(4.0 * kappa * kappa + d * d)) / d;
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + d * std::log(1.0 - x0 * x0);
  std::gamma_distribution<double> gamma(d / 2.0, 1.0);
  double w;
  for (;;) {
    double g1 = gamma(rng.engine());
    double g2 = gamma(rng.engine());
    double z = g1 / (g1 + g2);  // Beta((n-1)/2, (n-1)/2)
    w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    if (kappa * w + d * std::log(1.0 - x0 * w) - c >=
        std::log(rng.uniform()))
      break;
  }

  Vector sample(n);
  sample[0] = w;
  if (n > 1) {
    Vector v = rng.unit_vector(n - 1);
    sample.tail(n - 1) = std::sqrt(std::max(0.0, 1.0 - w * w)) * v;
  }

  // Householder reflection carrying e_1 to the mean.
  Vector u = Vector::Unit(n, 0) - mean;
  double un = u.squaredNorm();
  if (un > 1e-24) sample -= (2.0 * u.dot(sample) / un) * u;
  return sample / sample.norm();
}

Vector sample_vmf(const Vector& mean, double kappa, std::uint64_t seed) {
  Rng rng(seed);
  return sample_vmf(mean, kappa, rng);
}

double sample_von_mises(double mean, double kappa, Rng& rng) {
  if (kappa < 0) throw std::invalid_argument("sample_von_mises: kappa < 0");
  if (std::isinf(kappa)) return wrap_angle(mean);
  if (kappa < 1e-10) return kTwoPi * rng.uniform();

  // Best-Fisher wrapped-Cauchy envelope.
  const double a = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double bb = (a - std::sqrt(2.0 * a)) / (2.0 * kappa);
  const double r = (1.0 + bb * bb) / (2.0 * bb);
  double f;
  for (;;) {
    double z = std::cos(M_PI * rng.uniform());
    f = (1.0 + r * z) / (r + z);
    double cc = kappa * (r - f);
    double u2 = rng.uniform();
    if (cc * (2.0 - cc) - u2 > 0.0 || std::log(cc / u2) + 1.0 - cc >= 0.0)
      break;
  }
  double theta = rng.uniform() < 0.5 ? mean - std::acos(f) : mean + std::acos(f);
  return wrap_angle(theta);
}

Matrix spin_matrix(int n, double theta) {
  if (n < 3) throw std::invalid_argument("spin_matrix: n < 3");
  Matrix s = Matrix::Identity(n, n);
  s(1, 1) = std::cos(theta);
  s(1, 2) = -std::sin(theta);
  s(2, 1) = std::sin(theta);
  s(2, 2) = std::cos(theta);
  return s;
}

namespace {

double joint_objective(const std::vector<DirectionObservation>& dir_obs,
                       const std::vector<SpinObservation>& spin_obs,
                       double omega, AttitudeEstimate* out = nullptr) {
  Matrix b = Matrix::Zero(3, 3);
  for (const auto& o : dir_obs)
    b += o.kappa * (spin_matrix(3, o.k * omega).transpose() * o.y) *
         o.x.transpose();
  double spin_term = 0.0;
  for (const auto& s : spin_obs)
    spin_term += s.kappa2 * std::cos(s.omega_k - omega);
  if (out) {
    *out = from_support(b);
    out->objective += spin_term;
    return out->objective;
  }
  return support_conv_son(b).value + spin_term;
}

}  // namespace

AttitudeEstimate joint_solve(const std::vector<DirectionObservation>& dir_obs,
                             const std::vector<SpinObservation>& spin_obs,
                             int grid_size, int refine_iters) {
  if (dir_obs.empty())
    throw std::invalid_argument("joint_solve: no observations");
  if (dir_obs.front().x.size() != 3)
    throw std::invalid_argument("joint_solve: n must be 3");
  int t_max = 0;
  for (const auto& o : dir_obs) t_max = std::max(t_max, o.k);
  if (grid_size <= 0) grid_size = 16 * (t_max + 1);

  double best = -std::numeric_limits<double>::infinity();
  double best_omega = 0.0;
  for (int g = 0; g < grid_size; ++g) {
    double omega = kTwoPi * g / grid_size;
    double val = joint_objective(dir_obs, spin_obs, omega);
    if (val > best) {
      best = val;
      best_omega = omega;
    }
  }

  // Golden-section refinement over the two grid cells around the best point.
  const double h = kTwoPi / grid_size;
  double lo = best_omega - h, hi = best_omega + h;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
  double f1 = joint_objective(dir_obs, spin_obs, m1);
  double f2 = joint_objective(dir_obs, spin_obs, m2);
  for (int it = 0; it < refine_iters; ++it) {
    if (f1 >= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - phi * (hi - lo);
      f1 = joint_objective(dir_obs, spin_obs, m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + phi * (hi - lo);
      f2 = joint_objective(dir_obs, spin_obs, m2);
    }
  }
  double omega_hat = wrap_angle(0.5 * (lo + hi));
  if (joint_objective(dir_obs, spin_obs, best_omega) >
      joint_objective(dir_obs, spin_obs, omega_hat))
    omega_hat = best_omega;

  AttitudeEstimate est;
  joint_objective(dir_obs, spin_obs, omega_hat, &est);
  est.omega_hat = omega_hat;
  est.has_omega = true;
  return est;
}

Scenario synthesize_scenario(int n, int t, double kappa1, double kappa2,
                             const Matrix& q_true, double omega_true,
                             std::uint64_t seed) {
  Rng rng(seed);
  Scenario sc;
  // The infinite-concentration sentinel only affects generation; stored
  // weights must stay finite (uniform weights give the same ML solution).
  const double w1 = std::isinf(kappa1) ? 1.0 : kappa1;
  const double w2 = std::isinf(kappa2) ? 1.0 : kappa2;
  for (int k = 0; k <= t; ++k) {
    DirectionObservation o;
    o.k = k;
    o.kappa = w1;
    o.x = rng.unit_vector(n);
    Matrix qk = n >= 3 ? Matrix(spin_matrix(n, k * omega_true) * q_true)
                       : q_true;
    o.y = sample_vmf(qk * o.x, kappa1, rng);
    sc.dir_obs.push_back(std::move(o));
  }
  for (int k = 1; k <= t; ++k) {
    SpinObservation s;
    s.kappa2 = w2;
    s.omega_k = sample_von_mises(omega_true, kappa2, rng);
    sc.spin_obs.push_back(s);
  }
  return sc;
}

void write_scenario_csv(std::ostream& os, const Scenario& sc) {
  os.precision(17);
  for (const auto& o : sc.dir_obs) {
    os << "dir," << o.k << "," << o.kappa;
    for (int i = 0; i < o.x.size(); ++i) os << "," << o.x[i];
    for (int i = 0; i < o.y.size(); ++i) os << "," << o.y[i];
    os << "\n";
  }
  for (const auto& s : sc.spin_obs)
    os << "spin," << s.omega_k << "," << s.kappa2 << "\n";
}

Scenario read_scenario_csv(std::istream& is) {
  Scenario sc;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string tag, field;
    std::getline(ss, tag, ',');
    std::vector<double> vals;
    while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
    if (tag == "dir") {
      if (vals.size() < 4 || (vals.size() - 2) % 2 != 0)
        throw std::invalid_argument("read_scenario_csv: bad dir row");
      const int n = static_cast<int>((vals.size() - 2) / 2);
      DirectionObservation o;
      o.k = static_cast<int>(vals[0]);
      o.kappa = vals[1];
      o.x = Eigen::Map<Vector>(vals.data() + 2, n);
      o.y = Eigen::Map<Vector>(vals.data() + 2 + n, n);
      sc.dir_obs.push_back(std::move(o));
    } else if (tag == "spin") {
      if (vals.size() != 2)
        throw std::invalid_argument("read_scenario_csv: bad spin row");
      sc.spin_obs.push_back({vals[0], vals[1]});
    } else {
      throw std::invalid_argument("read_scenario_csv: unknown row tag");
    }
  }
  return sc;
}

}  // namespace sonreps
