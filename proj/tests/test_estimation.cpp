#include <doctest.h>

#include <algorithm>
#include <sonreps/estimation.hpp>
#include <sonreps/random.hpp>
#include <sstream>

using namespace sonreps;

TEST_CASE("wahba: noiseless data recovers the rotation") {
  Rng rng(109);
  Matrix q = rng.haar_rotation(3);
  auto sc = synthesize_scenario(3, 3, kExactKappa, kExactKappa, q, 0.0, 5);
  auto est = wahba_solve(sc.dir_obs);
  CHECK((est.q_hat - q).norm() < 1e-6);
  CHECK(!est.ambiguous);
  CHECK(est.q_hat.determinant() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("wahba: B = kappa I gives the identity with objective kappa n") {
  for (int n = 2; n <= 5; ++n) {
    std::vector<DirectionObservation> obs;
    for (int i = 0; i < n; ++i) {
      DirectionObservation o;
      o.x = Vector::Unit(n, i);
      o.y = Vector::Unit(n, i);
      o.kappa = 2.5;
      obs.push_back(o);
    }
    auto est = wahba_solve(obs);
    CHECK((est.q_hat - Matrix::Identity(n, n)).norm() < 1e-9);
    CHECK(est.objective == doctest::Approx(2.5 * n).epsilon(1e-12));
  }
}

TEST_CASE("wahba: single aligned observation is degenerate but solvable") {
  DirectionObservation o;
  o.x = Vector::Unit(3, 0);
  o.y = Vector::Unit(3, 0);
  o.kappa = 4.0;
  auto est = wahba_solve({o});
  CHECK(est.objective == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(est.ambiguous);
  CHECK((est.q_hat.transpose() * est.q_hat - Matrix::Identity(3, 3)).norm() <
        1e-8);
}

TEST_CASE("wahba: objective is equivariant under rotating the references") {
  Rng rng(113);
  Matrix q = rng.haar_rotation(3);
  auto sc = synthesize_scenario(3, 5, 50.0, 0.0, q, 0.0, 17);
  auto base = wahba_solve(sc.dir_obs);
  Matrix g = rng.haar_rotation(3);
  auto rotated = sc.dir_obs;
  for (auto& o : rotated) o.x = g * o.x;
  auto est = wahba_solve(rotated);
  CHECK(est.objective == doctest::Approx(base.objective).epsilon(1e-9));
  CHECK((est.q_hat - base.q_hat * g.transpose()).norm() < 1e-6);
}

TEST_CASE("vmf sampler statistics") {
  Rng rng(127);
  // Unit norm always.
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t < 100; ++t) {
      Vector mu = rng.unit_vector(n);
      Vector s = sample_vmf(mu, 5.0, rng);
      CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    }
  // kappa = 0: empirical mean near zero.
  Vector mean3 = Vector::Zero(3);
  for (int t = 0; t < 20000; ++t)
    mean3 += sample_vmf(Vector::Unit(3, 0), 0.0, rng);
  CHECK((mean3 / 20000).norm() < 0.02);
  // Large kappa: tight concentration about the mean.
  Vector mu = rng.unit_vector(4);
  int hits = 0;
  for (int t = 0; t < 1000; ++t)
    hits += std::acos(std::clamp(mu.dot(sample_vmf(mu, 1e6, rng)), -1.0,
                                 1.0)) < 0.01;
  CHECK(hits >= 990);
  // Exact sentinel.
  CHECK((sample_vmf(mu, kExactKappa, rng) - mu).norm() == 0.0);
  // Deterministic per seed.
  CHECK((sample_vmf(mu, 3.0, std::uint64_t{42}) -
         sample_vmf(mu, 3.0, std::uint64_t{42}))
            .norm() == 0.0);
  // Concentration improves with kappa (median angular error decreasing).
  double prev = M_PI;
  for (double kappa : {10.0, 100.0, 1000.0}) {
    std::vector<double> errs;
    for (int t = 0; t < 200; ++t)
      errs.push_back(std::acos(
          std::clamp(mu.dot(sample_vmf(mu, kappa, rng)), -1.0, 1.0)));
    std::nth_element(errs.begin(), errs.begin() + 100, errs.end());
    CHECK(errs[100] <= prev);
    prev = errs[100];
  }
}

TEST_CASE("von Mises sampler statistics") {
  Rng rng(131);
  // Range and determinism.
  for (int t = 0; t < 1000; ++t) {
    double s = sample_von_mises(1.0, 5.0, rng);
    CHECK(s >= 0.0);
    CHECK(s < 2.0 * M_PI);
  }
  CHECK(sample_von_mises(1.0, kExactKappa, rng) == doctest::Approx(1.0));
  // Circular mean close to the parameter at moderate kappa.
  double cs = 0, sn = 0;
  for (int t = 0; t < 20000; ++t) {
    double s = sample_von_mises(2.0, 10.0, rng);
    cs += std::cos(s);
    sn += std::sin(s);
  }
  CHECK(std::atan2(sn, cs) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("joint solve: noiseless recovery of attitude and spin rate") {
  Rng rng(137);
  Matrix q = rng.haar_rotation(3);
  const double omega = 0.7;
  auto sc = synthesize_scenario(3, 20, kExactKappa, kExactKappa, q, omega, 3);
  auto est = joint_solve(sc.dir_obs, sc.spin_obs);
  CHECK(est.has_omega);
  CHECK(std::abs(est.omega_hat - omega) <= 2e-3);
  CHECK((est.q_hat - q).norm() <= 1e-2);
}

TEST_CASE("joint solve on a single snapshot matches plain wahba") {
  Rng rng(139);
  Matrix q = rng.haar_rotation(3);
  auto sc = synthesize_scenario(3, 0, kExactKappa, kExactKappa, q, 0.3, 9);
  std::vector<SpinObservation> spin = {{0.3, 100.0}};
  auto joint = joint_solve(sc.dir_obs, spin, 720);
  auto plain = wahba_solve(sc.dir_obs);
  CHECK((joint.q_hat - plain.q_hat).norm() < 1e-6);
  // The spin estimate comes from the spin term alone.
  CHECK(std::abs(joint.omega_hat - 0.3) < 1e-3);
}

TEST_CASE("attitude error decreases with concentration") {
  Rng rng(149);
  Matrix q = rng.haar_rotation(3);
  double prev = 10.0;
  for (double kappa : {10.0, 100.0, 1000.0}) {
    std::vector<double> errs;
    for (int trial = 0; trial < 100; ++trial) {
      auto sc = synthesize_scenario(3, 5, kappa, 0.0, q, 0.0,
                                    1000 * trial + 7);
      errs.push_back((wahba_solve(sc.dir_obs).q_hat - q).norm());
    }
    std::nth_element(errs.begin(), errs.begin() + 50, errs.end());
    CHECK(errs[50] <= prev);
    prev = errs[50];
  }
}

TEST_CASE("scenario CSV round-trips") {
  Rng rng(151);
  Matrix q = rng.haar_rotation(3);
  auto sc = synthesize_scenario(3, 4, 30.0, 8.0, q, 1.1, 77);
  std::stringstream ss;
  write_scenario_csv(ss, sc);
  auto back = read_scenario_csv(ss);
  REQUIRE(back.dir_obs.size() == sc.dir_obs.size());
  REQUIRE(back.spin_obs.size() == sc.spin_obs.size());
  for (std::size_t i = 0; i < sc.dir_obs.size(); ++i) {
    CHECK(back.dir_obs[i].k == sc.dir_obs[i].k);
    CHECK((back.dir_obs[i].x - sc.dir_obs[i].x).norm() == 0.0);
    CHECK((back.dir_obs[i].y - sc.dir_obs[i].y).norm() == 0.0);
    CHECK(back.dir_obs[i].kappa == sc.dir_obs[i].kappa);
  }
  for (std::size_t i = 0; i < sc.spin_obs.size(); ++i)
    CHECK(back.spin_obs[i].omega_k == sc.spin_obs[i].omega_k);
}

TEST_CASE("scenario synthesis is deterministic per seed") {
  Matrix q = Matrix::Identity(3, 3);
  auto a = synthesize_scenario(3, 6, 25.0, 5.0, q, 0.4, 1234);
  auto b = synthesize_scenario(3, 6, 25.0, 5.0, q, 0.4, 1234);
  for (std::size_t i = 0; i < a.dir_obs.size(); ++i)
    CHECK((a.dir_obs[i].y - b.dir_obs[i].y).norm() == 0.0);
  for (std::size_t i = 0; i < a.spin_obs.size(); ++i)
    CHECK(a.spin_obs[i].omega_k == b.spin_obs[i].omega_k);
}
