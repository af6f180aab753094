// Command-line surface: export representations, run verification suites,
// sample Figure-style boundaries, and solve attitude-estimation problems.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sonreps/boundary.hpp>
#include <sonreps/clifford.hpp>
#include <sonreps/estimation.hpp>
#include <sonreps/geometry.hpp>
#include <sonreps/hull_reps.hpp>
#include <sonreps/random.hpp>
#include <sonreps/solver.hpp>
#include <string>
#include <vector>

namespace {

using namespace sonreps;
using nlohmann::json;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

const std::map<std::string, BodyKind> kBodies = {
    {"conv-son", BodyKind::ConvSOn},   {"son-polar", BodyKind::SOnPolar},
    {"conv-on", BodyKind::ConvOn},     {"on-polar", BodyKind::OnPolar},
    {"son-minus-polar", BodyKind::SOnMinusPolar}};

std::string size_line(BodyKind body, int n, int total) {
  if (body == BodyKind::ConvSOn && n >= 4)
    return "size 2^{n-1}+2n = " + std::to_string(total);
  return "size " + std::to_string(total);
}

int cmd_build(const std::string& body_name, int n, const std::string& format,
              const std::string& output) {
  BodyKind body = kBodies.at(body_name);
  auto rep = body_rep(body, n);
  std::cout << size_line(body, n, rep.total_size()) << "\n";
  if (output.empty()) return 0;
  std::ofstream os(output);
  if (!os) {
    std::cerr << "cannot open " << output << "\n";
    return kExitIo;
  }
  if (format == "sdpa") {
    export_sdpa(rep, Matrix::Identity(n, n), os);
  } else {
    for (std::size_t b = 0; b < rep.blocks.size(); ++b)
      for (int k = 0; k < n * n; ++k)
        dump_block_csv(rep.blocks[b], k, os);
  }
  return os.good() ? 0 : kExitIo;
}

// Pencil assembly used by the verification suites; `mutate` deliberately
// flips the sign of A_12 so the mutation hook can demonstrate that the
// rotation-membership suite actually has teeth.
Matrix verify_pencil(int n, const Matrix& x, const Vector& s, bool mutate) {
  const auto& fam = a_family(n);
  const int m = 1 << (n - 1);
  Matrix p = Matrix::Zero(m, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix a = fam[i * n + j].dense();
      if (mutate && i == 0 && j == 1) a = -a;
      p += s[i] * x(i, j) * a;
    }
  return p;
}

int cmd_verify(int n_max, int samples, std::uint64_t seed, bool mutate) {
  bool all_pass = true;
  auto report = [&](const std::string& suite, bool pass,
                    const std::string& detail) {
    json j = {{"suite", suite}, {"pass", pass}, {"detail", detail}};
    std::cout << j.dump() << "\n";
    all_pass = all_pass && pass;
  };

  {  // Construction: signed permutation structure of every A_ij.
    bool ok = true;
    for (int n = 2; n <= n_max && ok; ++n)
      for (int i = 1; i <= n && ok; ++i)
        for (int j = 1; j <= n && ok; ++j) {
          Matrix a = a_matrix(n, i, j).dense();
          ok = (a - a.transpose()).norm() == 0.0;
          for (int r = 0; r < a.rows() && ok; ++r) {
            int nz = 0;
            for (int c = 0; c < a.cols(); ++c) {
              double v = a(r, c);
              if (v != 0.0 && v != 1.0 && v != -1.0) ok = false;
              nz += v != 0.0;
            }
            ok = ok && nz == 1;
          }
          if (i == j) ok = ok && a.cwiseAbs().diagonal().sum() == a.rows();
        }
    report("a-construction", ok, "signed permutation structure, n <= " +
                                     std::to_string(n_max));
  }

  {  // Haar rotations feasible for the conv SO(n) pencil.
    Rng rng(seed);
    bool ok = true;
    double worst = 0.0;
    for (int n = 2; n <= n_max; ++n) {
      Vector s = Vector::Ones(n);
      s[n - 1] = -1.0;
      double scale = n <= 3 ? 1.0 : n - 2.0;
      for (int t = 0; t < samples; ++t) {
        Matrix q = rng.haar_rotation(n);
        Matrix p = scale * Matrix::Identity(1 << (n - 1), 1 << (n - 1)) -
                   verify_pencil(n, q, s, mutate);
        double mineig = symmetric_eig(p).eigenvalues.minCoeff();
        worst = std::min(worst, mineig);
        ok = ok && mineig >= -1e-9;
      }
    }
    report("rotation-membership", ok,
           "worst slack " + std::to_string(worst));
  }

  {  // Eigen-LMI membership vs SSVD + parity polytope.
    Rng rng(seed + 1);
    bool ok = true;
    int disagreements = 0;
    for (int n = 2; n <= n_max; ++n) {
      auto rep = conv_son_rep(n);
      for (int t = 0; t < samples; ++t) {
        Matrix x = 0.8 * rng.gaussian_matrix(n, n);
        auto pm = member_conv_son(x, 0.0);
        if (std::abs(pm.slack) < 1e-7) continue;
        auto ev = evaluate_lmi(rep, x);
        bool lmi_in =
            ev.min_eigenvalue >= 0.0 && ev.max_equality_violation <= 1e-9;
        if (lmi_in != (pm.verdict == Verdict::Inside)) ++disagreements;
      }
    }
    ok = disagreements == 0;
    report("oracle-equivalence", ok,
           std::to_string(disagreements) + " disagreements");
  }

  {  // Facet counts of the diagonal-section polytopes.
    bool ok = facet_count(parity_polytope(3)) == 4;
    for (int n = 4; n <= std::min(n_max, 5); ++n)
      ok = ok &&
           facet_count(parity_polytope(n)) == 2 * n + (1 << (n - 1));
    for (int n = 2; n <= std::min(n_max, 6); ++n)
      ok = ok && facet_count(parity_polar(n)) == (1 << (n - 1));
    report("facet-counts", ok, "minimal inequality descriptions");
  }

  {  // Support values at the identity and at R.
    bool ok = true;
    for (int n = 2; n <= n_max; ++n)
      ok = ok &&
           std::abs(support_conv_son(Matrix::Identity(n, n)).value - n) <
               1e-9;
    for (int n = 3; n <= n_max; ++n) {
      Matrix r = Matrix::Identity(n, n);
      r(n - 1, n - 1) = -1.0;
      ok = ok && std::abs(support_conv_son(r).value - (n - 2)) < 1e-9;
    }
    report("support-values", ok, "identity and reflection anchors");
  }

  {  // Noiseless estimation round trip.
    Rng rng(seed + 2);
    Matrix q = rng.haar_rotation(3);
    auto sc = synthesize_scenario(3, 3, kExactKappa, kExactKappa, q, 0.0,
                                  seed + 3);
    double err = (wahba_solve(sc.dir_obs).q_hat - q).norm();
    report("estimation", err <= 1e-6,
           "wahba recovery error " + std::to_string(err));
  }

  return all_pass ? 0 : kExitVerifyFailure;
}

void write_svg(std::ostream& os,
               const std::vector<Eigen::Vector2d>& points) {
  // Minimal point-cloud emitter; coordinates scaled into a 500x500 view.
  double extent = 1e-9;
  for (const auto& p : points)
    extent = std::max({extent, std::abs(p.x()), std::abs(p.y())});
  auto sx = [&](double v) { return 250.0 + 230.0 * v / extent; };
  auto sy = [&](double v) { return 250.0 - 230.0 * v / extent; };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" "
        "height=\"500\" viewBox=\"0 0 500 500\">\n";
  for (const auto& p : points)
    os << "  <circle cx=\"" << sx(p.x()) << "\" cy=\"" << sy(p.y())
       << "\" r=\"2\" fill=\"black\"/>\n";
  os << "</svg>\n";
}

int cmd_boundary(const std::string& body_name, int n, int functionals,
                 const std::string& format, const std::string& output,
                 const std::vector<double>& plane_flat) {
  BodyKind body = kBodies.at(body_name);
  ProjectionPlane plane;
  if (plane_flat.empty()) {
    plane = ProjectionPlane::standard(n);
  } else {
    if (static_cast<int>(plane_flat.size()) != 2 * n * n) {
      std::cerr << "projection plane needs 2 n^2 entries\n";
      return kExitUsage;
    }
    Matrix d1(n, n), d2(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        d1(i, j) = plane_flat[i * n + j];
        d2(i, j) = plane_flat[n * n + i * n + j];
      }
    try {
      plane = ProjectionPlane::orthonormalize(d1, d2);
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return kExitUsage;
    }
  }

  std::vector<Eigen::Vector2d> points;
  if (body == BodyKind::ConvSOn || body == BodyKind::ConvOn) {
    points = boundary_points(body, n, plane, functionals);
  } else {
    auto rays = polar_section(body, n, plane, functionals);
    for (int t = 0; t < functionals; ++t) {
      double theta = 2.0 * M_PI * t / functionals;
      if (std::isfinite(rays[t]))
        points.emplace_back(rays[t] * std::cos(theta),
                            rays[t] * std::sin(theta));
    }
  }

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      std::cerr << "cannot open " << output << "\n";
      return kExitIo;
    }
    os = &file;
  }
  if (format == "svg") {
    write_svg(*os, points);
  } else {
    os->precision(17);
    *os << "p1,p2\n";
    for (const auto& p : points) *os << p.x() << "," << p.y() << "\n";
  }
  return os->good() ? 0 : kExitIo;
}

void print_estimate(const AttitudeEstimate& est) {
  std::cout.precision(12);
  std::cout << "Q_hat:";
  for (int i = 0; i < est.q_hat.rows(); ++i)
    for (int j = 0; j < est.q_hat.cols(); ++j)
      std::cout << " " << est.q_hat(i, j);
  std::cout << "\nobjective: " << est.objective
            << "\neigengap: " << est.eigengap << "\n";
  if (est.ambiguous) std::cout << "ambiguous: true\n";
  if (est.has_omega) std::cout << "omega_hat: " << est.omega_hat << "\n";
}

int cmd_wahba(const std::string& input, const std::string& mode,
              bool synthesize, int n, int t, double kappa1, double kappa2,
              double omega, std::uint64_t seed, const std::string& output) {
  Scenario sc;
  Matrix q_true;
  if (synthesize) {
    Rng rng(seed);
    q_true = rng.haar_rotation(n);
    sc = synthesize_scenario(n, t, kappa1, kappa2, q_true, omega, seed + 1);
    if (!output.empty()) {
      std::ofstream os(output);
      if (!os) {
        std::cerr << "cannot open " << output << "\n";
        return kExitIo;
      }
      write_scenario_csv(os, sc);
    }
  } else {
    std::ifstream is(input);
    if (!is) {
      std::cerr << "cannot open " << input << "\n";
      return kExitIo;
    }
    try {
      sc = read_scenario_csv(is);
    } catch (const std::invalid_argument& e) {
      std::cerr << "malformed input: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (sc.dir_obs.empty()) {
    std::cerr << "no direction observations\n";
    return kExitUsage;
  }

  AttitudeEstimate est;
  if (mode == "joint")
    est = joint_solve(sc.dir_obs, sc.spin_obs);
  else
    est = wahba_solve(sc.dir_obs);
  print_estimate(est);
  if (synthesize) {
    std::cout << "recovery_error: " << (est.q_hat - q_true).norm() << "\n";
    if (est.has_omega)
      std::cout << "omega_error: " << std::abs(est.omega_hat - omega) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrahedral representations of rotation-matrix hulls"};
  app.require_subcommand(1);

  std::string body = "conv-son", format = "csv", output, input,
              mode = "wahba";
  int n = 3, n_max = 4, samples = 200, functionals = 100, t_steps = 3;
  std::uint64_t seed = 1;
  double kappa1 = std::numeric_limits<double>::infinity();
  double kappa2 = std::numeric_limits<double>::infinity();
  double omega = 0.0;
  bool mutate = false, synthesize = false;
  std::vector<double> plane_flat;

  auto* build = app.add_subcommand("build", "Export a representation");
  build->add_option("--body", body)->check(CLI::IsMember(
      {"conv-son", "son-polar", "conv-on", "on-polar", "son-minus-polar"}));
  build->add_option("--n", n)->check(CLI::Range(2, 8));
  build->add_option("--format", format)->check(CLI::IsMember({"csv", "sdpa"}));
  build->add_option("--output", output);

  auto* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--n-max", n_max)->check(CLI::Range(2, 8));
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);
  verify->add_flag("--mutate", mutate)->group("");  // test-harness hook

  auto* boundary =
      app.add_subcommand("boundary", "Sample a 2-D boundary projection");
  boundary->add_option("--body", body)->check(CLI::IsMember(
      {"conv-son", "son-polar", "conv-on", "on-polar", "son-minus-polar"}));
  boundary->add_option("--n", n)->check(CLI::Range(2, 6));
  boundary->add_option("--functionals", functionals)
      ->check(CLI::PositiveNumber);
  boundary->add_option("--format", format)
      ->check(CLI::IsMember({"csv", "svg"}));
  boundary->add_option("--output", output);
  boundary->add_option("--plane", plane_flat,
                       "two row-major n x n direction matrices");
  boundary->add_option("--seed", seed);

  auto* wahba = app.add_subcommand("wahba", "Attitude estimation");
  wahba->add_option("--input", input);
  wahba->add_option("--mode", mode)->check(CLI::IsMember({"wahba", "joint"}));
  wahba->add_flag("--synthesize", synthesize);
  wahba->add_option("--n", n)->check(CLI::Range(2, 8));
  wahba->add_option("--t", t_steps)->check(CLI::NonNegativeNumber);
  wahba->add_option("--kappa1", kappa1);
  wahba->add_option("--kappa2", kappa2);
  wahba->add_option("--omega", omega);
  wahba->add_option("--seed", seed);
  wahba->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(body, n, format, output);
    if (verify->parsed()) return cmd_verify(n_max, samples, seed, mutate);
    if (boundary->parsed())
      return cmd_boundary(body, n, functionals, format, output, plane_flat);
    if (wahba->parsed())
      return cmd_wahba(input, mode, synthesize, n, t_steps, kappa1, kappa2,
                       omega, seed, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
