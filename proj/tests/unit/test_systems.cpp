#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace clebsch;

TEST_CASE("Kida initial point lies on the prescribed leaf and energy level") {
  // mu2, mu3 evaluated in 40-digit arithmetic from f1 = -1/4, h = 1, mu1 = 1.
  const SystemPreset p = make_preset("kida");
  CHECK(p.mu0[0] == 1.0);
  CHECK(p.mu0[1] == doctest::Approx(0.083385604803655735449).epsilon(1e-14));
  CHECK(p.mu0[2] == doctest::Approx(-1.1211392237757411788).epsilon(1e-14));
  CHECK(p.ham.casimirs[0](p.mu0) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(p.ham.value(p.mu0) == doctest::Approx(1.0).epsilon(1e-14));

  const SystemPreset leaf = make_preset("kida", {{"casimir_value", kida_physical_leaf()}});
  CHECK(leaf.mu0[1] == doctest::Approx(0.13915707891588646781).epsilon(1e-13));
  CHECK(leaf.mu0[2] == doctest::Approx(-1.0833177102675943433).epsilon(1e-14));
}

TEST_CASE("Kida Lie-Poisson flow at t = 10") {
  // Reference from an independent adaptive solver (rtol 1e-12).
  const SystemPreset p = make_preset("kida");
  IntegratorConfig cfg;
  cfg.tableau = classical_rk4();
  cfg.dt = 1e-3;
  const VectorField f = [&](const State& y) -> State { return p.closed_form_lp_rhs(y); };
  const State end = integrate(f, p.mu0, cfg, 10.0).states.back();
  CHECK(end[0] == doctest::Approx(0.66147358).epsilon(1e-7));
  CHECK(end[1] == doctest::Approx(0.38299055).epsilon(1e-7));
  CHECK(end[2] == doctest::Approx(-0.91336141).epsilon(1e-7));
}

TEST_CASE("Kida chart round-trips on the physical leaf") {
  for (double lambda : {0.1, 0.3, 0.6, 0.95}) {
    for (double phi : {-1.2, -0.4, 0.0, 0.7, 1.5}) {
      const DualPoint mu = kida_mu_from_physical({lambda, phi});
      const double f1 = mu[0] * mu[0] + mu[1] * mu[1] - mu[2] * mu[2];
      CHECK(f1 == doctest::Approx(kida_physical_leaf()).epsilon(1e-13));
      const KidaPhysicalState back = kida_physical_from_mu(mu);
      CHECK(back.lambda_ratio == doctest::Approx(lambda).epsilon(1e-12));
      CHECK(back.phi == doctest::Approx(phi).epsilon(1e-12));
    }
  }
  // lambda and 1/lambda describe the same ellipse; the chart returns lambda <= 1.
  const KidaPhysicalState inverted =
      kida_physical_from_mu(kida_mu_from_physical({1.0 / 0.4, 0.3}));
  CHECK(inverted.lambda_ratio == doctest::Approx(0.4));
}

TEST_CASE("Kida chart errors") {
  CHECK_THROWS_AS(kida_physical_from_mu(DualPoint{1, 0, -0.5}), DomainError);
  DualPoint upper = kida_mu_from_physical({0.5, 0.2});
  upper[2] = -upper[2];
  CHECK_THROWS_AS(kida_physical_from_mu(upper), DomainError);
  CHECK_THROWS_AS(kida_mu_from_physical({0.0, 0.1}), ContractViolation);
  CHECK_THROWS_AS(kida_physical_from_mu(DualPoint{1, 0}), ContractViolation);
}

TEST_CASE("Kida physical rhs at a hand-evaluated point") {
  const Eigen::Vector2d r = kida_physical_rhs({0.5, std::numbers::pi / 12}, 0.5, -1.0);
  // lambda_dot = -0.5 * 0.5 * sin(pi/6)
  CHECK(r[0] == doctest::Approx(-0.125));
  // phi_dot = 0.5/2.25 - 0.5 + 0.25 * (1.25/0.75) * cos(pi/6)
  CHECK(r[1] == doctest::Approx(0.5 / 2.25 - 0.5 + 0.25 * (1.25 / 0.75) * std::sqrt(3.0) / 2));
}

TEST_CASE("rattleback pinned initial point") {
  const SystemPreset p = make_preset("rattleback");
  const auto sol = solve_initial_point(p.algebra, p.mu0, p.pinning, p.sign);
  CHECK((sol.point.q - Eigen::VectorXd(Eigen::Vector3d(0.1, -5.1, 0.1))).norm() < 1e-12);
  CHECK((sol.point.p - Eigen::VectorXd(Eigen::Vector3d(0.025, -0.1, 4.875))).norm() < 1e-12);
}

TEST_CASE("rattleback Casimir") {
  const SystemPreset p = make_preset("rattleback");
  CHECK(p.ham.casimirs[0](DualPoint{2, 3, 7}) == doctest::Approx(2 * 81));
}

TEST_CASE("heavy top initial data") {
  const HeavyTopParams params;
  const DualPoint mu = heavy_top_initial_point(params);
  // Pi = diag(I1, I1, I3) Omega; P = -m l e3 x Omega; Gamma from the tilt angles.
  CHECK(mu[0] == doctest::Approx(0.02));
  CHECK(mu[1] == doctest::Approx(0.04));
  CHECK(mu[2] == doctest::Approx(0.024));
  CHECK(mu[3] == doctest::Approx(0.7 * 0.215 * 0.2));
  CHECK(mu[4] == doctest::Approx(-0.7 * 0.215 * 0.1));
  CHECK(mu[5] == 0.0);
  const double s = std::sin(std::numbers::pi / 20);
  CHECK(mu[6] == doctest::Approx(0.5 * s));
  CHECK(mu[7] == doctest::Approx(std::sqrt(3.0) / 2 * s));
  CHECK(mu[8] == doctest::Approx(std::cos(std::numbers::pi / 20)));
}

TEST_CASE("heavy top controlled mass matrix") {
  const HeavyTopParams params;
  const double ml2 = std::pow(0.7 * 0.215, 2);
  CHECK(params.control_gain() == doctest::Approx(0.9 * ml2 / 0.2));
  const Eigen::MatrixXd inv = heavy_top_controlled_mass_matrix(params).inverse();
  const Eigen::Matrix3d j = heavy_top_controlled_inertia(params);
  const Eigen::Matrix3d m = heavy_top_controlled_mass(params);
  CHECK(j(0, 0) == doctest::Approx(0.2 - ml2 / params.control_gain()));
  CHECK(j(2, 2) == doctest::Approx(0.24));
  CHECK(m(0, 0) == doctest::Approx(params.control_gain() - ml2 / 0.2));
  CHECK(testing::max_abs(inv.topLeftCorner(3, 3) - Eigen::MatrixXd(j.inverse())) < 1e-12);
  CHECK(testing::max_abs(inv.bottomRightCorner(3, 3) - Eigen::MatrixXd(m.inverse())) < 1e-12);
  // Off-diagonal block: -k_c m l chi^ with k_c = 1 / (I1 rho - m^2 l^2).
  const double kc = 1.0 / (0.2 * params.control_gain() - ml2);
  CHECK(testing::max_abs(inv.topRightCorner(3, 3) +
                         Eigen::MatrixXd(kc * 0.7 * 0.215 * hat(Eigen::Vector3d::UnitZ()))) <
        1e-10);
}

TEST_CASE("heavy top parameter validation") {
  HeavyTopParams params;
  params.length = 0.0;
  CHECK_THROWS_AS(heavy_top_preset(params), ContractViolation);
  params = {};
  params.chi = Eigen::Vector3d(1, 1, 0);
  CHECK_THROWS_AS(heavy_top_preset(params), ContractViolation);
  params = {};
  params.rho = std::pow(0.7 * 0.215, 2) / 0.2;  // makes the mass matrix singular
  CHECK_THROWS_AS(heavy_top_preset(params), ContractViolation);
}

TEST_CASE("hat map") {
  const Eigen::Vector3d u(1, -2, 3), v(0.5, 4, -1);
  CHECK((hat(u) * v - u.cross(v)).norm() < 1e-15);
}

TEST_CASE("make_preset overrides and errors") {
  const SystemPreset p = make_preset("rattleback", {{"lambda", 3.0}, {"S0", 0.25}});
  CHECK(p.params.at("lambda") == 3.0);
  CHECK(p.mu0[2] == 0.25);
  CHECK(make_preset("heavy_top", {{"rho", 0.2}}).params.at("rho") == 0.2);
  CHECK_THROWS_AS(make_preset("pendulum"), ContractViolation);
  CHECK_THROWS_AS(make_preset("kida", {{"lambda", 1.0}}), ContractViolation);
  CHECK(preset_names().size() == 3);
}

TEST_CASE("quadratic system on an arbitrary algebra") {
  const SystemPreset p = quadratic_system(testing::so3(), {1.0, 0.5, 0.25},
                                          BracketSign::minus, DualPoint{1, 0, 0});
  CHECK(p.ham.value(DualPoint{2, 2, 2}) == doctest::Approx(0.5 * (4 + 2 + 1)));
  CHECK(p.params.at("w2") == 0.5);
  CHECK_THROWS_AS(quadratic_system(testing::so3(), {1.0}, BracketSign::plus, DualPoint{}),
                  ContractViolation);
  const auto sol = solve_initial_point(p.algebra, p.mu0, p.pinning, p.sign);
  CHECK(sol.residual < 1e-12);
  CHECK(sol.random_seed);
}
