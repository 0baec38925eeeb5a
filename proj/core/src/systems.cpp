#include "clebsch/systems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace clebsch {

namespace {

constexpr double kPi = std::numbers::pi;

double take(std::map<std::string, double>& pool, const std::string& key,
            double fallback) {
  const auto it = pool.find(key);
  if (it == pool.end()) return fallback;
  const double v = it->second;
  pool.erase(it);
  return v;
}

void reject_leftovers(const std::string& preset,
                      const std::map<std::string, double>& pool) {
  if (pool.empty()) return;
  std::string keys;
  for (const auto& [k, v] : pool) keys += (keys.empty() ? "" : ", ") + k;
  throw ContractViolation("preset '" + preset + "': unknown parameter(s) " + keys);
}

}  // namespace

// ----------------------------------------------------------------------------
// Kida vortex

namespace {

double kida_energy(const KidaParams& k, const DualPoint& mu) {
  return k.epsilon * mu[1] + k.omega * mu[2] -
         (kPi / 8.0) * std::log(kPi / 8.0 - mu[2]);
}

}  // namespace

DualPoint kida_initial_point(const KidaParams& params) {
  const double mu1 = params.mu1_initial;
  Eigen::Vector2d x(0.0, -1.0);  // (mu2, mu3)
  auto residual = [&](const Eigen::Vector2d& v) {
    const DualPoint mu{mu1, v[0], v[1]};
    return Eigen::Vector2d(mu1 * mu1 + v[0] * v[0] - v[1] * v[1] -
                               params.casimir_value,
                           kida_energy(params, mu) - params.energy_value);
  };
  Eigen::Vector2d r = residual(x);
  int iteration = 0;
  for (; iteration < 100 && r.lpNorm<Eigen::Infinity>() > 1e-15; ++iteration) {
    Eigen::Matrix2d jac;
    jac << 2 * x[0], -2 * x[1],
           params.epsilon,
           params.omega + (kPi / 8.0) / (kPi / 8.0 - x[1]);
    Eigen::Vector2d step = jac.partialPivLu().solve(-r);
    // Keep the logarithm's argument positive.
    while (x[1] + step[1] >= kPi / 8.0) step *= 0.5;
    x += step;
    r = residual(x);
  }
  if (!(r.lpNorm<Eigen::Infinity>() <= 1e-12)) {
    throw SolverError("kida_initial_point: Newton did not converge", r.norm(),
                      iteration);
  }
  return DualPoint{mu1, x[0], x[1]};
}

SystemPreset kida_preset(const KidaParams& params) {
  const double eps = params.epsilon;
  const double omega = params.omega;

  LieAlgebra algebra = LieAlgebra::from_structure_matrix(
      3,
      [](const DualPoint& mu) {
        Eigen::MatrixXd s(3, 3);
        s << 0, mu[2], mu[1],
             -mu[2], 0, -mu[0],
             -mu[1], mu[0], 0;
        return s;
      },
      {"mu1", "mu2", "mu3"});

  HamiltonianDef ham;
  ham.energy = {
      "h",
      [params](const DualPoint& mu) { return kida_energy(params, mu); },
      [eps, omega](const DualPoint& mu) {
        return AlgebraVector{0.0, eps, omega + (kPi / 8.0) / (kPi / 8.0 - mu[2])};
      }};
  ham.casimirs.push_back(
      {"f1",
       [](const DualPoint& mu) {
         return mu[0] * mu[0] + mu[1] * mu[1] - mu[2] * mu[2];
       },
       [](const DualPoint& mu) {
         return AlgebraVector{2 * mu[0], 2 * mu[1], -2 * mu[2]};
       }});
  ham.domain_guard = [](const DualPoint& mu) { return mu[2] < kPi / 8.0; };
  ham.domain_description = "mu3 < pi/8";

  const DualPoint mu0 = kida_initial_point(params);

  // q1 = 1, p1 = 0 and F0 = 1 select a unique preimage of mu0.
  GaussNewton gn;
  gn.seed = PhasePoint{AlgebraVector{1.0, 1.0, 1.0}, DualPoint{0.0, 1.0, 0.0}};
  gn.constraints = {pin_q(0, 1.0), pin_p(0, 0.0), pin_f0(1.0)};

  SystemPreset preset{
      .name = "kida",
      .algebra = std::move(algebra),
      .ham = std::move(ham),
      .sign = BracketSign::plus,
      .params = {{"epsilon", eps},
                 {"omega", omega},
                 {"mu1_initial", params.mu1_initial},
                 {"casimir_value", params.casimir_value},
                 {"energy_value", params.energy_value}},
      .mu0 = mu0,
      .pinning = PinningSpec{std::move(gn)},
      .recommended_dt = 0.1,
      .recommended_t_end = 100.0,
  };

  preset.closed_form_lp_rhs = [eps, omega](const DualPoint& mu) {
    const double d = kPi - 8.0 * mu[2];
    return DualPoint{omega * mu[1] + eps * mu[2] + kPi * mu[1] / d,
                     -mu[0] * (omega + kPi / d), eps * mu[0]};
  };
  preset.closed_form_antireduced_rhs = [eps, omega](const PhasePoint& z) {
    const auto& q = z.q;
    const auto& p = z.p;
    const double d = q[0] * p[1] - q[1] * p[0] + kPi / 8.0;
    const double w = kPi / 8.0 / d;
    return PhaseVelocity{
        AlgebraVector{omega * q[1] - eps * q[2] + w * q[1],
                      -omega * q[0] - w * q[0], -eps * q[0]},
        DualPoint{omega * p[1] + eps * p[2] + w * p[1], -omega * p[0] - w * p[0],
                  eps * p[0]}};
  };
  preset.closed_form_momentum_map = [](const PhasePoint& z) {
    const auto& q = z.q;
    const auto& p = z.p;
    return DualPoint{q[1] * p[2] + q[2] * p[1], -q[2] * p[0] - q[0] * p[2],
                     -q[0] * p[1] + q[1] * p[0]};
  };
  return preset;
}

double kida_physical_leaf() { return -kPi * kPi / 64.0; }

DualPoint kida_mu_from_physical(const KidaPhysicalState& state) {
  if (!(state.lambda_ratio > 0.0)) {
    throw ContractViolation("kida chart: aspect ratio must be positive");
  }
  const double lam = state.lambda_ratio;
  const double minus = (kPi / 16.0) * (lam - 1.0 / lam);
  const double plus = (kPi / 16.0) * (lam + 1.0 / lam);
  return DualPoint{minus * std::sin(2 * state.phi), minus * std::cos(2 * state.phi),
                   -plus};
}

KidaPhysicalState kida_physical_from_mu(const DualPoint& mu,
                                        double leaf_tolerance) {
  if (mu.size() != 3) throw ContractViolation("kida chart: expected 3 components");
  const double casimir = mu[0] * mu[0] + mu[1] * mu[1] - mu[2] * mu[2];
  if (std::abs(casimir - kida_physical_leaf()) > leaf_tolerance) {
    std::ostringstream msg;
    msg << "kida chart: mu is not on the physical leaf (f1 = " << casimir
        << ", expected " << kida_physical_leaf() << ")";
    throw DomainError(msg.str());
  }
  if (mu[2] >= 0.0) {
    throw DomainError("kida chart: mu lies on the upper sheet (mu3 >= 0)");
  }
  // lambda + 1/lambda = -16 mu3 / pi >= 2
  const double sum = std::max(-16.0 * mu[2] / kPi, 2.0);
  KidaPhysicalState out;
  out.lambda_ratio = 0.5 * (sum - std::sqrt(sum * sum - 4.0));
  if (mu[0] != 0.0 || mu[1] != 0.0) {
    // lambda - 1/lambda < 0, so (mu1, mu2) points opposite to (sin, cos) 2phi.
    out.phi = 0.5 * std::atan2(-mu[0], -mu[1]);
  }
  return out;
}

Eigen::Vector2d kida_physical_rhs(const KidaPhysicalState& state, double epsilon,
                                  double omega) {
  const double lam = state.lambda_ratio;
  const double two_phi = 2.0 * state.phi;
  return Eigen::Vector2d(
      -epsilon * lam * std::sin(two_phi),
      lam / ((1 + lam) * (1 + lam)) + omega / 2 +
          (epsilon / 2) * (1 + lam * lam) / (1 - lam * lam) * std::cos(two_phi));
}

// ----------------------------------------------------------------------------
// Rattleback

SystemPreset rattleback_preset(const RattlebackParams& params) {
  const double lam = params.lambda;
  if (params.mu0.size() != 3) {
    throw ContractViolation("rattleback: mu0 must have three components");
  }

  LieAlgebra algebra = LieAlgebra::from_structure_matrix(
      3,
      [lam](const DualPoint& mu) {
        Eigen::MatrixXd s(3, 3);
        s << 0, 0, lam * mu[0],
             0, 0, -mu[1],
             -lam * mu[0], mu[1], 0;
        return s;
      },
      {"P", "R", "S"});

  HamiltonianDef ham;
  ham.energy = {"h",
                [](const DualPoint& mu) { return 0.5 * mu.squaredNorm(); },
                [](const DualPoint& mu) { return AlgebraVector(mu); }};
  ham.casimirs.push_back(
      {"f1",
       [lam](const DualPoint& mu) { return mu[0] * std::pow(mu[1], lam); },
       [lam](const DualPoint& mu) {
         return AlgebraVector{std::pow(mu[1], lam),
                              lam * mu[0] * std::pow(mu[1], lam - 1.0), 0.0};
       }});

  GaussNewton gn;
  gn.seed = PhasePoint{AlgebraVector{params.q1_pin, 0.0, params.q3_pin},
                       DualPoint::zeros(3)};
  gn.constraints = {pin_q(0, params.q1_pin), pin_q(2, params.q3_pin),
                    pin_f0(params.f0_pin)};

  SystemPreset preset{
      .name = "rattleback",
      .algebra = std::move(algebra),
      .ham = std::move(ham),
      .sign = BracketSign::plus,
      .params = {{"lambda", lam},
                 {"P0", params.mu0[0]},
                 {"R0", params.mu0[1]},
                 {"S0", params.mu0[2]},
                 {"q1_pin", params.q1_pin},
                 {"q3_pin", params.q3_pin},
                 {"f0_pin", params.f0_pin}},
      .mu0 = params.mu0,
      .pinning = PinningSpec{std::move(gn)},
      .recommended_dt = 0.01,
      .recommended_t_end = 500.0,
  };

  preset.closed_form_lp_rhs = [lam](const DualPoint& mu) {
    const double P = mu[0], R = mu[1], S = mu[2];
    return DualPoint{lam * P * S, -R * S, R * R - lam * P * P};
  };
  preset.closed_form_antireduced_rhs = [lam](const PhasePoint& z) {
    const double q1 = z.q[0], q2 = z.q[1], q3 = z.q[2];
    const double p1 = z.p[0], p2 = z.p[1];
    const double l2 = lam * lam;
    return PhaseVelocity{
        AlgebraVector{-lam * q1 * q2 * p2 + l2 * (q1 * q1 + q3 * q3) * p1,
                      -lam * q1 * q2 * p1 + (q2 * q2 + q3 * q3) * p2, 0.0},
        DualPoint{lam * q2 * p1 * p2 - l2 * q1 * p1 * p1,
                  lam * q1 * p1 * p2 - q2 * p2 * p2,
                  -q3 * (l2 * p1 * p1 + p2 * p2)}};
  };
  preset.closed_form_momentum_map = [lam](const PhasePoint& z) {
    const auto& q = z.q;
    const auto& p = z.p;
    return DualPoint{lam * q[2] * p[0], -q[2] * p[1],
                     q[1] * p[1] - lam * q[0] * p[0]};
  };
  return preset;
}

// ----------------------------------------------------------------------------
// Heavy top on a movable base

Eigen::Matrix3d hat(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0, -v.z(), v.y(),
       v.z(), 0, -v.x(),
       -v.y(), v.x(), 0;
  return m;
}

double HeavyTopParams::control_gain() const {
  if (rho) return *rho;
  return 0.9 * top_mass * top_mass * length * length / inertia_1;
}

void HeavyTopParams::validate() const {
  if (!(base_mass > 0 && top_mass > 0 && inertia_1 > 0 && inertia_3 > 0 &&
        length > 0)) {
    throw ContractViolation("heavy top: masses, inertias and length must be positive");
  }
  if (std::abs(chi.norm() - 1.0) > 1e-12) {
    throw ContractViolation("heavy top: chi must be a unit vector");
  }
}

Eigen::Matrix<double, 6, 6> heavy_top_controlled_mass_matrix(
    const HeavyTopParams& params) {
  const double ml = params.top_mass * params.length;
  Eigen::Matrix<double, 6, 6> k;
  k.setZero();
  k.topLeftCorner<3, 3>() =
      Eigen::Vector3d(params.inertia_1, params.inertia_1, params.inertia_3)
          .asDiagonal();
  k.topRightCorner<3, 3>() = ml * hat(params.chi);
  k.bottomLeftCorner<3, 3>() = (ml * hat(params.chi)).transpose();
  k.bottomRightCorner<3, 3>() =
      params.control_gain() * Eigen::Matrix3d::Identity();
  return k;
}

Eigen::Matrix3d heavy_top_controlled_inertia(const HeavyTopParams& params) {
  const double ml2 = std::pow(params.top_mass * params.length, 2);
  const double d = params.inertia_1 - ml2 / params.control_gain();
  return Eigen::Vector3d(d, d, params.inertia_3).asDiagonal();
}

Eigen::Matrix3d heavy_top_controlled_mass(const HeavyTopParams& params) {
  const double ml2 = std::pow(params.top_mass * params.length, 2);
  const double rho = params.control_gain();
  const double d = rho - ml2 / params.inertia_1;
  return Eigen::Vector3d(d, d, rho).asDiagonal();
}

DualPoint heavy_top_initial_point(const HeavyTopParams& params) {
  const double ml = params.top_mass * params.length;
  const Eigen::Vector3d inertia(params.inertia_1, params.inertia_1,
                                params.inertia_3);
  const Eigen::Vector3d pi =
      inertia.asDiagonal() * params.omega0 + ml * params.chi.cross(params.v0);
  const Eigen::Vector3d p =
      -ml * params.chi.cross(params.omega0) + params.total_mass() * params.v0;
  const Eigen::Vector3d gamma(std::cos(params.theta0) * std::sin(params.phi0),
                              std::sin(params.theta0) * std::sin(params.phi0),
                              std::cos(params.phi0));
  DualPoint mu = DualPoint::zeros(9);
  mu << pi, p, gamma;
  return mu;
}

SystemPreset heavy_top_preset(const HeavyTopParams& params) {
  params.validate();
  const Eigen::Matrix<double, 6, 6> mass = heavy_top_controlled_mass_matrix(params);
  const Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(mass);
  if (!lu.isInvertible()) {
    throw ContractViolation("heavy top: controlled mass matrix is singular");
  }
  const Eigen::Matrix<double, 6, 6> inverse = lu.inverse();
  const Eigen::Vector3d potential =
      params.top_mass * params.gravity * params.length * params.chi;

  LieAlgebra algebra = LieAlgebra::from_structure_matrix(
      9,
      [](const DualPoint& mu) {
        const Eigen::Vector3d pi = mu.segment<3>(0);
        const Eigen::Vector3d p = mu.segment<3>(3);
        const Eigen::Vector3d gamma = mu.segment<3>(6);
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(9, 9);
        s.block<3, 3>(0, 0) = -hat(pi);
        s.block<3, 3>(0, 3) = -hat(p);
        s.block<3, 3>(0, 6) = -hat(gamma);
        s.block<3, 3>(3, 0) = -hat(p);
        s.block<3, 3>(6, 0) = -hat(gamma);
        return s;
      },
      {"Pi1", "Pi2", "Pi3", "P1", "P2", "P3", "Gamma1", "Gamma2", "Gamma3"});

  HamiltonianDef ham;
  ham.energy = {
      "h_c",
      [inverse, potential](const DualPoint& mu) {
        const Eigen::Matrix<double, 6, 1> momenta = mu.head<6>();
        return 0.5 * momenta.dot(inverse * momenta) +
               potential.dot(mu.segment<3>(6));
      },
      [inverse, potential](const DualPoint& mu) {
        AlgebraVector grad = AlgebraVector::zeros(9);
        const Eigen::Matrix<double, 6, 1> momenta = mu.head<6>();
        grad.head<6>() = inverse * momenta;
        grad.segment<3>(6) = potential;
        return grad;
      }};
  ham.casimirs.push_back({"f1",
                          [](const DualPoint& mu) {
                            return mu.segment<3>(3).squaredNorm();
                          },
                          [](const DualPoint& mu) {
                            AlgebraVector g = AlgebraVector::zeros(9);
                            g.segment<3>(3) = 2.0 * mu.segment<3>(3);
                            return g;
                          }});
  ham.casimirs.push_back(
      {"f2",
       [](const DualPoint& mu) {
         const Eigen::Vector3d p = mu.segment<3>(3);
         const Eigen::Vector3d gamma = mu.segment<3>(6);
         return p.cross(gamma).squaredNorm();
       },
       [](const DualPoint& mu) {
         const Eigen::Vector3d p = mu.segment<3>(3);
         const Eigen::Vector3d gamma = mu.segment<3>(6);
         const Eigen::Vector3d w = p.cross(gamma);
         // d|P x G|^2 = 2 w . (dP x G + P x dG)
         AlgebraVector g = AlgebraVector::zeros(9);
         g.segment<3>(3) = 2.0 * gamma.cross(w);
         g.segment<3>(6) = 2.0 * w.cross(p);
         return g;
       }});
  ham.casimirs.push_back({"f3",
                          [](const DualPoint& mu) {
                            return mu.segment<3>(6).squaredNorm();
                          },
                          [](const DualPoint& mu) {
                            AlgebraVector g = AlgebraVector::zeros(9);
                            g.segment<3>(6) = 2.0 * mu.segment<3>(6);
                            return g;
                          }});

  const DualPoint mu0 = heavy_top_initial_point(params);
  const Eigen::Vector3d p0 = mu0.segment<3>(3);
  const Eigen::Vector3d gamma0 = mu0.segment<3>(6);
  const Eigen::Vector3d a1 = gamma0.cross(p0);

  // a1 = Gamma(0) x P(0), b1 = 0; a2, a3, b2, b3 by Gauss-Newton.
  GaussNewton gn;
  PhasePoint seed{AlgebraVector::zeros(9), DualPoint::zeros(9)};
  seed.q << a1, Eigen::Vector3d(0.3, -0.2, 0.5), Eigen::Vector3d(-0.4, 0.1, 0.2);
  seed.p << Eigen::Vector3d::Zero(), Eigen::Vector3d(0.1, 0.2, -0.3),
      Eigen::Vector3d(0.2, -0.1, 0.4);
  gn.seed = seed;
  for (int i = 0; i < 3; ++i) gn.constraints.push_back(pin_q(i, a1[i]));
  for (int i = 0; i < 3; ++i) gn.constraints.push_back(pin_p(i, 0.0));

  SystemPreset preset{
      .name = "heavy_top",
      .algebra = std::move(algebra),
      .ham = std::move(ham),
      .sign = BracketSign::minus,
      .params = {{"M", params.base_mass},
                 {"m", params.top_mass},
                 {"I1", params.inertia_1},
                 {"I3", params.inertia_3},
                 {"l", params.length},
                 {"g", params.gravity},
                 {"rho", params.control_gain()},
                 {"theta0", params.theta0},
                 {"phi0", params.phi0},
                 {"Omega1", params.omega0.x()},
                 {"Omega2", params.omega0.y()},
                 {"Omega3", params.omega0.z()},
                 {"v1", params.v0.x()},
                 {"v2", params.v0.y()},
                 {"v3", params.v0.z()}},
      .mu0 = mu0,
      .pinning = PinningSpec{std::move(gn)},
      .recommended_dt = 0.01,
      .recommended_t_end = 30.0,
  };

  // Componentwise controlled Lie-Poisson equations written with cross
  // products, independent of the structure-constant tensor.
  preset.closed_form_lp_rhs = [inverse, potential](const DualPoint& mu) {
    const Eigen::Vector3d pi = mu.segment<3>(0);
    const Eigen::Vector3d p = mu.segment<3>(3);
    const Eigen::Vector3d gamma = mu.segment<3>(6);
    const Eigen::Matrix<double, 6, 1> velocity = inverse * mu.head<6>();
    const Eigen::Vector3d dh_dpi = velocity.head<3>();
    const Eigen::Vector3d dh_dp = velocity.tail<3>();
    DualPoint out = DualPoint::zeros(9);
    out.segment<3>(0) = pi.cross(dh_dpi) + p.cross(dh_dp) + gamma.cross(potential);
    out.segment<3>(3) = p.cross(dh_dpi);
    out.segment<3>(6) = gamma.cross(dh_dpi);
    return out;
  };
  preset.closed_form_momentum_map = [](const PhasePoint& z) {
    const Eigen::Vector3d a1 = z.q.segment<3>(0), a2 = z.q.segment<3>(3),
                          a3 = z.q.segment<3>(6);
    const Eigen::Vector3d b1 = z.p.segment<3>(0), b2 = z.p.segment<3>(3),
                          b3 = z.p.segment<3>(6);
    DualPoint out = DualPoint::zeros(9);
    out.segment<3>(0) = -(a1.cross(b1) + a2.cross(b2) + a3.cross(b3));
    out.segment<3>(3) = -a1.cross(b2);
    out.segment<3>(6) = -a1.cross(b3);
    return out;
  };
  return preset;
}

// ----------------------------------------------------------------------------

SystemPreset quadratic_system(const LieAlgebra& algebra,
                              std::vector<double> weights, BracketSign sign,
                              DualPoint mu0, std::uint64_t seed) {
  const int n = algebra.dimension();
  if (weights.empty()) weights.assign(static_cast<std::size_t>(n), 1.0);
  if (static_cast<int>(weights.size()) != n) {
    throw ContractViolation("quadratic_system: weight count does not match dimension");
  }
  if (mu0.size() == 0) mu0 = DualPoint::zeros(n);
  algebra.require_dimension(mu0.size(), "quadratic_system(mu0)");
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(weights.data(), n);

  HamiltonianDef ham;
  ham.energy = {"h",
                [w](const DualPoint& mu) {
                  return 0.5 * mu.cwiseProduct(w).dot(mu);
                },
                [w](const DualPoint& mu) { return AlgebraVector(mu.cwiseProduct(w)); }};

  GaussNewton gn;
  gn.random_seed = seed;

  std::map<std::string, double> params;
  for (int i = 0; i < n; ++i) params["w" + std::to_string(i + 1)] = weights[i];
  return SystemPreset{
      .name = "custom",
      .algebra = algebra,
      .ham = std::move(ham),
      .sign = sign,
      .params = std::move(params),
      .mu0 = std::move(mu0),
      .pinning = PinningSpec{std::move(gn)},
      .recommended_dt = 0.01,
      .recommended_t_end = 10.0,
  };
}

std::vector<std::string> preset_names() { return {"kida", "rattleback", "heavy_top"}; }

SystemPreset make_preset(const std::string& name,
                         const std::map<std::string, double>& overrides) {
  auto pool = overrides;
  if (name == "kida") {
    KidaParams k;
    k.epsilon = take(pool, "epsilon", k.epsilon);
    k.omega = take(pool, "omega", k.omega);
    k.mu1_initial = take(pool, "mu1_initial", k.mu1_initial);
    k.casimir_value = take(pool, "casimir_value", k.casimir_value);
    k.energy_value = take(pool, "energy_value", k.energy_value);
    reject_leftovers(name, pool);
    return kida_preset(k);
  }
  if (name == "rattleback") {
    RattlebackParams r;
    r.lambda = take(pool, "lambda", r.lambda);
    r.mu0 = DualPoint{take(pool, "P0", r.mu0[0]), take(pool, "R0", r.mu0[1]),
                      take(pool, "S0", r.mu0[2])};
    r.q1_pin = take(pool, "q1_pin", r.q1_pin);
    r.q3_pin = take(pool, "q3_pin", r.q3_pin);
    r.f0_pin = take(pool, "f0_pin", r.f0_pin);
    reject_leftovers(name, pool);
    return rattleback_preset(r);
  }
  if (name == "heavy_top") {
    HeavyTopParams h;
    h.base_mass = take(pool, "M", h.base_mass);
    h.top_mass = take(pool, "m", h.top_mass);
    h.inertia_1 = take(pool, "I1", h.inertia_1);
    h.inertia_3 = take(pool, "I3", h.inertia_3);
    h.length = take(pool, "l", h.length);
    h.gravity = take(pool, "g", h.gravity);
    if (pool.count("rho")) h.rho = take(pool, "rho", 0.0);
    h.theta0 = take(pool, "theta0", h.theta0);
    h.phi0 = take(pool, "phi0", h.phi0);
    h.omega0 = Eigen::Vector3d(take(pool, "Omega1", h.omega0.x()),
                               take(pool, "Omega2", h.omega0.y()),
                               take(pool, "Omega3", h.omega0.z()));
    h.v0 = Eigen::Vector3d(take(pool, "v1", h.v0.x()), take(pool, "v2", h.v0.y()),
                           take(pool, "v3", h.v0.z()));
    reject_leftovers(name, pool);
    return heavy_top_preset(h);
  }
  throw ContractViolation("unknown preset '" + name +
                          "' (expected kida|rattleback|heavy_top)");
}

}  // namespace clebsch
