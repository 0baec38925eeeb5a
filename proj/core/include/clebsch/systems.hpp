#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clebsch/anti_reduction.hpp"
#include "clebsch/lie_algebra.hpp"
#include "clebsch/poisson.hpp"

namespace clebsch {

/// A ready-to-integrate Lie-Poisson system: algebra, Hamiltonian, initial
/// data, pinning for the lifted initial point, and independently coded
/// closed-form vector fields used as regression oracles.
struct SystemPreset {
  std::string name;
  LieAlgebra algebra;
  HamiltonianDef ham;
  BracketSign sign = BracketSign::plus;
  std::map<std::string, double> params;
  DualPoint mu0;
  PinningSpec pinning;
  double recommended_dt = 0.01;
  double recommended_t_end = 1.0;
  std::function<DualPoint(const DualPoint&)> closed_form_lp_rhs = {};
  std::function<PhaseVelocity(const PhasePoint&)> closed_form_antireduced_rhs = {};
  std::function<DualPoint(const PhasePoint&)> closed_form_momentum_map = {};
};

// --- Kida vortex on so(2,1)* ------------------------------------------------

struct KidaParams {
  double epsilon = 0.5;  // background strain rate
  double omega = -1.0;   // background vorticity
  // Initial data is fixed implicitly by mu1(0), f1(mu0) and h(mu0).
  double mu1_initial = 1.0;
  double casimir_value = -0.25;
  double energy_value = 1.0;
};

/// Solves f1(mu) = casimir_value, h(mu) = energy_value for (mu2, mu3) with
/// mu1 fixed, by Newton from (0, -1). Throws SolverError on failure.
DualPoint kida_initial_point(const KidaParams& params);

SystemPreset kida_preset(const KidaParams& params = {});

/// Elliptic patch with aspect ratio b/a in (0, 1] and orientation phi.
struct KidaPhysicalState {
  double lambda_ratio = 1.0;
  double phi = 0.0;
};

/// Casimir value of the physical leaf, -pi^2/64.
double kida_physical_leaf();

/// Chart on the lower sheet of the -pi^2/64 leaf:
///   mu1 = (pi/16)(lambda - 1/lambda) sin 2phi
///   mu2 = (pi/16)(lambda - 1/lambda) cos 2phi
///   mu3 = -(pi/16)(lambda + 1/lambda)
DualPoint kida_mu_from_physical(const KidaPhysicalState& state);

/// Inverse chart. phi is returned in (-pi/2, pi/2]; it is undefined (0) for
/// the circular patch. Throws DomainError if mu is off the leaf by more than
/// `leaf_tolerance` or on the upper sheet.
KidaPhysicalState kida_physical_from_mu(const DualPoint& mu,
                                        double leaf_tolerance = 1e-6);

/// (lambda_dot, phi_dot) of the original Kida equations.
Eigen::Vector2d kida_physical_rhs(const KidaPhysicalState& state,
                                  double epsilon, double omega);

// --- Rattleback ---------------------------------------------------------------

struct RattlebackParams {
  double lambda = 4.0;
  DualPoint mu0{0.01, 0.01, 0.5};  // (P, R, S)
  double q1_pin = 0.1;
  double q3_pin = 0.1;
  double f0_pin = 1.0;
};

SystemPreset rattleback_preset(const RattlebackParams& params = {});

// --- Controlled heavy top on a movable base ------------------------------------

struct HeavyTopParams {
  double base_mass = 0.44;  // M [kg]
  double top_mass = 0.7;    // m [kg]
  double inertia_1 = 0.2;   // I1 = I2 [kg m^2]
  double inertia_3 = 0.24;  // I3 [kg m^2]
  double length = 0.215;    // l [m]
  double gravity = 9.8;     // g [m/s^2]
  std::optional<double> rho;  // control gain [kg]; default 0.9 m^2 l^2 / I1
  Eigen::Vector3d chi = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d omega0{0.1, 0.2, 0.1};  // body angular velocity
  Eigen::Vector3d v0 = Eigen::Vector3d::Zero();  // base velocity
  double theta0 = 3.14159265358979323846 / 3.0;
  double phi0 = 3.14159265358979323846 / 20.0;

  double total_mass() const { return base_mass + top_mass; }
  double control_gain() const;
  void validate() const;
};

/// [[II, m l chi^], [(m l chi^)^T, rho Id]] mapping (Omega, v) to (Pi, P)
/// for the controlled system.
Eigen::Matrix<double, 6, 6> heavy_top_controlled_mass_matrix(
    const HeavyTopParams& params);

/// diag(I1 - m^2 l^2/rho, I1 - m^2 l^2/rho, I3) and
/// diag(rho - m^2 l^2/I1, rho - m^2 l^2/I1, rho).
Eigen::Matrix3d heavy_top_controlled_inertia(const HeavyTopParams& params);
Eigen::Matrix3d heavy_top_controlled_mass(const HeavyTopParams& params);

/// (Pi, P, Gamma) from Omega(0), v(0) and the tilt angles, using the
/// physical total mass M + m.
DualPoint heavy_top_initial_point(const HeavyTopParams& params);

SystemPreset heavy_top_preset(const HeavyTopParams& params = {});

Eigen::Matrix3d hat(const Eigen::Vector3d& v);

// --- Generic -------------------------------------------------------------------

/// h(mu) = 1/2 sum_i w_i mu_i^2 on an arbitrary algebra, no known Casimirs;
/// pinned by Gauss-Newton from a random start.
SystemPreset quadratic_system(const LieAlgebra& algebra,
                              std::vector<double> weights, BracketSign sign,
                              DualPoint mu0, std::uint64_t seed = 1);

std::vector<std::string> preset_names();

/// Builds a preset by name with parameter overrides (keys as listed in the
/// preset's `params`). Unknown names or keys throw ContractViolation.
SystemPreset make_preset(const std::string& name,
                         const std::map<std::string, double>& overrides = {});

}  // namespace clebsch
