#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "clebsch/lie_algebra.hpp"
#include "clebsch/poisson.hpp"
#include "clebsch/types.hpp"

namespace clebsch {

/// Canonical coordinates (q, p) on T*g, identified with R^n x R^n.
struct PhasePoint {
  AlgebraVector q;
  DualPoint p;

  Eigen::Index dimension() const { return q.size(); }

  /// [q; p] as a single 2n vector (the integrator state).
  Eigen::VectorXd packed() const;
  static PhasePoint unpack(const Eigen::VectorXd& state);
};

/// Tangent vector (q_dot, p_dot) at a PhasePoint.
struct PhaseVelocity {
  AlgebraVector q_dot;
  DualPoint p_dot;

  Eigen::VectorXd packed() const;
};

/// M+(q,p) = -ad*_q p, M-(q,p) = +ad*_q p.
DualPoint momentum_map(const LieAlgebra& a, const PhasePoint& z, BracketSign s);

/// n x 2n Jacobian of M+/- at z, columns ordered [q, p].
Eigen::MatrixXd momentum_map_jacobian(const LieAlgebra& a, const PhasePoint& z,
                                      BracketSign s);

/// B(q) with M+/-(q, p) = +/- B(q) p, i.e. B(q)_{ik} = c^k_{ij} q^j.
Eigen::MatrixXd momentum_map_operator(const LieAlgebra& a,
                                      const AlgebraVector& q);

/// H(q,p) = h(M+/-(q,p)).
double lifted_hamiltonian(const LieAlgebra& a, const HamiltonianDef& ham,
                          const PhasePoint& z, BracketSign s);

/// Canonical Hamiltonian vector field of H in closed form:
///   plus:  (ad_eta q, -ad*_eta p),   eta = Dh(M+(z))
///   minus: (-ad_eta q, +ad*_eta p),  eta = Dh(M-(z))
PhaseVelocity anti_reduced_rhs(const LieAlgebra& a, const HamiltonianDef& ham,
                               const PhasePoint& z, BracketSign s);

/// Infinitesimal generator xi_{T*g} of the left (plus) or right (minus)
/// g-action on T*g.
PhaseVelocity action_field(const LieAlgebra& a, const AlgebraVector& xi,
                           const PhasePoint& z, BracketSign s);

/// ||T M . xi_{T*g}(z) +/- ad*_xi M(z)||; zero by infinitesimal equivariance.
double equivariance_residual(const LieAlgebra& a, const AlgebraVector& xi,
                             const PhasePoint& z, BracketSign s);

/// max-norm of T M . X_H(z) - lp_rhs(M(z)); zero when M pushes the
/// anti-reduced flow forward to the Lie-Poisson flow.
double pushforward_residual(const LieAlgebra& a, const HamiltonianDef& ham,
                            const PhasePoint& z, BracketSign s);

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct InvariantSet {
  double f0 = 0.0;                 // p . q
  double killing_q = 0.0;          // kappa(q, q)
  std::optional<double> killing_p; // kappa*(p, p), semisimple algebras only
  std::vector<NamedValue> lifted_casimirs;  // f o M
  double hamiltonian = 0.0;        // h o M
};

double f0_invariant(const PhasePoint& z);
double killing_q_invariant(const LieAlgebra& a, const PhasePoint& z);
/// Throws NotSemisimpleError for degenerate Killing forms.
double killing_p_invariant(const LieAlgebra& a, const PhasePoint& z);

InvariantSet invariants(const LieAlgebra& a, const HamiltonianDef& ham,
                        const PhasePoint& z, BracketSign s);

/// |{f o M, g o M}_canonical(z) - {f, g}_(+/-)(M(z))|, the left side built
/// from the chain rule through the exact Jacobian of M.
double poisson_map_residual(const LieAlgebra& a, const ScalarField& f,
                            const ScalarField& g, const PhasePoint& z,
                            BracketSign s);

// ---------------------------------------------------------------------------
// Initial-point solver: find (q0, p0) with M+/-(q0, p0) = mu0.

struct PhaseConstraint {
  std::string name;
  std::function<double(const PhasePoint&)> residual;  // zero when satisfied
};

PhaseConstraint pin_q(int index, double value);
PhaseConstraint pin_p(int index, double value);
PhaseConstraint pin_f0(double value);

/// Keep q fixed and solve the linear system +/- B(q) p = mu0 in the
/// minimum-norm least-squares sense. B(q) always has q in its left null
/// space, so mu0 is reachable only when <mu0, q> = 0.
struct FixedQ {
  AlgebraVector q;
};

/// Damped Gauss-Newton on [M(z) - mu0; constraints(z)] using
/// minimum-norm (pseudo-inverse) steps. Without a seed point, the start is
/// drawn from N(0,1) with `random_seed`.
struct GaussNewton {
  std::optional<PhasePoint> seed;
  std::uint64_t random_seed = 0;
  std::vector<PhaseConstraint> constraints;
};

struct PinningSpec {
  std::variant<FixedQ, GaussNewton> strategy;
  double tolerance = 1e-12;
  int max_iterations = 50;
};

struct InitialPointSolution {
  PhasePoint point;
  double residual = 0.0;           // ||M(z) - mu0||
  double constraint_residual = 0.0;  // max |constraint|
  int iterations = 0;
  std::optional<std::uint64_t> random_seed = std::nullopt;  // set when a random start was used
};

InitialPointSolution solve_initial_point(const LieAlgebra& a,
                                         const DualPoint& mu0,
                                         const PinningSpec& pin, BracketSign s);

}  // namespace clebsch
