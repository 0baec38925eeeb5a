#include "clebsch/anti_reduction.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace clebsch {

Eigen::VectorXd PhasePoint::packed() const {
  Eigen::VectorXd state(q.size() + p.size());
  state << q, p;
  return state;
}

PhasePoint PhasePoint::unpack(const Eigen::VectorXd& state) {
  if (state.size() % 2 != 0) {
    throw ContractViolation("PhasePoint::unpack: odd state length");
  }
  const Eigen::Index n = state.size() / 2;
  return PhasePoint{state.head(n), state.tail(n)};
}

Eigen::VectorXd PhaseVelocity::packed() const {
  Eigen::VectorXd v(q_dot.size() + p_dot.size());
  v << q_dot, p_dot;
  return v;
}

namespace {

void require_phase(const LieAlgebra& a, const PhasePoint& z, const char* what) {
  a.require_dimension(z.q.size(), what);
  a.require_dimension(z.p.size(), what);
}

}  // namespace

Eigen::MatrixXd momentum_map_operator(const LieAlgebra& a,
                                      const AlgebraVector& q) {
  // -ad*_q p = -ad_q^T p; B(q) = -ad_q^T so that M+ = B p.
  return -a.ad_matrix(q).transpose();
}

DualPoint momentum_map(const LieAlgebra& a, const PhasePoint& z, BracketSign s) {
  require_phase(a, z, "momentum_map");
  return -sign_factor(s) * coadjoint(a, z.q, z.p);
}

Eigen::MatrixXd momentum_map_jacobian(const LieAlgebra& a, const PhasePoint& z,
                                      BracketSign s) {
  require_phase(a, z, "momentum_map_jacobian");
  const Eigen::Index n = a.dimension();
  Eigen::MatrixXd jac(n, 2 * n);
  // d(ad*_q p)_i / dq^j = p_k c^k_{ji} = S(p)^T, d/dp = ad_q^T.
  jac.leftCols(n) = a.structure_matrix(z.p).transpose();
  jac.rightCols(n) = a.ad_matrix(z.q).transpose();
  return -sign_factor(s) * jac;
}

double lifted_hamiltonian(const LieAlgebra& a, const HamiltonianDef& ham,
                          const PhasePoint& z, BracketSign s) {
  return ham.value(momentum_map(a, z, s));
}

PhaseVelocity anti_reduced_rhs(const LieAlgebra& a, const HamiltonianDef& ham,
                               const PhasePoint& z, BracketSign s) {
  const DualPoint mu = momentum_map(a, z, s);
  const AlgebraVector eta = ham.gradient(mu);
  const Eigen::MatrixXd ad_eta = a.ad_matrix(eta);
  const double sign = sign_factor(s);
  return PhaseVelocity{sign * (ad_eta * z.q), -sign * (ad_eta.transpose() * z.p)};
}

PhaseVelocity action_field(const LieAlgebra& a, const AlgebraVector& xi,
                           const PhasePoint& z, BracketSign s) {
  require_phase(a, z, "action_field");
  const Eigen::MatrixXd ad_xi = a.ad_matrix(xi);
  const double sign = sign_factor(s);
  return PhaseVelocity{sign * (ad_xi * z.q), -sign * (ad_xi.transpose() * z.p)};
}

double equivariance_residual(const LieAlgebra& a, const AlgebraVector& xi,
                             const PhasePoint& z, BracketSign s) {
  const Eigen::VectorXd generator = action_field(a, xi, z, s).packed();
  const DualPoint tangent = momentum_map_jacobian(a, z, s) * generator;
  const DualPoint mu = momentum_map(a, z, s);
  return (tangent + sign_factor(s) * coadjoint(a, xi, mu)).norm();
}

double pushforward_residual(const LieAlgebra& a, const HamiltonianDef& ham,
                            const PhasePoint& z, BracketSign s) {
  const Eigen::VectorXd velocity = anti_reduced_rhs(a, ham, z, s).packed();
  const DualPoint pushed = momentum_map_jacobian(a, z, s) * velocity;
  const DualPoint expected = lp_rhs(a, ham, momentum_map(a, z, s), s);
  return (pushed - expected).lpNorm<Eigen::Infinity>();
}

double f0_invariant(const PhasePoint& z) { return z.p.dot(z.q); }

double killing_q_invariant(const LieAlgebra& a, const PhasePoint& z) {
  return killing_form(a, z.q, z.q);
}

double killing_p_invariant(const LieAlgebra& a, const PhasePoint& z) {
  return pairing(z.p, kappa_sharp(a, z.p));
}

InvariantSet invariants(const LieAlgebra& a, const HamiltonianDef& ham,
                        const PhasePoint& z, BracketSign s) {
  require_phase(a, z, "invariants");
  InvariantSet out;
  out.f0 = f0_invariant(z);
  out.killing_q = killing_q_invariant(a, z);
  if (a.semisimple()) out.killing_p = killing_p_invariant(a, z);
  const DualPoint mu = momentum_map(a, z, s);
  for (const auto& casimir : ham.casimirs) {
    out.lifted_casimirs.push_back({casimir.name, casimir.value(mu)});
  }
  out.hamiltonian = ham.value(mu);
  return out;
}

double poisson_map_residual(const LieAlgebra& a, const ScalarField& f,
                            const ScalarField& g, const PhasePoint& z,
                            BracketSign s) {
  const Eigen::Index n = a.dimension();
  const DualPoint mu = momentum_map(a, z, s);
  const Eigen::MatrixXd jac = momentum_map_jacobian(a, z, s);
  const Eigen::VectorXd dF = jac.transpose() * gradient_of(f, mu);
  const Eigen::VectorXd dG = jac.transpose() * gradient_of(g, mu);
  const double canonical = dF.head(n).dot(dG.tail(n)) - dG.head(n).dot(dF.tail(n));
  return std::abs(canonical - lp_bracket(a, f, g, mu, s));
}

PhaseConstraint pin_q(int index, double value) {
  std::ostringstream name;
  name << "q" << index + 1 << "=" << value;
  return {name.str(),
          [index, value](const PhasePoint& z) { return z.q[index] - value; }};
}

PhaseConstraint pin_p(int index, double value) {
  std::ostringstream name;
  name << "p" << index + 1 << "=" << value;
  return {name.str(),
          [index, value](const PhasePoint& z) { return z.p[index] - value; }};
}

PhaseConstraint pin_f0(double value) {
  std::ostringstream name;
  name << "F0=" << value;
  return {name.str(),
          [value](const PhasePoint& z) { return f0_invariant(z) - value; }};
}

namespace {

InitialPointSolution solve_fixed_q(const LieAlgebra& a, const DualPoint& mu0,
                                   const FixedQ& fixed, const PinningSpec& pin,
                                   BracketSign s) {
  a.require_dimension(fixed.q.size(), "solve_initial_point(fixed_q)");
  const Eigen::MatrixXd op = sign_factor(s) * momentum_map_operator(a, fixed.q);
  const DualPoint p = op.completeOrthogonalDecomposition().solve(mu0);

  InitialPointSolution out{PhasePoint{fixed.q, p}};
  out.residual = (momentum_map(a, out.point, s) - mu0).norm();
  out.iterations = 1;
  if (out.residual > pin.tolerance * (1.0 + mu0.norm())) {
    std::ostringstream msg;
    msg << "fixed_q pinning: B(q) is singular on mu0 (residual " << out.residual
        << ", <mu0, q> = " << pairing(mu0, fixed.q)
        << "); choose a different q with <mu0, q> = 0 or use gauss_newton";
    throw SolverError(msg.str(), out.residual, out.iterations);
  }
  return out;
}

struct Residuals {
  Eigen::VectorXd values;
  double momentum = 0.0;
  double constraints = 0.0;
};

Residuals evaluate(const LieAlgebra& a, const DualPoint& mu0,
                   const std::vector<PhaseConstraint>& constraints,
                   const Eigen::VectorXd& x, BracketSign s) {
  const Eigen::Index n = a.dimension();
  const PhasePoint z = PhasePoint::unpack(x);
  Residuals r;
  r.values.resize(n + static_cast<Eigen::Index>(constraints.size()));
  r.values.head(n) = momentum_map(a, z, s) - mu0;
  r.momentum = r.values.head(n).norm();
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    const double v = constraints[c].residual(z);
    r.values[n + static_cast<Eigen::Index>(c)] = v;
    r.constraints = std::max(r.constraints, std::abs(v));
  }
  return r;
}

Eigen::MatrixXd residual_jacobian(const LieAlgebra& a,
                                  const std::vector<PhaseConstraint>& constraints,
                                  const Eigen::VectorXd& x, BracketSign s) {
  const Eigen::Index n = a.dimension();
  const auto m = static_cast<Eigen::Index>(constraints.size());
  Eigen::MatrixXd jac(n + m, 2 * n);
  jac.topRows(n) = momentum_map_jacobian(a, PhasePoint::unpack(x), s);
  Eigen::VectorXd probe = x;
  for (Eigen::Index j = 0; j < 2 * n; ++j) {
    const double h = 1e-7 * (1.0 + std::abs(x[j]));
    probe[j] = x[j] + h;
    const PhasePoint up = PhasePoint::unpack(probe);
    probe[j] = x[j] - h;
    const PhasePoint down = PhasePoint::unpack(probe);
    probe[j] = x[j];
    for (Eigen::Index c = 0; c < m; ++c) {
      const auto& fn = constraints[static_cast<std::size_t>(c)].residual;
      jac(n + c, j) = (fn(up) - fn(down)) / (2 * h);
    }
  }
  return jac;
}

InitialPointSolution solve_gauss_newton(const LieAlgebra& a,
                                        const DualPoint& mu0,
                                        const GaussNewton& gn,
                                        const PinningSpec& pin, BracketSign s) {
  const Eigen::Index n = a.dimension();
  InitialPointSolution out;
  Eigen::VectorXd x(2 * n);
  if (gn.seed) {
    a.require_dimension(gn.seed->q.size(), "solve_initial_point(seed)");
    a.require_dimension(gn.seed->p.size(), "solve_initial_point(seed)");
    x = gn.seed->packed();
  } else {
    std::mt19937_64 rng(gn.random_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
    out.random_seed = gn.random_seed;
  }

  const double momentum_tol = pin.tolerance * (1.0 + mu0.norm());
  auto converged = [&](const Residuals& r) {
    return r.momentum <= momentum_tol && r.constraints <= pin.tolerance;
  };

  Residuals current = evaluate(a, mu0, gn.constraints, x, s);
  int iteration = 0;
  while (!converged(current) && iteration < pin.max_iterations) {
    ++iteration;
    const Eigen::MatrixXd jac = residual_jacobian(a, gn.constraints, x, s);
    const Eigen::VectorXd step =
        jac.completeOrthogonalDecomposition().solve(-current.values);
    double damping = 1.0;
    const double before = current.values.norm();
    for (int halving = 0; halving < 40; ++halving) {
      const Eigen::VectorXd trial = x + damping * step;
      Residuals next = evaluate(a, mu0, gn.constraints, trial, s);
      if (next.values.norm() < before || halving == 39) {
        x = trial;
        current = std::move(next);
        break;
      }
      damping *= 0.5;
    }
  }

  out.point = PhasePoint::unpack(x);
  out.residual = current.momentum;
  out.constraint_residual = current.constraints;
  out.iterations = iteration;
  if (!converged(current)) {
    std::ostringstream msg;
    msg << "gauss_newton pinning did not converge in " << pin.max_iterations
        << " iterations (|M(z) - mu0| = " << current.momentum
        << ", max constraint residual = " << current.constraints
        << "); mu0 may lie outside the image of the momentum map";
    throw SolverError(msg.str(), std::max(current.momentum, current.constraints),
                      iteration);
  }
  return out;
}

}  // namespace

InitialPointSolution solve_initial_point(const LieAlgebra& a,
                                         const DualPoint& mu0,
                                         const PinningSpec& pin, BracketSign s) {
  a.require_dimension(mu0.size(), "solve_initial_point");
  if (!mu0.allFinite()) {
    throw ContractViolation("solve_initial_point: mu0 is not finite");
  }
  if (!(pin.tolerance > 0.0)) {
    throw ContractViolation("solve_initial_point: tolerance must be positive");
  }
  if (const auto* fixed = std::get_if<FixedQ>(&pin.strategy)) {
    return solve_fixed_q(a, mu0, *fixed, pin, s);
  }
  return solve_gauss_newton(a, mu0, std::get<GaussNewton>(pin.strategy), pin, s);
}

}  // namespace clebsch
