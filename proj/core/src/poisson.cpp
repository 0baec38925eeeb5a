#include "clebsch/poisson.hpp"

#include <cmath>

namespace clebsch {

AlgebraVector finite_difference_gradient(
    const std::function<double(const DualPoint&)>& f, const DualPoint& mu) {
  AlgebraVector grad = AlgebraVector::zeros(mu.size());
  DualPoint probe = mu;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const double h = 1e-5 * (1.0 + std::abs(mu[i]));
    const double base = mu[i];
    probe[i] = base + 2 * h;
    const double f2 = f(probe);
    probe[i] = base + h;
    const double f1 = f(probe);
    probe[i] = base - h;
    const double fm1 = f(probe);
    probe[i] = base - 2 * h;
    const double fm2 = f(probe);
    probe[i] = base;
    grad[i] = (-f2 + 8 * f1 - 8 * fm1 + fm2) / (12 * h);
  }
  return grad;
}

AlgebraVector gradient_of(const ScalarField& f, const DualPoint& mu) {
  if (f.gradient) return f.gradient(mu);
  return finite_difference_gradient(f.value, mu);
}

bool HamiltonianDef::in_domain(const DualPoint& mu) const {
  return !domain_guard || domain_guard(mu);
}

void HamiltonianDef::require_domain(const DualPoint& mu) const {
  if (!mu.allFinite()) {
    throw DomainError("non-finite state passed to Hamiltonian '" +
                      energy.name + "'");
  }
  if (!in_domain(mu)) {
    throw DomainError("state outside the domain of '" + energy.name + "'" +
                      (domain_description.empty() ? std::string()
                                                  : " (" + domain_description + ")"));
  }
}

double HamiltonianDef::value(const DualPoint& mu) const {
  require_domain(mu);
  return energy.value(mu);
}

AlgebraVector HamiltonianDef::gradient(const DualPoint& mu) const {
  require_domain(mu);
  return gradient_of(energy, mu);
}

double lp_bracket(const LieAlgebra& a, const ScalarField& f,
                  const ScalarField& g, const DualPoint& mu, BracketSign s) {
  a.require_dimension(mu.size(), "lp_bracket");
  const AlgebraVector df = gradient_of(f, mu);
  const AlgebraVector dg = gradient_of(g, mu);
  return sign_factor(s) * pairing(mu, bracket(a, df, dg));
}

DualPoint lp_rhs(const LieAlgebra& a, const HamiltonianDef& ham,
                 const DualPoint& mu, BracketSign s) {
  a.require_dimension(mu.size(), "lp_rhs");
  const AlgebraVector dh = ham.gradient(mu);
  return -sign_factor(s) * coadjoint(a, dh, mu);
}

double casimir_residual(const LieAlgebra& a, const ScalarField& f,
                        const DualPoint& mu) {
  return coadjoint(a, gradient_of(f, mu), mu).norm();
}

double gradient_check(const ScalarField& f, const DualPoint& mu) {
  const AlgebraVector analytic = gradient_of(f, mu);
  const double h = 1e-6 * (1.0 + mu.norm());
  AlgebraVector numeric = AlgebraVector::zeros(mu.size());
  DualPoint probe = mu;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    probe[i] = mu[i] + h;
    const double up = f.value(probe);
    probe[i] = mu[i] - h;
    const double down = f.value(probe);
    probe[i] = mu[i];
    numeric[i] = (up - down) / (2 * h);
  }
  const double scale = std::max(analytic.norm(), 1.0);
  return (analytic - numeric).norm() / scale;
}

ScalarField coordinate_function(int dimension, int index) {
  return ScalarField{
      "mu" + std::to_string(index + 1),
      [index](const DualPoint& mu) { return mu[index]; },
      [dimension, index](const DualPoint&) {
        return AlgebraVector::unit(dimension, index);
      }};
}

}  // namespace clebsch
