#pragma once

#include <functional>
#include <string>
#include <vector>

#include "clebsch/lie_algebra.hpp"
#include "clebsch/types.hpp"

namespace clebsch {

/// Scalar function on g* with an optional analytic gradient Df(mu) in g.
struct ScalarField {
  std::string name;
  std::function<double(const DualPoint&)> value;
  std::function<AlgebraVector(const DualPoint&)> gradient;  // may be empty

  double operator()(const DualPoint& mu) const { return value(mu); }
};

/// Fourth-order central differences, step 1e-5 * (1 + |mu_i|) per coordinate.
AlgebraVector finite_difference_gradient(
    const std::function<double(const DualPoint&)>& f, const DualPoint& mu);

/// Analytic gradient when available, finite differences otherwise.
AlgebraVector gradient_of(const ScalarField& f, const DualPoint& mu);

/// Hamiltonian h on g* together with its Casimirs and domain of definition.
struct HamiltonianDef {
  ScalarField energy;
  std::vector<ScalarField> casimirs;
  std::function<bool(const DualPoint&)> domain_guard;  // empty: all of g*
  std::string domain_description;

  bool in_domain(const DualPoint& mu) const;
  /// Throws DomainError if mu violates the guard.
  void require_domain(const DualPoint& mu) const;
  double value(const DualPoint& mu) const;
  AlgebraVector gradient(const DualPoint& mu) const;
};

/// {f, g}_(+/-)(mu) = +/- <mu, [Df(mu), Dg(mu)]>
double lp_bracket(const LieAlgebra& a, const ScalarField& f,
                  const ScalarField& g, const DualPoint& mu, BracketSign s);

/// Lie-Poisson vector field mu_dot = -/+ ad*_{Dh(mu)} mu for the (+/-) bracket.
DualPoint lp_rhs(const LieAlgebra& a, const HamiltonianDef& ham,
                 const DualPoint& mu, BracketSign s);

/// ||ad*_{Df(mu)} mu||; zero for Casimirs of either bracket.
double casimir_residual(const LieAlgebra& a, const ScalarField& f,
                        const DualPoint& mu);

/// Relative deviation between the analytic gradient of f and second-order
/// central differences with step 1e-6 * (1 + |mu|).
double gradient_check(const ScalarField& f, const DualPoint& mu);

/// Coordinate function mu -> mu_i.
ScalarField coordinate_function(int dimension, int index);

}  // namespace clebsch
