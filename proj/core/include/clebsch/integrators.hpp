#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clebsch/errors.hpp"

namespace clebsch {

using State = Eigen::VectorXd;
using VectorField = std::function<State(const State&)>;

/// Runge-Kutta coefficients. Explicit methods have strictly lower-triangular A.
struct ButcherTableau {
  std::string name;
  int stages = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  int order = 0;
  bool symplectic = false;

  bool is_explicit() const;
  /// max_ij |b_i a_ij + b_j a_ji - b_i b_j|
  double symplecticity_defect() const;
};

ButcherTableau implicit_midpoint();
/// Two-stage Gauss-Legendre collocation, order 4.
ButcherTableau gauss_legendre_2();
ButcherTableau classical_rk4();
/// "midpoint", "gl4" or "rk4".
ButcherTableau tableau_by_name(const std::string& name);

enum class StageSolver { simplified_newton, fixed_point };

struct IntegratorConfig {
  ButcherTableau tableau = gauss_legendre_2();
  double dt = 0.01;
  double newton_tolerance = 1e-13;
  int max_newton_iterations = 25;
  StageSolver solver = StageSolver::simplified_newton;
  int sample_stride = 1;

  void validate() const;
};

/// Raised when the stage equations do not converge.
class StepError : public SolverError {
 public:
  using SolverError::SolverError;
};

struct StepResult {
  State state;
  int iterations = 0;     // stage-residual evaluations
  double residual = 0.0;  // final scaled max-norm stage residual
};

/// Classical fourth-order Runge-Kutta step.
State step_explicit_rk4(const VectorField& f, const State& y, double dt);

/// Any explicit tableau.
State step_explicit(const ButcherTableau& tableau, const VectorField& f,
                    const State& y, double dt);

/// One implicit Runge-Kutta step with signed step `dt`. Stage increments
/// Z_i = Y_i - y solve Z = dt (A (x) I) F(y + Z); simplified Newton uses a
/// finite-difference Jacobian of f at y, factored once per step.
/// Converged when max|residual| / (1 + ||y||) <= newton_tolerance.
StepResult step_implicit_rk(const VectorField& f, const State& y,
                            const ButcherTableau& tableau, double dt,
                            const IntegratorConfig& options);

inline StepResult step_implicit_rk(const VectorField& f, const State& y,
                                   const IntegratorConfig& cfg) {
  return step_implicit_rk(f, y, cfg.tableau, cfg.dt, cfg);
}

struct Trajectory {
  enum class Kind { phase, dual, generic };

  Kind kind = Kind::generic;
  std::vector<double> times;
  std::vector<State> states;
  // Per integration step (not per sample). Empty for explicit methods.
  std::vector<int> newton_iterations;
  std::vector<double> newton_residuals;

  std::size_t size() const { return states.size(); }
};

/// Number of steps of size dt that fit in [0, t_end].
std::size_t step_count(double t_end, double dt);

/// Fixed-step integration over [0, t_end]; every sample_stride-th state is
/// recorded, starting with y0. Step failures are rethrown as StepError with
/// the failing step index in the message.
Trajectory integrate(const VectorField& f, const State& y0,
                     const IntegratorConfig& cfg, double t_end,
                     Trajectory::Kind kind = Trajectory::Kind::generic);

struct OrderEstimate {
  double order = 0.0;
  std::vector<double> dts;
  std::vector<double> errors;
  std::vector<std::string> warnings;
};

/// Least-squares slope of log(error) against log(dt), where error is the
/// max-norm distance at t_end to `exact` or, when absent, to a reference run
/// of the same method with step min(dts)/100.
OrderEstimate estimate_order(const VectorField& f, const State& y0,
                             const IntegratorConfig& method, double t_end,
                             const std::vector<double>& dts,
                             const std::optional<State>& exact = std::nullopt);

/// Slope of the least-squares line through (x_i, y_i).
double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace clebsch
