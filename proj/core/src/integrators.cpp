#include "clebsch/integrators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace clebsch {

bool ButcherTableau::is_explicit() const {
  for (int i = 0; i < stages; ++i)
    for (int j = i; j < stages; ++j)
      if (a(i, j) != 0.0) return false;
  return true;
}

double ButcherTableau::symplecticity_defect() const {
  double defect = 0.0;
  for (int i = 0; i < stages; ++i)
    for (int j = 0; j < stages; ++j)
      defect = std::max(defect,
                        std::abs(b[i] * a(i, j) + b[j] * a(j, i) - b[i] * b[j]));
  return defect;
}

ButcherTableau implicit_midpoint() {
  ButcherTableau t;
  t.name = "midpoint";
  t.stages = 1;
  t.a = Eigen::MatrixXd::Constant(1, 1, 0.5);
  t.b = Eigen::VectorXd::Constant(1, 1.0);
  t.c = Eigen::VectorXd::Constant(1, 0.5);
  t.order = 2;
  t.symplectic = true;
  return t;
}

ButcherTableau gauss_legendre_2() {
  const double r = std::sqrt(3.0) / 6.0;
  ButcherTableau t;
  t.name = "gl4";
  t.stages = 2;
  t.a.resize(2, 2);
  t.a << 0.25, 0.25 - r,
         0.25 + r, 0.25;
  t.b.resize(2);
  t.b << 0.5, 0.5;
  t.c.resize(2);
  t.c << 0.5 - r, 0.5 + r;
  t.order = 4;
  t.symplectic = true;
  return t;
}

ButcherTableau classical_rk4() {
  ButcherTableau t;
  t.name = "rk4";
  t.stages = 4;
  t.a = Eigen::MatrixXd::Zero(4, 4);
  t.a(1, 0) = 0.5;
  t.a(2, 1) = 0.5;
  t.a(3, 2) = 1.0;
  t.b.resize(4);
  t.b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0;
  t.c.resize(4);
  t.c << 0.0, 0.5, 0.5, 1.0;
  t.order = 4;
  t.symplectic = false;
  return t;
}

ButcherTableau tableau_by_name(const std::string& name) {
  if (name == "midpoint") return implicit_midpoint();
  if (name == "gl4") return gauss_legendre_2();
  if (name == "rk4") return classical_rk4();
  throw ContractViolation("unknown integrator '" + name +
                          "' (expected midpoint|gl4|rk4)");
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ContractViolation("integrator: dt must be positive");
  }
  if (!(newton_tolerance > 0.0)) {
    throw ContractViolation("integrator: newton_tolerance must be positive");
  }
  if (max_newton_iterations < 1) {
    throw ContractViolation("integrator: max_newton_iterations must be >= 1");
  }
  if (sample_stride < 1) {
    throw ContractViolation("integrator: sample_stride must be >= 1");
  }
  if (tableau.stages < 1) {
    throw ContractViolation("integrator: empty Butcher tableau");
  }
}

State step_explicit(const ButcherTableau& tableau, const VectorField& f,
                    const State& y, double dt) {
  const int s = tableau.stages;
  std::vector<State> k(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    State stage = y;
    for (int j = 0; j < i; ++j) {
      if (tableau.a(i, j) != 0.0) stage += dt * tableau.a(i, j) * k[j];
    }
    k[i] = f(stage);
  }
  State next = y;
  for (int i = 0; i < s; ++i) next += dt * tableau.b[i] * k[i];
  return next;
}

State step_explicit_rk4(const VectorField& f, const State& y, double dt) {
  const State k1 = f(y);
  const State k2 = f(y + 0.5 * dt * k1);
  const State k3 = f(y + 0.5 * dt * k2);
  const State k4 = f(y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

Eigen::MatrixXd finite_difference_jacobian(const VectorField& f, const State& y,
                                           const State& fy) {
  const Eigen::Index n = y.size();
  Eigen::MatrixXd jac(n, n);
  State probe = y;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double h = 1.5e-8 * (1.0 + std::abs(y[j]));
    probe[j] = y[j] + h;
    jac.col(j) = (f(probe) - fy) / h;
    probe[j] = y[j];
  }
  return jac;
}

}  // namespace

StepResult step_implicit_rk(const VectorField& f, const State& y,
                            const ButcherTableau& tableau, double dt,
                            const IntegratorConfig& options) {
  const int s = tableau.stages;
  const Eigen::Index n = y.size();
  const Eigen::Index sn = s * n;
  const double scale = 1.0 + y.norm();

  Eigen::VectorXd z = Eigen::VectorXd::Zero(sn);  // stage increments
  std::vector<State> stage_f(static_cast<std::size_t>(s));

  auto residual_of = [&](const Eigen::VectorXd& incr, Eigen::VectorXd& g) {
    for (int j = 0; j < s; ++j) stage_f[j] = f(y + incr.segment(j * n, n));
    g = incr;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if (tableau.a(i, j) != 0.0)
          g.segment(i * n, n) -= dt * tableau.a(i, j) * stage_f[j];
  };

  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> newton;
  Eigen::VectorXd g(sn);
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;

  while (iterations < options.max_newton_iterations) {
    residual_of(z, g);
    ++iterations;
    residual = g.lpNorm<Eigen::Infinity>() / scale;
    if (!std::isfinite(residual)) break;
    if (residual <= options.newton_tolerance) {
      converged = true;
      break;
    }
    if (options.solver == StageSolver::fixed_point) {
      z -= g;
      continue;
    }
    if (!newton) {
      const Eigen::MatrixXd jac = finite_difference_jacobian(f, y, f(y));
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(sn, sn);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          m.block(i * n, j * n, n, n) -= dt * tableau.a(i, j) * jac;
      newton.emplace(m);
    }
    z -= newton->solve(g);
  }

  if (!converged) {
    std::ostringstream msg;
    msg << tableau.name << ": stage equations did not converge after "
        << iterations << " iterations (residual " << residual << ")";
    throw StepError(msg.str(), residual, iterations);
  }

  State next = y;
  for (int i = 0; i < s; ++i) next += dt * tableau.b[i] * stage_f[i];
  return StepResult{std::move(next), iterations, residual};
}

std::size_t step_count(double t_end, double dt) {
  if (t_end <= 0.0) return 0;
  return static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
}

Trajectory integrate(const VectorField& f, const State& y0,
                     const IntegratorConfig& cfg, double t_end,
                     Trajectory::Kind kind) {
  cfg.validate();
  if (t_end < 0.0 || !std::isfinite(t_end)) {
    throw ContractViolation("integrate: t_end must be non-negative");
  }
  const std::size_t steps = step_count(t_end, cfg.dt);
  const auto stride = static_cast<std::size_t>(cfg.sample_stride);
  const bool explicit_method = cfg.tableau.is_explicit();

  Trajectory traj;
  traj.kind = kind;
  traj.times.reserve(steps / stride + 1);
  traj.states.reserve(steps / stride + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(y0);
  if (!explicit_method) {
    traj.newton_iterations.reserve(steps);
    traj.newton_residuals.reserve(steps);
  }

  State y = y0;
  for (std::size_t step = 1; step <= steps; ++step) {
    try {
      if (explicit_method) {
        y = step_explicit(cfg.tableau, f, y, cfg.dt);
      } else {
        StepResult r = step_implicit_rk(f, y, cfg.tableau, cfg.dt, cfg);
        y = std::move(r.state);
        traj.newton_iterations.push_back(r.iterations);
        traj.newton_residuals.push_back(r.residual);
      }
    } catch (const SolverError& e) {
      throw StepError("step " + std::to_string(step) + " (t = " +
                          std::to_string(static_cast<double>(step - 1) * cfg.dt) +
                          "): " + e.what(),
                      e.residual(), e.iterations());
    } catch (const DomainError& e) {
      throw DomainError("step " + std::to_string(step) + ": " + e.what());
    }
    if (!y.allFinite()) {
      throw StepError("step " + std::to_string(step) + ": state became non-finite",
                      std::numeric_limits<double>::infinity(), 0);
    }
    if (step % stride == 0) {
      traj.times.push_back(static_cast<double>(step) * cfg.dt);
      traj.states.push_back(y);
    }
  }
  return traj;
}

double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw ContractViolation("least_squares_slope: length mismatch");
  }
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

OrderEstimate estimate_order(const VectorField& f, const State& y0,
                             const IntegratorConfig& method, double t_end,
                             const std::vector<double>& dts,
                             const std::optional<State>& exact) {
  if (dts.size() < 3) {
    throw ContractViolation("estimate_order: need at least three step sizes");
  }
  auto final_state = [&](double dt) {
    IntegratorConfig cfg = method;
    cfg.dt = dt;
    cfg.sample_stride = 1;
    const std::size_t steps = step_count(t_end, dt);
    if (std::abs(static_cast<double>(steps) * dt - t_end) > 1e-9 * t_end) {
      throw ContractViolation("estimate_order: t_end is not a multiple of dt");
    }
    return integrate(f, y0, cfg, t_end).states.back();
  };

  State reference;
  if (exact) {
    reference = *exact;
  } else {
    double smallest = dts.front();
    for (double dt : dts) smallest = std::min(smallest, dt);
    reference = final_state(smallest / 100.0);
  }

  OrderEstimate out;
  std::vector<double> log_dt, log_err;
  for (double dt : dts) {
    try {
      const double err = (final_state(dt) - reference).lpNorm<Eigen::Infinity>();
      if (!(err > 0.0) || !std::isfinite(err)) {
        out.warnings.push_back("dt=" + std::to_string(dt) +
                               ": zero or non-finite error, excluded");
        continue;
      }
      out.dts.push_back(dt);
      out.errors.push_back(err);
      log_dt.push_back(std::log(dt));
      log_err.push_back(std::log(err));
    } catch (const Error& e) {
      out.warnings.push_back("dt=" + std::to_string(dt) + " excluded: " + e.what());
    }
  }
  if (log_dt.size() < 2) {
    throw SolverError("estimate_order: fewer than two usable runs", 0.0, 0);
  }
  out.order = least_squares_slope(log_dt, log_err);
  return out;
}

}  // namespace clebsch
