#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

#include <json.hpp>

namespace clebsch::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

fs::path prepare_out_dir(const ExperimentConfig& cfg) {
  fs::path dir(cfg.out);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ContractViolation("cannot write '" + path.string() + "'");
  return out;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

IntegratorConfig integrator_config(const ExperimentConfig& cfg,
                                   const ResolvedSystem& sys,
                                   const std::string& method) {
  IntegratorConfig ic;
  ic.tableau = tableau_by_name(method);
  ic.dt = sys.dt;
  ic.newton_tolerance = cfg.newton_tolerance;
  ic.max_newton_iterations = cfg.max_newton_iterations;
  ic.sample_stride = cfg.sample_stride;
  return ic;
}

json parameters_json(const ExperimentConfig& cfg, const ResolvedSystem& sys) {
  json j;
  j["system"] = sys.preset.name;
  if (!cfg.structure_file.empty()) j["structure_constants"] = cfg.structure_file;
  j["sign"] = to_string(sys.sign);
  j["dt"] = sys.dt;
  j["t_end"] = sys.t_end;
  j["integrator"] = cfg.integrator;
  j["newton_tolerance"] = cfg.newton_tolerance;
  j["sample_stride"] = cfg.sample_stride;
  json params = json::object();
  for (const auto& [k, v] : sys.preset.params) params[k] = v;
  j["params"] = params;
  j["mu0"] = to_vector(sys.preset.mu0);
  return j;
}

json newton_json(const Trajectory& traj) {
  json j;
  j["steps"] = traj.newton_iterations.size();
  if (traj.newton_iterations.empty()) return j;
  double total = 0.0;
  for (int it : traj.newton_iterations) total += it;
  j["mean_iterations"] =
      total / static_cast<double>(traj.newton_iterations.size());
  j["max_iterations"] = *std::max_element(traj.newton_iterations.begin(),
                                          traj.newton_iterations.end());
  j["max_residual"] = *std::max_element(traj.newton_residuals.begin(),
                                        traj.newton_residuals.end());
  return j;
}

json series_json(const InvariantSeries& s) {
  json j;
  j["initial_value"] = s.initial_value;
  j["drift_slope"] = s.drift_slope;
  j["max_abs_error"] = s.max_abs_error;
  j["truncated"] = s.truncated;
  if (!s.warning.empty()) j["warning"] = s.warning;
  return j;
}

std::vector<std::string> phase_labels(const LieAlgebra& a) {
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("q_" + l);
  for (const auto& l : a.labels()) labels.push_back("p_" + l);
  return labels;
}

// h and the Casimirs along a dual trajectory.
std::vector<InvariantSeries> dual_series(const ResolvedSystem& sys,
                                         const Trajectory& dual) {
  const HamiltonianDef& ham = sys.preset.ham;
  std::vector<const ScalarField*> fields{&ham.energy};
  for (const auto& c : ham.casimirs) fields.push_back(&c);
  std::vector<InvariantSeries> out;
  for (const ScalarField* f : fields) {
    out.push_back(invariant_series(
        dual,
        [&](const State& y) {
          const DualPoint mu = y;
          ham.require_domain(mu);
          return f->value(mu);
        },
        f->name));
  }
  return out;
}

// Quadratic invariants of the anti-reduced flow.
std::vector<InvariantSeries> phase_series(const ResolvedSystem& sys,
                                          const Trajectory& phase) {
  const LieAlgebra& a = sys.preset.algebra;
  std::vector<InvariantSeries> out;
  out.push_back(invariant_series(
      phase, [](const State& y) { return f0_invariant(PhasePoint::unpack(y)); },
      "F0"));
  out.push_back(invariant_series(
      phase,
      [&](const State& y) { return killing_q_invariant(a, PhasePoint::unpack(y)); },
      "kappa_qq"));
  if (a.semisimple()) {
    out.push_back(invariant_series(
        phase,
        [&](const State& y) { return killing_p_invariant(a, PhasePoint::unpack(y)); },
        "kappa_pp"));
  }
  return out;
}

struct CollectiveRun {
  InitialPointSolution initial;
  Trajectory phase;
  Trajectory dual;
};

CollectiveRun run_collective(const ExperimentConfig& cfg, const ResolvedSystem& sys,
                             const std::string& method) {
  const SystemPreset& p = sys.preset;
  CollectiveRun run;
  run.initial = solve_initial_point(p.algebra, p.mu0, sys.pinning, sys.sign);
  const VectorField f = [&p, s = sys.sign](const State& y) -> State {
    return anti_reduced_rhs(p.algebra, p.ham, PhasePoint::unpack(y), s).packed();
  };
  run.phase = integrate(f, run.initial.point.packed(),
                        integrator_config(cfg, sys, method), sys.t_end,
                        Trajectory::Kind::phase);
  run.dual = map_to_dual(p.algebra, run.phase, sys.sign);
  return run;
}

Trajectory run_baseline(const ExperimentConfig& cfg, const ResolvedSystem& sys) {
  const SystemPreset& p = sys.preset;
  const VectorField f = [&p, s = sys.sign](const State& y) -> State {
    return lp_rhs(p.algebra, p.ham, y, s);
  };
  return integrate(f, p.mu0, integrator_config(cfg, sys, "rk4"), sys.t_end,
                   Trajectory::Kind::dual);
}

json initial_point_json(const InitialPointSolution& s) {
  json j;
  j["q0"] = to_vector(s.point.q);
  j["p0"] = to_vector(s.point.p);
  j["residual"] = s.residual;
  j["constraint_residual"] = s.constraint_residual;
  j["iterations"] = s.iterations;
  if (s.random_seed) j["random_seed"] = *s.random_seed;
  return j;
}

}  // namespace

int cmd_check(const ExperimentConfig& cfg, std::ostream& log) {
  const ResolvedSystem sys = resolve(cfg);
  const SystemPreset& p = sys.preset;
  const LieAlgebra& a = p.algebra;
  const double tol = cfg.check_tolerance;
  bool ok = true;
  json report;
  report["parameters"] = parameters_json(cfg, sys);

  const AlgebraReport audit_report = audit(a);
  json alg;
  alg["dimension"] = a.dimension();
  alg["jacobi_residual"] = audit_report.jacobi_residual;
  alg["antisymmetry_residual"] = audit_report.antisymmetry_residual;
  alg["center_dimension"] = audit_report.center_dimension;
  alg["semisimple"] = audit_report.semisimple;
  alg["killing_rank"] = audit_report.killing_rank;
  json killing = json::array();
  for (Eigen::Index i = 0; i < a.dimension(); ++i)
    killing.push_back(to_vector(audit_report.killing_matrix.row(i).transpose()));
  alg["killing_matrix"] = killing;
  report["algebra"] = alg;
  log << "algebra: dim " << a.dimension() << ", jacobi "
      << audit_report.jacobi_residual << ", center_dim "
      << audit_report.center_dimension << ", semisimple "
      << (audit_report.semisimple ? "true" : "false") << '\n';
  if (audit_report.jacobi_residual > tol) {
    log << "FAIL: Jacobi identity violated\n";
    ok = false;
  }
  if (audit_report.antisymmetry_residual > tol) {
    log << "FAIL: structure constants not antisymmetric\n";
    ok = false;
  }
  if (audit_report.center_dimension > 0) {
    log << "warning: nontrivial center, the momentum map is not onto\n";
  }

  // Gradients and Casimir residuals at mu0 and nearby in-domain points.
  std::vector<DualPoint> probes{p.mu0};
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double spread = 0.1 * (1.0 + p.mu0.norm());
  while (probes.size() < 11) {
    DualPoint mu = p.mu0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) mu[i] += spread * normal(rng);
    if (p.ham.in_domain(mu)) probes.push_back(mu);
  }
  json fields = json::object();
  std::vector<const ScalarField*> all{&p.ham.energy};
  for (const auto& c : p.ham.casimirs) all.push_back(&c);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const ScalarField& f = *all[k];
    double grad = 0.0;
    double casimir = 0.0;
    for (const auto& mu : probes) {
      grad = std::max(grad, gradient_check(f, mu));
      if (k > 0) {
        const AlgebraVector df = gradient_of(f, mu);
        casimir = std::max(casimir, casimir_residual(a, f, mu) /
                                        (1.0 + df.norm() * mu.norm()));
      }
    }
    json entry;
    entry["gradient_check"] = grad;
    if (k > 0) entry["casimir_residual"] = casimir;
    fields[f.name] = entry;
    log << f.name << ": gradient check " << grad;
    if (k > 0) log << ", casimir residual " << casimir;
    log << '\n';
    if (grad > 1e-6) {
      log << "FAIL: analytic gradient of " << f.name << " disagrees with differences\n";
      ok = false;
    }
    if (k > 0 && casimir > tol) {
      log << "FAIL: " << f.name << " is not a Casimir\n";
      ok = false;
    }
  }
  report["fields"] = fields;

  try {
    const auto sol = solve_initial_point(a, p.mu0, sys.pinning, sys.sign);
    report["initial_point"] = initial_point_json(sol);
    log << "initial point: residual " << sol.residual << " after "
        << sol.iterations << " iterations\n";
  } catch (const SolverError& e) {
    report["initial_point"] = {{"error", e.what()}};
    log << "FAIL: " << e.what() << '\n';
    ok = false;
  }

  report["passed"] = ok;
  write_json(prepare_out_dir(cfg) / "check.json", report);
  log << (ok ? "check passed" : "check FAILED") << '\n';
  return ok ? kOk : kCheckFailed;
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& log) {
  const ResolvedSystem sys = resolve(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  const CollectiveRun run = run_collective(cfg, sys, cfg.integrator);
  const LieAlgebra& a = sys.preset.algebra;

  {
    auto out = open_output(dir / "mu.csv");
    write_trajectory_csv(out, run.dual, a.labels());
  }
  {
    auto out = open_output(dir / "qp.csv");
    write_trajectory_csv(out, run.phase, phase_labels(a));
  }
  std::vector<InvariantSeries> series = dual_series(sys, run.dual);
  for (auto& s : phase_series(sys, run.phase)) series.push_back(std::move(s));
  {
    auto out = open_output(dir / "invariants.csv");
    write_series_csv(out, series);
  }

  json summary;
  summary["command"] = "run";
  summary["parameters"] = parameters_json(cfg, sys);
  summary["initial_point"] = initial_point_json(run.initial);
  summary["newton"] = newton_json(run.phase);
  json inv = json::object();
  for (const auto& s : series) inv[s.name] = series_json(s);
  summary["invariants"] = inv;
  write_json(dir / "summary.json", summary);

  log << "run: " << run.phase.size() << " samples written to " << dir.string()
      << '\n';
  for (const auto& s : series) {
    log << "  " << s.name << ": max relerr " << s.max_abs_error << ", slope "
        << s.drift_slope << (s.truncated ? " (truncated)" : "") << '\n';
  }
  return kOk;
}

int cmd_compare(const ExperimentConfig& cfg, std::ostream& log) {
  const ResolvedSystem sys = resolve(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  const LieAlgebra& a = sys.preset.algebra;

  // Independent state; the two integrations run concurrently.
  auto collective = std::async(std::launch::async, [&] {
    return run_collective(cfg, sys, cfg.integrator);
  });
  auto baseline =
      std::async(std::launch::async, [&] { return run_baseline(cfg, sys); });
  const CollectiveRun run = collective.get();
  const Trajectory direct = baseline.get();

  const ComparisonReport report =
      compare_runs(a, sys.sign, run.dual, direct, sys.preset.ham, cfg.drift);

  {
    auto out = open_output(dir / "collective_mu.csv");
    write_trajectory_csv(out, run.dual, a.labels());
  }
  {
    auto out = open_output(dir / "baseline_mu.csv");
    write_trajectory_csv(out, direct, a.labels());
  }
  std::vector<InvariantSeries> collective_series, baseline_series;
  for (const auto& c : report.invariants) {
    collective_series.push_back(c.collective);
    baseline_series.push_back(c.baseline);
  }
  {
    auto out = open_output(dir / "collective_invariants.csv");
    write_series_csv(out, collective_series);
  }
  {
    auto out = open_output(dir / "baseline_invariants.csv");
    write_series_csv(out, baseline_series);
  }

  json summary;
  summary["command"] = "compare";
  summary["parameters"] = parameters_json(cfg, sys);
  summary["baseline_integrator"] = "rk4";
  summary["initial_point"] = initial_point_json(run.initial);
  summary["newton"] = newton_json(run.phase);
  summary["thresholds"] = {{"factor", cfg.drift.factor}, {"floor", cfg.drift.floor}};
  json verdicts = json::object();
  log << "compare: " << run.dual.size() << " samples\n";
  for (const auto& c : report.invariants) {
    json v;
    v["collective"] = series_json(c.collective);
    v["baseline"] = series_json(c.baseline);
    v["drift_free"] = c.drift_free;
    verdicts[c.name] = v;
    log << "  " << c.name << ": slope collective " << c.collective.drift_slope
        << ", baseline " << c.baseline.drift_slope << " -> "
        << (c.drift_free ? "collective drift-free" : "no advantage") << '\n';
  }
  summary["verdicts"] = verdicts;
  summary["all_drift_free"] = report.all_drift_free();
  write_json(dir / "summary.json", summary);
  return kOk;
}

int cmd_convergence(const ExperimentConfig& cfg, std::ostream& log) {
  const ResolvedSystem sys = resolve(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  const SystemPreset& p = sys.preset;
  const auto initial = solve_initial_point(p.algebra, p.mu0, sys.pinning, sys.sign);

  const VectorField anti = [&p, s = sys.sign](const State& y) -> State {
    return anti_reduced_rhs(p.algebra, p.ham, PhasePoint::unpack(y), s).packed();
  };
  const VectorField direct = [&p, s = sys.sign](const State& y) -> State {
    return lp_rhs(p.algebra, p.ham, y, s);
  };

  struct Case {
    std::string system;
    std::string method;
    const VectorField* f;
    State y0;
  };
  const std::vector<Case> cases{
      {"anti_reduced", "midpoint", &anti, initial.point.packed()},
      {"anti_reduced", "gl4", &anti, initial.point.packed()},
      {"anti_reduced", "rk4", &anti, initial.point.packed()},
      {"lie_poisson", "rk4", &direct, p.mu0},
  };

  auto csv = open_output(dir / "convergence.csv");
  csv << "system,method,dt,error\n";
  json orders = json::array();
  for (const auto& c : cases) {
    IntegratorConfig ic = integrator_config(cfg, sys, c.method);
    ic.sample_stride = 1;
    const OrderEstimate est = estimate_order(*c.f, c.y0, ic, cfg.convergence_t_end,
                                             cfg.convergence_dts);
    for (std::size_t i = 0; i < est.dts.size(); ++i) {
      csv << c.system << ',' << c.method << ',' << format_double(est.dts[i]) << ','
          << format_double(est.errors[i]) << '\n';
    }
    json j;
    j["system"] = c.system;
    j["method"] = c.method;
    j["order"] = est.order;
    j["expected"] = tableau_by_name(c.method).order;
    j["warnings"] = est.warnings;
    orders.push_back(j);
    log << c.system << " " << c.method << ": order " << est.order << '\n';
  }

  json summary;
  summary["command"] = "convergence";
  summary["parameters"] = parameters_json(cfg, sys);
  summary["t_end"] = cfg.convergence_t_end;
  summary["dts"] = cfg.convergence_dts;
  summary["initial_point"] = initial_point_json(initial);
  summary["orders"] = orders;
  write_json(dir / "summary.json", summary);
  return kOk;
}

}  // namespace clebsch::cli
