#include "clebsch/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "clebsch/anti_reduction.hpp"

namespace clebsch {

InvariantSeries invariant_series(const Trajectory& traj, const StateFunction& f,
                                 const std::string& name, double scale_floor) {
  if (traj.size() == 0) {
    throw ContractViolation("invariant_series(" + name + "): empty trajectory");
  }
  InvariantSeries out;
  out.name = name;
  try {
    out.initial_value = f(traj.states.front());
  } catch (const DomainError& e) {
    throw ContractViolation("invariant_series(" + name +
                            "): initial state outside domain: " + e.what());
  }
  const double scale = std::max(std::abs(out.initial_value), scale_floor);
  out.times.reserve(traj.size());
  out.relative_error.reserve(traj.size());
  out.times.push_back(traj.times.front());
  out.relative_error.push_back(0.0);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    double value = 0.0;
    try {
      value = f(traj.states[i]);
    } catch (const DomainError& e) {
      out.truncated = true;
      out.warning = "truncated at t = " + format_double(traj.times[i]) + ": " +
                    e.what();
      break;
    }
    out.times.push_back(traj.times[i]);
    out.relative_error.push_back((value - out.initial_value) / scale);
  }
  out.drift_slope = least_squares_slope(out.times, out.relative_error);
  for (double e : out.relative_error) {
    out.max_abs_error = std::max(out.max_abs_error, std::abs(e));
  }
  return out;
}

bool drift_free(double collective_slope, double baseline_slope,
                const DriftThresholds& thresholds) {
  const double c = std::abs(collective_slope);
  return c <= thresholds.floor || c <= thresholds.factor * std::abs(baseline_slope);
}

bool ComparisonReport::all_drift_free() const {
  return std::all_of(invariants.begin(), invariants.end(),
                     [](const InvariantComparison& c) { return c.drift_free; });
}

Trajectory map_to_dual(const LieAlgebra& a, const Trajectory& phase,
                       BracketSign s) {
  Trajectory out;
  out.kind = Trajectory::Kind::dual;
  out.times = phase.times;
  out.newton_iterations = phase.newton_iterations;
  out.newton_residuals = phase.newton_residuals;
  out.states.reserve(phase.size());
  for (const State& y : phase.states) {
    a.require_dimension(y.size() / 2, "map_to_dual");
    out.states.push_back(momentum_map(a, PhasePoint::unpack(y), s));
  }
  return out;
}

namespace {

void require_same_grid(const Trajectory& x, const Trajectory& y) {
  if (x.times.size() != y.times.size()) {
    throw ContractViolation("compare_runs: sample counts differ (" +
                            std::to_string(x.times.size()) + " vs " +
                            std::to_string(y.times.size()) + ")");
  }
  for (std::size_t i = 0; i < x.times.size(); ++i) {
    const double tol = 1e-12 * std::max(1.0, std::abs(x.times[i]));
    if (std::abs(x.times[i] - y.times[i]) > tol) {
      throw ContractViolation("compare_runs: time grids differ at sample " +
                              std::to_string(i));
    }
  }
}

}  // namespace

ComparisonReport compare_runs(const LieAlgebra& a, BracketSign s,
                              const Trajectory& collective,
                              const Trajectory& baseline,
                              const HamiltonianDef& ham,
                              const DriftThresholds& thresholds) {
  require_same_grid(collective, baseline);
  const Trajectory mapped = collective.kind == Trajectory::Kind::phase
                                ? map_to_dual(a, collective, s)
                                : collective;

  std::vector<const ScalarField*> fields{&ham.energy};
  for (const auto& c : ham.casimirs) fields.push_back(&c);

  ComparisonReport report;
  report.thresholds = thresholds;
  if (mapped.size() == 0) return report;
  for (const ScalarField* field : fields) {
    auto eval = [&](const State& mu) {
      const DualPoint point = mu;
      ham.require_domain(point);
      return field->value(point);
    };
    InvariantComparison c;
    c.name = field->name;
    c.collective = invariant_series(mapped, eval, field->name);
    c.baseline = invariant_series(baseline, eval, field->name);
    c.drift_free =
        drift_free(c.collective.drift_slope, c.baseline.drift_slope, thresholds);
    report.invariants.push_back(std::move(c));
  }
  return report;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<std::string>& labels) {
  out << 't';
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const State& y = traj.states[i];
    if (static_cast<std::size_t>(y.size()) != labels.size()) {
      throw ContractViolation("write_trajectory_csv: label count does not match state");
    }
    out << format_double(traj.times[i]);
    for (Eigen::Index k = 0; k < y.size(); ++k) out << ',' << format_double(y[k]);
    out << '\n';
  }
}

void write_series_csv(std::ostream& out,
                      const std::vector<InvariantSeries>& series) {
  out << 't';
  for (const auto& s : series) out << ',' << s.name << "_relerr";
  out << '\n';
  std::size_t rows = 0;
  const std::vector<double>* grid = nullptr;
  for (const auto& s : series) {
    if (s.times.size() > rows) {
      rows = s.times.size();
      grid = &s.times;
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    out << format_double((*grid)[i]);
    for (const auto& s : series) {
      out << ',';
      if (i < s.relative_error.size()) out << format_double(s.relative_error[i]);
    }
    out << '\n';
  }
}

}  // namespace clebsch
