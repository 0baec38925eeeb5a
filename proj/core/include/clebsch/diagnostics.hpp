#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "clebsch/integrators.hpp"
#include "clebsch/lie_algebra.hpp"
#include "clebsch/poisson.hpp"
#include "clebsch/types.hpp"

namespace clebsch {

/// Relative error (I(t) - I(0)) / max(|I(0)|, scale_floor) of one invariant.
struct InvariantSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> relative_error;
  double initial_value = 0.0;
  double drift_slope = 0.0;    // least-squares slope of relative_error vs t
  double max_abs_error = 0.0;  // max |relative_error|
  bool truncated = false;      // evaluator left its domain part-way
  std::string warning;
};

using StateFunction = std::function<double(const State&)>;

/// Evaluates `f` on every sample. A DomainError stops the series at the last
/// good sample and sets `truncated`. Throws ContractViolation on an empty
/// trajectory or a domain error at t = 0.
InvariantSeries invariant_series(const Trajectory& traj, const StateFunction& f,
                                 const std::string& name,
                                 double scale_floor = 1e-14);

struct DriftThresholds {
  double factor = 0.1;   // collective slope must be <= factor * baseline slope
  double floor = 1e-12;  // ... or below this absolute slope (per unit time)
};

bool drift_free(double collective_slope, double baseline_slope,
                const DriftThresholds& thresholds = {});

struct InvariantComparison {
  std::string name;
  InvariantSeries collective;
  InvariantSeries baseline;
  bool drift_free = false;
};

struct ComparisonReport {
  std::vector<InvariantComparison> invariants;
  DriftThresholds thresholds;

  bool all_drift_free() const;
};

/// Maps every sample of a phase-space trajectory through M+/-.
Trajectory map_to_dual(const LieAlgebra& a, const Trajectory& phase,
                       BracketSign s);

/// Compares h and every Casimir of `ham` along a collective run (phase or
/// already-mapped dual trajectory) and a direct Lie-Poisson baseline.
/// Throws ContractViolation when the time grids differ.
ComparisonReport compare_runs(const LieAlgebra& a, BracketSign s,
                              const Trajectory& collective,
                              const Trajectory& baseline,
                              const HamiltonianDef& ham,
                              const DriftThresholds& thresholds = {});

/// Shortest round-trip decimal (17 significant digits).
std::string format_double(double value);

/// Header `t,<labels...>` followed by one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<std::string>& labels);

/// Header `t,<name>_relerr,...`; all series must share a time grid. Series
/// truncated early are padded with empty cells.
void write_series_csv(std::ostream& out,
                      const std::vector<InvariantSeries>& series);

}  // namespace clebsch
