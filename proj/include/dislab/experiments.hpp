#pragma once

#include <vector>

#include "dislab/config.hpp"
#include "dislab/dissipative.hpp"
#include "dislab/trajectory.hpp"

namespace dislab {

struct EnsembleRun {
  std::vector<Trajectory> members;
  EnsembleEstimate estimate;
  std::vector<CompatibilitySlack> slack;
};

/// One solver run per viscosity value from the same data, then the ensemble estimate.
EnsembleRun run_ensemble(const DataTriple& data, const GasLaw& law, const SchemeSpec& scheme,
                         const std::vector<double>& nu, double t_end, double sample_dt,
                         std::optional<double> r_override = std::nullopt);

struct Dt1Result {
  Trajectory trajectory;
  ReynoldsField reynolds;
  std::vector<double> reset_times;
  double delta = 0.0;
  double max_defect = 0.0;
};

/// Stopping time plus defect reset, repeated until the defect stays below delta on the horizon.
Dt1Result dt1_demo(const ExperimentConfig& cfg);

struct Dt2Result {
  Trajectory original;
  ImproveResult improvement;
  double T = 0.0;
  bool pass = false;
};

/// Competitor of an ensemble average built at the sample of largest defect (or cfg.dt2_T).
Dt2Result dt2_demo(const ExperimentConfig& cfg);

/// Exact Riemann solution of the config's riemann preset at the solver's sample times.
/// Energy is the running-minimum envelope of the mean energy, capped by E0.
Trajectory riemann_trajectory(const ExperimentConfig& cfg, bool cell_averages = true);

}  // namespace dislab
