#include "dislab/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "dislab/error.hpp"
#include "dislab/solver.hpp"

namespace dislab {

EnsembleRun run_ensemble(const DataTriple& data, const GasLaw& law, const SchemeSpec& scheme,
                         const std::vector<double>& nu, double t_end, double sample_dt,
                         std::optional<double> r_override) {
  if (nu.empty()) throw DomainError("run_ensemble: needs at least one viscosity value");
  std::vector<Trajectory> members;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    SchemeSpec s = scheme;
    s.nu = nu[i];
    try {
      members.push_back(run(data, s, law, t_end, sample_dt));
    } catch (const Error& e) {
      throw Error("ensemble member " + std::to_string(i) + " (nu = " + std::to_string(nu[i]) + "): " + e.what());
    }
  }
  EnsembleEstimate est = estimate_reynolds(members, scheme.exec);
  std::vector<CompatibilitySlack> slack;
  const double tol = 1e-8 * est.average.energy_scale();
  for (double t : est.average.times()) slack.push_back(check_compatibility(est.average, est.reynolds, t, tol, r_override));
  return {std::move(members), std::move(est), std::move(slack)};
}

namespace {

std::vector<double> ladder(const ExperimentConfig& cfg) {
  return cfg.ensemble_nu.empty() ? std::vector<double>{cfg.scheme.nu} : cfg.ensemble_nu;
}

EnsembleEstimate restart(const ExperimentConfig& cfg, const Trajectory& traj, std::size_t k) {
  const DataTriple data{traj.state(k), traj.mean_energy(k)};
  const double horizon = traj.horizon() - traj.times()[k];
  if (k + 1 == traj.size()) {
    Trajectory single(cfg.law, {0.0}, {data.state0}, data.E0, {data.E0}, EnergySource::ensemble_average);
    return {ReynoldsField::zero(traj.grid(), {0.0}), std::move(single)};
  }
  return run_ensemble(data, cfg.law, cfg.scheme, ladder(cfg), horizon, cfg.sample_dt,
                      cfg.certify.tolerances.r_override)
      .estimate;
}

}  // namespace

Dt1Result dt1_demo(const ExperimentConfig& cfg) {
  const DataTriple data = initial_data(cfg);
  EnsembleEstimate base =
      run_ensemble(data, cfg.law, cfg.scheme, ladder(cfg), cfg.t_end, cfg.sample_dt).estimate;
  Trajectory traj = std::move(base.average);
  ReynoldsField reynolds = std::move(base.reynolds);
  const double delta = cfg.dt1_delta_rel * traj.energy_scale();
  std::vector<double> resets;
  for (std::size_t guard = 0; guard <= traj.size(); ++guard) {
    const auto st = stopping_time(traj, delta);
    if (!st) break;
    EnsembleEstimate cont = restart(cfg, traj, st->index);
    Trajectory next = defect_reset(traj, st->t, cont.average);
    std::vector<StressSlice> slices;
    for (std::size_t j = 0; j < st->index; ++j) slices.push_back(reynolds.slice(j));
    for (std::size_t j = 0; j < cont.reynolds.size(); ++j) slices.push_back(cont.reynolds.slice(j));
    reynolds = ReynoldsField(next.grid(), next.times(), std::move(slices));
    traj = std::move(next);
    resets.push_back(st->t);
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) worst = std::max(worst, traj.raw_defect(k));
  return {std::move(traj), std::move(reynolds), std::move(resets), delta, worst};
}

Dt2Result dt2_demo(const ExperimentConfig& cfg) {
  const DataTriple data = initial_data(cfg);
  Trajectory traj = run_ensemble(data, cfg.law, cfg.scheme, ladder(cfg), cfg.t_end, cfg.sample_dt).estimate.average;
  if (traj.size() < 2) throw DomainError("dt2-demo: needs at least two sample times");
  std::size_t k = 0;
  if (cfg.dt2_T) {
    k = traj.require_sample(*cfg.dt2_T);
  } else {
    for (std::size_t j = 1; j + 1 < traj.size(); ++j) {
      if (traj.raw_defect(j) > traj.raw_defect(k)) k = j;
    }
  }
  const double T = traj.times()[k];
  EnsembleEstimate cont = restart(cfg, traj, k);
  ImproveResult imp = improve(traj, T, cont.average);
  const bool pass = imp.order.relation == Relation::less && imp.min_gap >= 0.5 * imp.epsilon;
  return {std::move(traj), std::move(imp), T, pass};
}

Trajectory riemann_trajectory(const ExperimentConfig& cfg, bool cell_averages) {
  const InitialSpec& s = cfg.initial;
  if (s.preset != "riemann") throw DomainError("riemann: the initial preset must be 'riemann'");
  if (cfg.grid.dim() != 1) throw DomainError("riemann: exact solutions are one-dimensional");
  const RiemannData rd{s.rho_l, s.u_l, s.rho_r, s.u_r, cfg.law};
  const Axis& ax = cfg.grid.axis(0);
  const double x0 = s.x0 ? *s.x0 : 0.5 * (ax.lo + ax.hi);
  std::vector<double> times = sample_times(cfg.t_end, cfg.sample_dt);
  std::vector<FluidState> states;
  for (double t : times) {
    states.push_back(cell_averages ? average_riemann(rd, cfg.grid, x0, t) : sample_riemann(rd, cfg.grid, x0, t));
  }
  const double mean0 = integrate_energy(states.front(), cfg.law).value();
  const double e0 = cfg.E0 ? *cfg.E0 : mean0;
  std::vector<double> energy(times.size());
  double running = e0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    running = std::min(running, integrate_energy(states[k], cfg.law).value());
    energy[k] = running;
  }
  return Trajectory(cfg.law, std::move(times), std::move(states), e0, std::move(energy),
                    EnergySource::running_min_envelope);
}

}  // namespace dislab
