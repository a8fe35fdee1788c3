#include "dislab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dislab {

const char* to_string(EnergySource s) noexcept {
  switch (s) {
    case EnergySource::supplied: return "supplied";
    case EnergySource::running_min_envelope: return "running-min envelope";
    case EnergySource::ensemble_average: return "ensemble average";
    case EnergySource::derived: return "derived";
  }
  return "supplied";
}

EnergySource energy_source_from_string(const std::string& s) {
  if (s == "supplied") return EnergySource::supplied;
  if (s == "running-min envelope") return EnergySource::running_min_envelope;
  if (s == "ensemble average") return EnergySource::ensemble_average;
  if (s == "derived") return EnergySource::derived;
  throw ParseError("unknown energy source '" + s + "'");
}

Trajectory::Trajectory(GasLaw law, std::vector<double> times, std::vector<FluidState> states, double initial_energy,
                       std::vector<double> energy, EnergySource source)
    : law_(law),
      times_(std::move(times)),
      states_(std::move(states)),
      initial_energy_(initial_energy),
      energy_(std::move(energy)),
      source_(source) {
  if (times_.empty()) throw DomainError("Trajectory: needs at least one sample");
  if (states_.size() != times_.size() || energy_.size() != times_.size()) {
    throw MismatchError("Trajectory: times, states and energy knots must have equal length");
  }
  if (times_.front() != 0.0) throw DomainError("Trajectory: first sample time must be 0");
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) throw DomainError("Trajectory: sample times must be strictly increasing");
  }
  for (const FluidState& s : states_) {
    if (!(s.grid() == states_.front().grid())) throw MismatchError("Trajectory: states on different grids");
  }
  if (!std::isfinite(initial_energy_)) throw DomainError("Trajectory: E(0) must be finite");
  for (double e : energy_) {
    if (std::isnan(e)) throw DomainError("Trajectory: NaN in energy curve");
  }
  mean_energy_.reserve(states_.size());
  for (const FluidState& s : states_) mean_energy_.push_back(integrate_energy(s, law_).value());
}

Trajectory Trajectory::checked(GasLaw law, std::vector<double> times, std::vector<FluidState> states,
                               double initial_energy, std::vector<double> energy, EnergySource source) {
  Trajectory t(law, std::move(times), std::move(states), initial_energy, std::move(energy), source);
  t.require_invariants();
  return t;
}

double Trajectory::energy_at(double t) const {
  if (t <= 0.0) return initial_energy_;
  // first k with t_k >= t; value on (t_{k-1}, t_k] is knot k-1
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return energy_.back();
  return energy_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

std::optional<std::size_t> Trajectory::sample_index(double t) const noexcept {
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  const auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
  if (it != times_.end() && std::abs(*it - t) <= tol) return static_cast<std::size_t>(it - times_.begin());
  return std::nullopt;
}

std::size_t Trajectory::require_sample(double t) const {
  if (auto k = sample_index(t)) return *k;
  throw DomainError("time " + std::to_string(t) + " is not a sample time of the trajectory");
}

double Trajectory::energy_scale() const noexcept { return std::max(1.0, std::abs(initial_energy_)); }

std::vector<InvariantViolation> Trajectory::violations(double tol_rel) const {
  std::vector<InvariantViolation> out;
  const double tol = tol_rel * energy_scale();
  if (energy_.front() > initial_energy_ + tol) {
    out.push_back({"energy increases after t = 0", 0, energy_.front() - initial_energy_});
  }
  for (std::size_t k = 1; k < energy_.size(); ++k) {
    if (energy_[k] > energy_[k - 1] + tol) {
      out.push_back({"energy increases between samples", k, energy_[k] - energy_[k - 1]});
    }
  }
  for (std::size_t k = 0; k < energy_.size(); ++k) {
    if (energy_[k] < 0.0) out.push_back({"negative total energy", k, energy_[k]});
    if (std::isinf(mean_energy_[k])) {
      out.push_back({"vacuum carrying momentum", k, std::numeric_limits<double>::infinity()});
    } else if (energy_[k] < mean_energy_[k] - tol) {
      out.push_back({"total energy below mean energy", k, mean_energy_[k] - energy_[k]});
    }
  }
  return out;
}

void Trajectory::require_invariants(double tol_rel) const {
  const auto v = violations(tol_rel);
  if (!v.empty()) {
    throw DomainError("Trajectory invariant violated: " + v.front().what + " at sample " +
                      std::to_string(v.front().index) + " (amount " + std::to_string(v.front().amount) + ")");
  }
}

Trajectory Trajectory::with_energy(double initial_energy, std::vector<double> energy, EnergySource source) const {
  return Trajectory(law_, times_, states_, initial_energy, std::move(energy), source);
}

bool same_discretization(const Trajectory& u, const Trajectory& v) noexcept {
  return u.grid() == v.grid() && u.law() == v.law() && u.times() == v.times();
}

void require_same_discretization(const Trajectory& u, const Trajectory& v, const char* where) {
  if (!same_discretization(u, v)) {
    throw MismatchError(std::string(where) + ": trajectories differ in grid, law or sample times");
  }
}

namespace {

/// int_a^b e^{-lambda t} dt computed without cancellation.
double exp_segment(double a, double b, double lambda) {
  return std::exp(-lambda * a) * (-std::expm1(-lambda * (b - a))) / lambda;
}

}  // namespace

double piecewise_laplace_prefix(std::span<const double> times, std::span<const double> values, double lambda,
                                std::size_t upto) {
  double sum = 0.0;
  for (std::size_t k = 0; k < upto; ++k) sum += values[k] * exp_segment(times[k], times[k + 1], lambda);
  return sum;
}

double piecewise_laplace(std::span<const double> times, std::span<const double> values, double lambda) {
  const std::size_t n = times.size();
  return piecewise_laplace_prefix(times, values, lambda, n - 1) +
         values[n - 1] * std::exp(-lambda * times[n - 1]) / lambda;
}

double max_trajectory_exponent(const GasLaw& law) noexcept { return 2.0 * law.gamma() / (law.gamma() + 1.0); }

void require_trajectory_exponent(double q, const GasLaw& law) {
  const double qmax = max_trajectory_exponent(law);
  if (!(q > 1.0) || q > qmax * (1.0 + 1e-15)) {
    throw DomainError("exponent q = " + std::to_string(q) + " outside (1, " + std::to_string(qmax) + "]");
  }
}

double density_q_norm(const FluidState& s, double q) {
  double sum = 0.0;
  for (double r : s.rho()) sum += std::pow(std::abs(r), q);
  return sum * s.grid().cell_volume();
}

double momentum_q_norm(const FluidState& s, double q) {
  double sum = 0.0;
  const auto mx = s.mx();
  const auto my = s.my();
  for (std::size_t c = 0; c < s.size(); ++c) sum += std::pow(std::hypot(mx[c], my[c]), q);
  return sum * s.grid().cell_volume();
}

double weighted_norm(const Trajectory& traj, double q) {
  require_trajectory_exponent(q, traj.law());
  std::vector<double> density(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    density[k] = density_q_norm(traj.state(k), q) + momentum_q_norm(traj.state(k), q) +
                 std::pow(std::abs(traj.energy_after(k)), q);
  }
  return std::pow(piecewise_laplace(traj.times(), density, 1.0), 1.0 / q);
}

Trajectory shift(const Trajectory& traj, double T) {
  const std::size_t k0 = traj.require_sample(T);
  const double t0 = traj.times()[k0];
  std::vector<double> times;
  std::vector<FluidState> states;
  std::vector<double> energy;
  for (std::size_t k = k0; k < traj.size(); ++k) {
    times.push_back(k == k0 ? 0.0 : traj.times()[k] - t0);
    states.push_back(traj.state(k));
    energy.push_back(traj.energy_after(k));
  }
  return Trajectory(traj.law(), std::move(times), std::move(states), traj.energy_before(k0), std::move(energy),
                    traj.energy_source());
}

Trajectory concatenate(const Trajectory& u, const Trajectory& v, double T, double tol_match) {
  const std::size_t k = u.require_sample(T);
  if (!(u.grid() == v.grid()) || !(u.law() == v.law())) {
    throw MismatchError("concatenate: trajectories live on different grids or gas laws");
  }
  const double gap = u.state(k).relative_l1_distance(v.state(0));
  if (gap > tol_match) {
    throw MismatchError("concatenate: fields of the continuation do not match the state at T (relative L1 gap " +
                        std::to_string(gap) + ")");
  }
  const double tol = tol_match * u.energy_scale();
  const double lo = u.mean_energy(k);
  const double hi = u.energy_before(k);
  const double e2 = v.initial_energy();
  if (e2 < lo - tol || e2 > hi + tol) {
    throw DomainError("concatenate: continuation energy " + std::to_string(e2) + " outside the window [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const double t0 = u.times()[k];
  std::vector<double> times(u.times().begin(), u.times().begin() + static_cast<std::ptrdiff_t>(k) + 1);
  std::vector<FluidState> states(u.states().begin(), u.states().begin() + static_cast<std::ptrdiff_t>(k) + 1);
  std::vector<double> energy(u.energy().begin(), u.energy().begin() + static_cast<std::ptrdiff_t>(k));
  energy.push_back(v.energy_after(0));
  for (std::size_t j = 1; j < v.size(); ++j) {
    times.push_back(t0 + v.times()[j]);
    states.push_back(v.state(j));
    energy.push_back(v.energy_after(j));
  }
  const EnergySource src = u.energy_source() == v.energy_source() ? u.energy_source() : EnergySource::derived;
  return Trajectory::checked(u.law(), std::move(times), std::move(states), u.initial_energy(), std::move(energy),
                             src);
}

std::pair<Trajectory, ReynoldsField> convex_combine(const Trajectory& u, const Trajectory& v, double lambda,
                                                     Execution exec) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("convex_combine: lambda must lie in [0, 1]");
  require_same_discretization(u, v, "convex_combine");
  if (u.state(0).relative_l1_distance(v.state(0)) > 1e-9 ||
      std::abs(u.initial_energy() - v.initial_energy()) > 1e-9 * u.energy_scale()) {
    throw MismatchError("convex_combine: trajectories do not share initial data");
  }
  const Grid& g = u.grid();
  const double weights[2] = {lambda, 1.0 - lambda};
  std::vector<FluidState> states;
  std::vector<StressSlice> slices;
  std::vector<double> energy(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const kernels::ConservedView members[2] = {kernels::view_of(u.state(k)), kernels::view_of(v.state(k))};
    std::vector<double> rho(g.size()), mx(g.size()), my(g.size());
    StressSlice s(g.size());
    kernels::reynolds_stress(exec, g, members, weights, u.law().a(), u.law().gamma(), {rho, mx, my},
                             {s.xx, s.xy, s.yy});
    states.emplace_back(g, std::move(rho), std::move(mx), std::move(my));
    slices.push_back(std::move(s));
    energy[k] = lambda * u.energy_after(k) + (1.0 - lambda) * v.energy_after(k);
  }
  const double e0 = lambda * u.initial_energy() + (1.0 - lambda) * v.initial_energy();
  Trajectory combined = Trajectory::checked(u.law(), u.times(), std::move(states), e0, std::move(energy),
                                            EnergySource::derived);
  return {std::move(combined), ReynoldsField(g, u.times(), std::move(slices))};
}

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::less: return "less";
    case Relation::greater: return "greater";
    case Relation::equal: return "equal";
    case Relation::incomparable: return "incomparable";
  }
  return "incomparable";
}

Relation mirror(Relation r) noexcept {
  if (r == Relation::less) return Relation::greater;
  if (r == Relation::greater) return Relation::less;
  return r;
}

namespace {

struct EnergyTolerances {
  double eq;
  double strict;
};

EnergyTolerances energy_tolerances(const Trajectory& u, const Trajectory& v, const OrderTolerances& tol) {
  const double scale = std::max(u.energy_scale(), v.energy_scale());
  return {tol.eq_rel * scale, tol.strict_rel * scale};
}

}  // namespace

OrderResult compare_admissible(const Trajectory& u, const Trajectory& v, const OrderTolerances& tol) {
  if (u.times() != v.times()) throw MismatchError("compare_admissible: sample times differ");
  const auto [eq, strict] = energy_tolerances(u, v, tol);
  double max_d = u.initial_energy() - v.initial_energy();
  double min_d = max_d;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double d = u.energy_after(k) - v.energy_after(k);
    max_d = std::max(max_d, d);
    min_d = std::min(min_d, d);
  }
  OrderResult res;
  if (std::max(std::abs(max_d), std::abs(min_d)) <= eq) {
    res.relation = Relation::equal;
  } else if (max_d <= eq && min_d < -strict) {
    res.relation = Relation::less;
  } else if (min_d >= -eq && max_d > strict) {
    res.relation = Relation::greater;
  } else {
    res.relation = Relation::incomparable;
  }
  return res;
}

OrderResult compare_local(const Trajectory& u, const Trajectory& v, const OrderTolerances& tol) {
  require_same_discretization(u, v, "compare_local");
  const auto [eq, strict] = energy_tolerances(u, v, tol);
  const auto& t = u.times();
  const std::size_t n = u.size();
  OrderResult res;
  if (u.state(0).relative_l1_distance(v.state(0)) > tol.eq_rel ||
      std::abs(u.initial_energy() - v.initial_energy()) > eq) {
    return res;  // no common prefix
  }
  // Invariant: states 0..j and E on [0, t_j] agree.
  std::size_t j = 0;
  while (j + 1 < n && std::abs(u.energy_after(j) - v.energy_after(j)) <= eq &&
         u.state(j + 1).relative_l1_distance(v.state(j + 1)) <= tol.eq_rel) {
    ++j;
  }
  const double d = u.energy_after(j) - v.energy_after(j);
  if (std::abs(d) <= eq) {
    res.relation = (j + 1 == n) ? Relation::equal : Relation::incomparable;
    return res;
  }
  if (std::abs(d) <= strict) return res;
  const double sign = d < 0.0 ? 1.0 : -1.0;
  std::size_t last = j;
  while (last + 1 < n && sign * (v.energy_after(last + 1) - u.energy_after(last + 1)) > strict) ++last;
  double end = 0.0;
  if (last + 1 < n) {
    end = t[last + 1];
  } else {
    const double step = n > 1 ? t[n - 1] - t[n - 2] : 1.0;
    end = t[n - 1] + step;
  }
  res.relation = d < 0.0 ? Relation::less : Relation::greater;
  res.witness = Window{t[j], end - t[j]};
  res.junction = j;
  return res;
}

std::optional<SampleTime> stopping_time(const Trajectory& traj, double delta) {
  if (!(delta > 0.0)) throw DomainError("stopping_time: delta must be positive");
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.raw_defect(k) > delta) return SampleTime{k, traj.times()[k]};
  }
  return std::nullopt;
}

Trajectory defect_reset(const Trajectory& traj, double T, const Trajectory& continuation, double tol_match) {
  const std::size_t k = traj.require_sample(T);
  const double mean = traj.mean_energy(k);
  if (std::abs(continuation.initial_energy() - mean) > tol_match * traj.energy_scale()) {
    throw DomainError("defect_reset: continuation must start with E(0) equal to the mean energy at T");
  }
  return concatenate(traj, continuation, T, tol_match);
}

ImproveResult improve(const Trajectory& traj, double T, const Trajectory& continuation, const OrderTolerances& tol) {
  const std::size_t k = traj.require_sample(T);
  const double eps = traj.raw_defect(k);
  if (eps <= tol.strict_rel * traj.energy_scale()) {
    throw DomainError("improve: nothing to improve, energy defect at T is " + std::to_string(eps));
  }
  Trajectory competitor = defect_reset(traj, T, continuation);
  OrderResult order = compare_local(competitor, traj, tol);

  const auto& t = traj.times();
  const std::size_t n = traj.size();
  const double threshold = traj.energy_after(k) - 0.5 * eps;
  std::size_t last = k;
  while (last + 1 < n && traj.energy_after(last + 1) > threshold) ++last;
  const double d7_end = last + 1 < n ? t[last + 1] : t[n - 1] + (n > 1 ? t[n - 1] - t[n - 2] : 1.0);

  Window window{t[k], d7_end - t[k]};
  if (order.witness) window.delta = std::min(window.delta, order.witness->start + order.witness->delta - t[k]);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t l = k; l < n && (l == k || t[l] < window.start + window.delta); ++l) {
    gap = std::min(gap, traj.energy_after(l) - competitor.energy_after(l));
  }
  return ImproveResult{std::move(competitor), order, eps, gap, window};
}

std::pair<Trajectory, Trajectory> min_energy_merge(const Trajectory& u, const Trajectory& v, double T,
                                                   const OrderTolerances& tol) {
  require_same_discretization(u, v, "min_energy_merge");
  const std::size_t k = u.require_sample(T);
  for (std::size_t j = k; j < u.size(); ++j) {
    if (u.state(j).relative_l1_distance(v.state(j)) > tol.eq_rel) {
      throw MismatchError("min_energy_merge: fields differ at sample " + std::to_string(j) + " after T");
    }
  }
  std::vector<double> eu = u.energy();
  std::vector<double> ev = v.energy();
  for (std::size_t j = k; j < u.size(); ++j) {
    const double m = std::min(eu[j], ev[j]);
    eu[j] = m;
    ev[j] = m;
  }
  double e0u = u.initial_energy();
  double e0v = v.initial_energy();
  if (k == 0) {
    e0u = e0v = std::min(e0u, e0v);
  }
  Trajectory mu = Trajectory::checked(u.law(), u.times(), u.states(), e0u, std::move(eu), EnergySource::derived);
  Trajectory mv = Trajectory::checked(v.law(), v.times(), v.states(), e0v, std::move(ev), EnergySource::derived);
  return {std::move(mu), std::move(mv)};
}

std::pair<ReynoldsField, ReynoldsField> merge_reynolds(const Trajectory& u, const ReynoldsField& ru,
                                                       const Trajectory& v, const ReynoldsField& rv, double T) {
  require_same_discretization(u, v, "merge_reynolds");
  if (ru.times() != u.times() || rv.times() != v.times()) {
    throw MismatchError("merge_reynolds: Reynolds fields not sampled on the trajectory times");
  }
  const std::size_t k = u.require_sample(T);
  std::vector<StressSlice> su, sv;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j < k) {
      su.push_back(ru.slice(j));
      sv.push_back(rv.slice(j));
    } else {
      // E_u > E_v selects the stress of v, otherwise that of u.
      const StressSlice& pick = u.energy_after(j) > v.energy_after(j) ? rv.slice(j) : ru.slice(j);
      su.push_back(pick);
      sv.push_back(pick);
    }
  }
  return {ReynoldsField(u.grid(), u.times(), std::move(su)), ReynoldsField(v.grid(), v.times(), std::move(sv))};
}

}  // namespace dislab
