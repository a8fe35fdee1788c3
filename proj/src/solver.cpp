#include "dislab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dislab {

const char* to_string(FluxKind f) noexcept { return f == FluxKind::hll ? "hll" : "llf"; }

FluxKind flux_from_string(const std::string& s) {
  if (s == "llf" || s == "local-lax-friedrichs") return FluxKind::llf;
  if (s == "hll") return FluxKind::hll;
  throw ParseError("unknown flux kind '" + s + "' (expected llf or hll)");
}

void SchemeSpec::validate() const {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("scheme: viscosity nu must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("scheme: CFL number must lie in (0, 1]");
}

double max_stable_dt(const FluidState& state, const SchemeSpec& spec, const GasLaw& law) {
  spec.validate();
  const Grid& g = state.grid();
  const auto s = kernels::max_signal_speed(spec.exec, g, kernels::view_of(state), law.a(), law.gamma());
  double rate = (s[0] + 2.0 * spec.nu) / g.dx();
  if (g.dim() == 2) rate += (s[1] + 2.0 * spec.nu) / g.dy();
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return spec.cfl / rate;
}

namespace {

FluidState advance(const FluidState& state, const SchemeSpec& spec, const GasLaw& law, double dt) {
  const Grid& g = state.grid();
  const std::size_t n = g.size();
  std::vector<double> rr(n), rx(n), ry(n);
  kernels::fv_rate(spec.exec, g, kernels::view_of(state), {law.a(), law.gamma(), spec.flux, spec.nu}, {rr, rx, ry});
  std::vector<double> rho(n), mx(n), my(n);
  const auto r0 = state.rho();
  const auto x0 = state.mx();
  const auto y0 = state.my();
  for (std::size_t c = 0; c < n; ++c) {
    rho[c] = r0[c] + dt * rr[c];
    mx[c] = x0[c] + dt * rx[c];
    my[c] = y0[c] + dt * ry[c];
    if (rho[c] < 0.0) throw NegativeDensityError(c, rho[c]);
  }
  return FluidState(g, std::move(rho), std::move(mx), std::move(my));
}

}  // namespace

FluidState step(const FluidState& state, const SchemeSpec& spec, const GasLaw& law, double dt) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
  const double bound = max_stable_dt(state, spec, law);
  if (dt > bound * (1.0 + 1e-12)) {
    throw CflError("step: dt = " + std::to_string(dt) + " exceeds the CFL bound " + std::to_string(bound));
  }
  return advance(state, spec, law, dt);
}

std::vector<double> sample_times(double t_end, double sample_dt) {
  if (!(t_end > 0.0) || !(sample_dt > 0.0)) throw DomainError("sample_times: t_end and sample_dt must be positive");
  std::vector<double> times{0.0};
  for (std::size_t k = 1;; ++k) {
    const double t = static_cast<double>(k) * sample_dt;
    if (t >= t_end * (1.0 - 1e-12)) break;
    times.push_back(t);
  }
  times.push_back(t_end);
  return times;
}

Trajectory run(const DataTriple& triple, const SchemeSpec& spec, const GasLaw& law, double t_end, double sample_dt) {
  spec.validate();
  if (!(t_end > 0.0) || !(sample_dt > 0.0)) throw DomainError("run: t_end and sample_dt must be positive");
  const DataValidation check = validate_initial_data(triple, law);
  if (!check.accepted) throw DomainError("run: initial data rejected: " + check.diagnostic);

  std::vector<double> times = sample_times(t_end, sample_dt);

  std::vector<FluidState> states{triple.state0};
  FluidState current = triple.state0;
  double t = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    while (t < times[k]) {
      const double bound = max_stable_dt(current, spec, law);
      const double remaining = times[k] - t;
      if (remaining <= bound) {
        current = advance(current, spec, law, remaining);
        t = times[k];
      } else {
        current = advance(current, spec, law, bound);
        t += bound;
      }
    }
    states.push_back(current);
  }

  std::vector<double> energy(states.size());
  double running = triple.E0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    running = std::min(running, integrate_energy(states[k], law).value());
    energy[k] = running;
  }
  return Trajectory(law, std::move(times), std::move(states), triple.E0, std::move(energy),
                    EnergySource::running_min_envelope);
}

}  // namespace dislab
