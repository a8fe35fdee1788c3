#pragma once

#include <string>
#include <vector>

#include "dislab/fields.hpp"
#include "dislab/kernels.hpp"
#include "dislab/trajectory.hpp"

namespace dislab {

const char* to_string(FluxKind f) noexcept;
FluxKind flux_from_string(const std::string& s);

/// Finite-volume scheme: numerical flux, artificial viscosity nu (adds nu * dx * Laplacian) and CFL number.
struct SchemeSpec {
  FluxKind flux = FluxKind::llf;
  double nu = 0.0;
  double cfl = 0.4;
  Execution exec = Execution::parallel;

  void validate() const;
};

/// Largest admissible step: cfl / sum_axes((s_axis + 2 nu) / h_axis).
double max_stable_dt(const FluidState& state, const SchemeSpec& spec, const GasLaw& law);

/// One forward-Euler conservative update. Throws CflError or NegativeDensityError.
FluidState step(const FluidState& state, const SchemeSpec& spec, const GasLaw& law, double dt);

/// k * sample_dt for every k with k * sample_dt < t_end, followed by t_end.
std::vector<double> sample_times(double t_end, double sample_dt);

/// Adaptive CFL time stepping sampled at k * sample_dt (and t_end). The energy curve
/// is the running-minimum envelope of the mean energy, capped by E0.
Trajectory run(const DataTriple& triple, const SchemeSpec& spec, const GasLaw& law, double t_end, double sample_dt);

/// Left/right states of a 1D Riemann problem.
struct RiemannData {
  double rho_l;
  double u_l;
  double rho_r;
  double u_r;
  GasLaw law;
};

struct RiemannPoint {
  double rho;
  double u;
};

enum class WaveKind { shock, rarefaction };

/// Self-similar entropy solution of the isentropic Riemann problem.
class ExactRiemann {
 public:
  explicit ExactRiemann(const RiemannData& data);

  [[nodiscard]] double star_density() const noexcept { return rho_star_; }
  [[nodiscard]] double star_velocity() const noexcept { return u_star_; }
  [[nodiscard]] WaveKind left_wave() const noexcept { return left_; }
  [[nodiscard]] WaveKind right_wave() const noexcept { return right_; }
  /// Shock speed, or (head, tail) for a rarefaction.
  [[nodiscard]] double left_shock_speed() const noexcept { return s_left_; }
  [[nodiscard]] double right_shock_speed() const noexcept { return s_right_; }

  /// Solution at similarity coordinate xi = x / t.
  [[nodiscard]] RiemannPoint sample(double xi) const;

 private:
  RiemannData d_;
  double rho_star_ = 0.0;
  double u_star_ = 0.0;
  WaveKind left_ = WaveKind::rarefaction;
  WaveKind right_ = WaveKind::rarefaction;
  double s_left_ = 0.0;
  double s_right_ = 0.0;
};

RiemannPoint exact_riemann(const RiemannData& data, double xi);

/// Point sampling of the Riemann solution centred at x0 on grid cell centres at time t (t = 0 gives the jump).
FluidState sample_riemann(const RiemannData& data, const Grid& grid, double x0, double t);

/// Cell averages of the Riemann solution (composite midpoint with `sub` points per cell).
FluidState average_riemann(const RiemannData& data, const Grid& grid, double x0, double t, int sub = 16);

}  // namespace dislab
