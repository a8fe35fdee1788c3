#pragma once

// Data-parallel inner loops. Every kernel has a serial reference version and an
// OpenMP version with identical signatures; the two must agree bit-for-bit
// (cell-local arithmetic only, max-reductions only).

#include <array>
#include <span>
#include <vector>

#include "dislab/fields.hpp"

namespace dislab {

enum class Execution { serial, parallel };

enum class FluxKind { llf, hll };

namespace kernels {

struct ConservedView {
  std::span<const double> rho;
  std::span<const double> mx;
  std::span<const double> my;
};

struct ConservedSpan {
  std::span<double> rho;
  std::span<double> mx;
  std::span<double> my;
};

struct FluxParams {
  double a;
  double gamma;
  FluxKind flux;
  double nu;  ///< artificial viscosity: adds nu * dx * Laplacian(U)
};

/// Per-axis maximum of |u_axis| + c over all cells.
using SignalSpeeds = std::array<double, 2>;

/// Symmetric 2x2 stress stored as (xx, xy, yy) arrays.
struct StressSpan {
  std::span<double> xx;
  std::span<double> xy;
  std::span<double> yy;
};

namespace serial {
SignalSpeeds max_signal_speed(const Grid& grid, ConservedView u, double a, double gamma);
/// rate = -div F(U) + viscous terms, per unit time.
void fv_rate(const Grid& grid, ConservedView u, const FluxParams& params, ConservedSpan rate);
/// Reynolds stress of a convex combination of members and the combined fields.
/// `weights` must be nonnegative and sum to one.
void reynolds_stress(const Grid& grid, std::span<const ConservedView> members, std::span<const double> weights,
                     double a, double gamma, ConservedSpan mean, StressSpan stress);
}  // namespace serial

namespace omp {
SignalSpeeds max_signal_speed(const Grid& grid, ConservedView u, double a, double gamma);
void fv_rate(const Grid& grid, ConservedView u, const FluxParams& params, ConservedSpan rate);
void reynolds_stress(const Grid& grid, std::span<const ConservedView> members, std::span<const double> weights,
                     double a, double gamma, ConservedSpan mean, StressSpan stress);
}  // namespace omp

inline SignalSpeeds max_signal_speed(Execution ex, const Grid& grid, ConservedView u, double a, double gamma) {
  return ex == Execution::parallel ? omp::max_signal_speed(grid, u, a, gamma)
                                   : serial::max_signal_speed(grid, u, a, gamma);
}

inline void fv_rate(Execution ex, const Grid& grid, ConservedView u, const FluxParams& params, ConservedSpan rate) {
  if (ex == Execution::parallel) {
    omp::fv_rate(grid, u, params, rate);
  } else {
    serial::fv_rate(grid, u, params, rate);
  }
}

inline void reynolds_stress(Execution ex, const Grid& grid, std::span<const ConservedView> members,
                            std::span<const double> weights, double a, double gamma, ConservedSpan mean,
                            StressSpan stress) {
  if (ex == Execution::parallel) {
    omp::reynolds_stress(grid, members, weights, a, gamma, mean, stress);
  } else {
    serial::reynolds_stress(grid, members, weights, a, gamma, mean, stress);
  }
}

inline ConservedView view_of(const FluidState& s) noexcept { return {s.rho(), s.mx(), s.my()}; }

}  // namespace kernels
}  // namespace dislab
