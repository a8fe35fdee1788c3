#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dislab/fields.hpp"
#include "dislab/trajectory.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline dislab::Grid line(int n, double lo = 0.0, double hi = 1.0,
                         dislab::Boundary b = dislab::Boundary::periodic) {
  return dislab::Grid(dislab::Axis{n, lo, hi, b});
}

inline dislab::Grid box(int nx, int ny, dislab::Boundary b = dislab::Boundary::periodic) {
  return dislab::Grid(dislab::Axis{nx, 0.0, 1.0, b}, dislab::Axis{ny, 0.0, 1.0, b});
}

inline dislab::FluidState random_state(const dislab::Grid& g, double rho_lo = 0.5, double rho_hi = 2.0,
                                       double m_max = 1.0) {
  std::vector<double> rho(g.size()), mx(g.size()), my(g.size(), 0.0);
  for (std::size_t c = 0; c < g.size(); ++c) {
    rho[c] = uniform(rho_lo, rho_hi);
    mx[c] = uniform(-m_max, m_max);
    if (g.dim() == 2) my[c] = uniform(-m_max, m_max);
  }
  return dislab::FluidState(g, rho, mx, my);
}

/// Trajectory with given fields at every sample and E = mean energy + offsets (offsets non-increasing).
inline dislab::Trajectory with_constant_fields(const dislab::FluidState& s, const dislab::GasLaw& law,
                                               std::vector<double> times, std::vector<double> energy, double e0) {
  std::vector<dislab::FluidState> states(times.size(), s);
  return dislab::Trajectory(law, std::move(times), std::move(states), e0, std::move(energy));
}

/// Random non-increasing step energy curve above `floor`.
inline std::vector<double> random_steps(std::size_t n, double start, double floor) {
  std::vector<double> e(n);
  double v = start;
  for (std::size_t k = 0; k < n; ++k) {
    if (uniform(0.0, 1.0) < 0.5) v = floor + (v - floor) * uniform(0.3, 1.0);
    e[k] = v;
  }
  return e;
}

/// Sample-for-sample equality of times, fields and energy knots.
inline bool same_trajectory(const dislab::Trajectory& a, const dislab::Trajectory& b, double tol = 1e-12) {
  if (a.size() != b.size() || std::abs(a.initial_energy() - b.initial_energy()) > tol) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a.times()[k] - b.times()[k]) > tol) return false;
    if (!(a.state(k) == b.state(k))) return false;
    if (std::abs(a.energy_after(k) - b.energy_after(k)) > tol) return false;
  }
  return true;
}

/// Times 0, h, 2h, ..., n h.
inline std::vector<double> uniform_times(std::size_t n, double h) {
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = static_cast<double>(k) * h;
  return t;
}

}  // namespace testing
