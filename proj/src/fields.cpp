#include "dislab/fields.hpp"

#include <algorithm>
#include <cmath>

namespace dislab {

const char* to_string(Boundary b) noexcept { return b == Boundary::periodic ? "periodic" : "reflective"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "reflective") return Boundary::reflective;
  throw ParseError("unknown boundary kind '" + s + "' (expected reflective or periodic)");
}

namespace {
void check_axis(const Axis& a, const char* name) {
  if (a.cells < 2) {
    throw DomainError(std::string("grid axis ") + name + " needs at least 2 cells");
  }
  if (!(a.hi > a.lo) || !std::isfinite(a.lo) || !std::isfinite(a.hi)) {
    throw DomainError(std::string("grid axis ") + name + " has empty or non-finite bounds");
  }
}
}  // namespace

Grid::Grid(Axis x) : dim_(1), axes_{x, Axis{1, 0.0, 1.0, Boundary::reflective}} { check_axis(x, "x"); }

Grid::Grid(Axis x, Axis y) : dim_(2), axes_{x, y} {
  check_axis(x, "x");
  check_axis(y, "y");
}

double Grid::volume() const noexcept { return dim_ == 2 ? axes_[0].length() * axes_[1].length() : axes_[0].length(); }

double Grid::min_spacing() const noexcept { return dim_ == 2 ? std::min(dx(), dy()) : dx(); }

FluidState::FluidState(Grid grid, std::vector<double> rho, std::vector<double> mx, std::vector<double> my)
    : grid_(std::move(grid)), rho_(std::move(rho)), mx_(std::move(mx)), my_(std::move(my)) {
  const std::size_t n = grid_.size();
  if (my_.empty()) my_.assign(n, 0.0);
  if (rho_.size() != n || mx_.size() != n || my_.size() != n) {
    throw MismatchError("FluidState: field sizes do not match the grid (" + std::to_string(n) + " cells)");
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (!std::isfinite(rho_[c]) || !std::isfinite(mx_[c]) || !std::isfinite(my_[c])) {
      throw DomainError("FluidState: non-finite value in cell " + std::to_string(c));
    }
    if (rho_[c] < 0.0) {
      throw DomainError("FluidState: negative density in cell " + std::to_string(c));
    }
    if (grid_.dim() == 1 && my_[c] != 0.0) {
      throw DomainError("FluidState: 1D state with nonzero y-momentum");
    }
  }
}

FluidState FluidState::constant(const Grid& grid, double rho, double mx, double my) {
  const std::size_t n = grid.size();
  return FluidState(grid, std::vector<double>(n, rho), std::vector<double>(n, mx),
                    std::vector<double>(n, grid.dim() == 2 ? my : 0.0));
}

std::optional<std::size_t> FluidState::vacuum_violation() const noexcept {
  for (std::size_t c = 0; c < rho_.size(); ++c) {
    if (rho_[c] == 0.0 && (mx_[c] != 0.0 || my_[c] != 0.0)) return c;
  }
  return std::nullopt;
}

double FluidState::total_mass() const noexcept {
  double s = 0.0;
  for (double r : rho_) s += r;
  return s * grid_.cell_volume();
}

std::array<double, 2> FluidState::total_momentum() const noexcept {
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t c = 0; c < rho_.size(); ++c) {
    sx += mx_[c];
    sy += my_[c];
  }
  return {sx * grid_.cell_volume(), sy * grid_.cell_volume()};
}

double FluidState::relative_l1_distance(const FluidState& other) const {
  if (!(grid_ == other.grid_)) {
    throw MismatchError("relative_l1_distance: states live on different grids");
  }
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t c = 0; c < rho_.size(); ++c) {
    diff += std::abs(rho_[c] - other.rho_[c]) + std::abs(mx_[c] - other.mx_[c]) + std::abs(my_[c] - other.my_[c]);
    scale += std::abs(rho_[c]) + std::abs(mx_[c]) + std::abs(my_[c]);
  }
  if (scale == 0.0) return diff;
  return diff / scale;
}

ExtendedEnergy integrate_energy(const FluidState& state, const GasLaw& law) {
  const auto rho = state.rho();
  const auto mx = state.mx();
  const auto my = state.my();
  double sum = 0.0;
  for (std::size_t c = 0; c < state.size(); ++c) {
    const double e = energy_density(rho[c], mx[c], my[c], law.a(), law.gamma());
    if (std::isinf(e)) return ExtendedEnergy::infinite();
    sum += e;
  }
  return ExtendedEnergy::finite(sum * state.grid().cell_volume());
}

double default_data_tolerance(double E0) noexcept { return 1e-12 * std::max(1.0, std::abs(E0)); }

DataValidation validate_initial_data(const DataTriple& triple, const GasLaw& law, std::optional<double> tol_data) {
  DataValidation report;
  const double tol = tol_data.value_or(default_data_tolerance(triple.E0));
  if (auto cell = triple.state0.vacuum_violation()) {
    report.mean_energy = std::numeric_limits<double>::infinity();
    report.slack = -std::numeric_limits<double>::infinity();
    report.diagnostic = "infinite energy: vacuum carrying momentum in cell " + std::to_string(*cell);
    return report;
  }
  if (!(triple.E0 >= 0.0) || !std::isfinite(triple.E0)) {
    report.diagnostic = "E0 must be a finite nonnegative number";
    return report;
  }
  const double mean = integrate_energy(triple.state0, law).value();
  report.mean_energy = mean;
  report.slack = triple.E0 - mean;
  report.accepted = mean <= triple.E0 + tol;
  if (!report.accepted) {
    report.diagnostic = "mean energy " + std::to_string(mean) + " exceeds E0 " + std::to_string(triple.E0);
  }
  return report;
}

}  // namespace dislab
