#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dislab/eos.hpp"

namespace dislab {

enum class Boundary { reflective, periodic };

const char* to_string(Boundary b) noexcept;
Boundary boundary_from_string(const std::string& s);

/// One axis of a box domain [lo, hi] split into `cells` equal cells.
struct Axis {
  int cells = 0;
  double lo = 0.0;
  double hi = 1.0;
  Boundary boundary = Boundary::reflective;

  [[nodiscard]] double spacing() const noexcept { return (hi - lo) / cells; }
  [[nodiscard]] double center(int i) const noexcept { return lo + (i + 0.5) * spacing(); }
  [[nodiscard]] double length() const noexcept { return hi - lo; }

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Structured 1D interval or 2D rectangle. Cells are indexed x-fastest: c = i + nx * j.
class Grid {
 public:
  explicit Grid(Axis x);
  Grid(Axis x, Axis y);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const Axis& axis(int k) const noexcept { return axes_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] int nx() const noexcept { return axes_[0].cells; }
  [[nodiscard]] int ny() const noexcept { return dim_ == 2 ? axes_[1].cells : 1; }
  [[nodiscard]] double dx() const noexcept { return axes_[0].spacing(); }
  [[nodiscard]] double dy() const noexcept { return dim_ == 2 ? axes_[1].spacing() : 1.0; }
  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
  }
  [[nodiscard]] double cell_volume() const noexcept { return dx() * dy(); }
  [[nodiscard]] double volume() const noexcept;
  [[nodiscard]] double min_spacing() const noexcept;
  [[nodiscard]] std::size_t index(int i, int j = 0) const noexcept {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx()) * static_cast<std::size_t>(j);
  }
  [[nodiscard]] double x(std::size_t c) const noexcept { return axes_[0].center(static_cast<int>(c % nx())); }
  [[nodiscard]] double y(std::size_t c) const noexcept {
    return dim_ == 2 ? axes_[1].center(static_cast<int>(c / nx())) : 0.0;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  std::array<Axis, 2> axes_;
};

/// Cell-averaged density and momentum at one time instant. In 1D `my` is identically zero.
class FluidState {
 public:
  FluidState(Grid grid, std::vector<double> rho, std::vector<double> mx, std::vector<double> my = {});

  static FluidState constant(const Grid& grid, double rho, double mx, double my = 0.0);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t size() const noexcept { return rho_.size(); }
  [[nodiscard]] std::span<const double> rho() const noexcept { return rho_; }
  [[nodiscard]] std::span<const double> mx() const noexcept { return mx_; }
  [[nodiscard]] std::span<const double> my() const noexcept { return my_; }

  /// First cell with rho = 0 and m != 0, if any.
  [[nodiscard]] std::optional<std::size_t> vacuum_violation() const noexcept;

  [[nodiscard]] double total_mass() const noexcept;
  [[nodiscard]] std::array<double, 2> total_momentum() const noexcept;

  /// Relative L1 distance ||a-b||_1 / max(||a||_1, tiny) over (rho, m).
  [[nodiscard]] double relative_l1_distance(const FluidState& other) const;

  friend bool operator==(const FluidState&, const FluidState&) = default;

 private:
  Grid grid_;
  std::vector<double> rho_;
  std::vector<double> mx_;
  std::vector<double> my_;
};

/// Initial data (rho0, m0, E0).
struct DataTriple {
  FluidState state0;
  double E0;
};

/// Midpoint-rule mean energy; +inf iff some cell is a vacuum carrying momentum.
ExtendedEnergy integrate_energy(const FluidState& state, const GasLaw& law);

struct DataValidation {
  bool accepted = false;
  double mean_energy = 0.0;
  double slack = 0.0;  ///< E0 - mean energy
  std::string diagnostic;
};

double default_data_tolerance(double E0) noexcept;

DataValidation validate_initial_data(const DataTriple& triple, const GasLaw& law,
                                     std::optional<double> tol_data = std::nullopt);

}  // namespace dislab
