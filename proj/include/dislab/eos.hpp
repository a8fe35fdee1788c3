#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "dislab/error.hpp"

namespace dislab {

/// Isentropic pressure law p(rho) = a * rho^gamma.
class GasLaw {
 public:
  GasLaw(double a, double gamma);

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }

  friend bool operator==(const GasLaw&, const GasLaw&) = default;

 private:
  double a_;
  double gamma_;
};

/// Nonnegative energy value that may be +infinity (vacuum carrying momentum).
class ExtendedEnergy {
 public:
  static ExtendedEnergy finite(double value);
  static ExtendedEnergy infinite() noexcept { return ExtendedEnergy(std::numeric_limits<double>::infinity()); }

  [[nodiscard]] bool is_infinite() const noexcept { return std::isinf(value_); }
  [[nodiscard]] bool is_finite() const noexcept { return !is_infinite(); }
  /// Raw value; +inf when infinite.
  [[nodiscard]] double value() const noexcept { return value_; }

  friend bool operator==(const ExtendedEnergy&, const ExtendedEnergy&) = default;

 private:
  explicit ExtendedEnergy(double v) noexcept : value_(v) {}
  double value_;
};

double pressure(double rho, const GasLaw& law);
double pressure_potential(double rho, const GasLaw& law);
double sound_speed(double rho, const GasLaw& law);

ExtendedEnergy energy(double rho, double mx, double my, const GasLaw& law);
inline ExtendedEnergy energy(double rho, double mx, const GasLaw& law) { return energy(rho, mx, 0.0, law); }

/// Kernel form of `energy` for trusted inputs (rho >= 0 already checked). Returns +inf for vacuum with momentum.
inline double energy_density(double rho, double mx, double my, double a, double gamma) noexcept {
  if (rho > 0.0) {
    return 0.5 * (mx * mx + my * my) / rho + a / (gamma - 1.0) * std::pow(rho, gamma);
  }
  return (mx == 0.0 && my == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
}

/// r(d, gamma) = min{1/2, d*gamma/(gamma-1)}, or `override_value` when given.
double defect_constant(int dim, const GasLaw& law, std::optional<double> override_value = std::nullopt);

}  // namespace dislab
