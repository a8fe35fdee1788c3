#include "dislab/eos.hpp"

#include <algorithm>
#include <string>

namespace dislab {

GasLaw::GasLaw(double a, double gamma) : a_(a), gamma_(gamma) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("pressure coefficient a must be positive, got " + std::to_string(a));
  }
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw DomainError("adiabatic exponent gamma must exceed 1, got " + std::to_string(gamma));
  }
}

ExtendedEnergy ExtendedEnergy::finite(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError("finite energy must be a nonnegative real, got " + std::to_string(value));
  }
  return ExtendedEnergy(value);
}

namespace {
void require_density(double rho, const char* what) {
  if (!(rho >= 0.0)) {
    throw DomainError(std::string(what) + ": density must be nonnegative, got " + std::to_string(rho));
  }
}
}  // namespace

double pressure(double rho, const GasLaw& law) {
  require_density(rho, "pressure");
  return law.a() * std::pow(rho, law.gamma());
}

double pressure_potential(double rho, const GasLaw& law) {
  require_density(rho, "pressure_potential");
  return law.a() / (law.gamma() - 1.0) * std::pow(rho, law.gamma());
}

double sound_speed(double rho, const GasLaw& law) {
  require_density(rho, "sound_speed");
  return std::sqrt(law.a() * law.gamma() * std::pow(rho, law.gamma() - 1.0));
}

ExtendedEnergy energy(double rho, double mx, double my, const GasLaw& law) {
  require_density(rho, "energy");
  if (!std::isfinite(rho) || !std::isfinite(mx) || !std::isfinite(my)) {
    throw DomainError("energy: non-finite state");
  }
  const double e = energy_density(rho, mx, my, law.a(), law.gamma());
  return std::isinf(e) ? ExtendedEnergy::infinite() : ExtendedEnergy::finite(e);
}

double defect_constant(int dim, const GasLaw& law, std::optional<double> override_value) {
  if (dim != 1 && dim != 2) {
    throw DomainError("defect_constant: dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (override_value) {
    if (!(*override_value > 0.0)) {
      throw DomainError("defect_constant: override must be positive");
    }
    return *override_value;
  }
  const double g = law.gamma();
  return std::min(0.5, dim * g / (g - 1.0));
}

}  // namespace dislab
