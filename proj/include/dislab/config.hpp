#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dislab/dissipative.hpp"
#include "dislab/selection.hpp"
#include "dislab/solver.hpp"

namespace dislab {

struct InitialSpec {
  std::string preset = "constant";  ///< constant | acoustic | riemann | random | file
  // constant
  double rho = 1.0;
  double mx = 0.0;
  double my = 0.0;
  // acoustic simple wave
  double amplitude = 1e-3;
  int mode = 1;
  // riemann (jump normal to x)
  double rho_l = 1.0;
  double u_l = 0.0;
  double rho_r = 0.5;
  double u_r = 0.0;
  std::optional<double> x0;
  // random
  double rho_min = 0.5;
  double rho_max = 2.0;
  double m_max = 1.0;
  // file
  std::filesystem::path file;
};

struct SelectionSettings {
  F2Variant variant = F2Variant::full;
  std::optional<double> q;
  double tie_rel = 1e-9;
  std::vector<double> lambda_grid = default_lambda_grid();
  double tol = 1e-12;
};

struct CertifySettings {
  CertifyTolerances tolerances;
  /// Residual tolerance becomes residual + residual_per_dx * dx * max(1, E0).
  double residual_per_dx = 1.0;
};

/// Experiment description read from a JSON document with a strict schema.
struct ExperimentConfig {
  Grid grid{Axis{64, 0.0, 1.0, Boundary::reflective}};
  GasLaw law{1.0, 1.4};
  SchemeSpec scheme;
  double t_end = 0.5;
  double sample_dt = 0.05;
  InitialSpec initial;
  std::optional<double> E0;
  std::vector<double> ensemble_nu;
  SelectionSettings selection;
  CertifySettings certify;
  double dt1_delta_rel = 0.05;
  std::optional<double> dt2_T;
  std::uint64_t seed = 0;
};

ExperimentConfig parse_config(const std::string& text, const std::string& origin,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Initial fields and E0 (E0 defaults to the mean energy of the fields).
DataTriple initial_data(const ExperimentConfig& cfg);

CertifyTolerances scaled_tolerances(const CertifySettings& s, const Grid& grid, double energy_scale);

}  // namespace dislab
