#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dislab/kernels.hpp"
#include "dislab/reynolds.hpp"
#include "dislab/trajectory.hpp"

namespace dislab {

/// Quartic bump (1 - s^2)^2 with s = (x - center) / half_width; C^1 with compact support.
struct Bump {
  double center = 0.0;
  double half_width = 1.0;

  [[nodiscard]] double value(double x) const noexcept;
  [[nodiscard]] double derivative(double x) const noexcept;
  /// Exact integral over [a, b].
  [[nodiscard]] double integral(double a, double b) const noexcept;
  [[nodiscard]] double lo() const noexcept { return center - half_width; }
  [[nodiscard]] double hi() const noexcept { return center + half_width; }
};

/// Separable test function theta(t) * psi_x(x) * psi_y(y); vector-valued members point along one axis.
class TestFunction {
 public:
  static TestFunction scalar(Bump time, Bump x, std::optional<Bump> y = std::nullopt);
  static TestFunction vector(Bump time, Bump x, std::optional<Bump> y, int component);

  [[nodiscard]] bool is_vector() const noexcept { return component_ >= 0; }
  [[nodiscard]] int component() const noexcept { return component_; }
  [[nodiscard]] const Bump& time() const noexcept { return time_; }
  [[nodiscard]] const Bump& space_x() const noexcept { return x_; }
  [[nodiscard]] const std::optional<Bump>& space_y() const noexcept { return y_; }

  [[nodiscard]] double value(double t, double x, double y = 0.0) const noexcept;
  [[nodiscard]] double dt(double t, double x, double y = 0.0) const noexcept;
  [[nodiscard]] std::array<double, 2> grad(double t, double x, double y = 0.0) const noexcept;

  /// Throws DomainError unless the support lies in (0, horizon] x interior(grid) with a one-cell margin.
  void require_support(const Grid& grid, double horizon) const;

  [[nodiscard]] std::string describe() const;

 private:
  TestFunction(Bump time, Bump x, std::optional<Bump> y, int component)
      : time_(time), x_(x), y_(y), component_(component) {}
  Bump time_;
  Bump x_;
  std::optional<Bump> y_;
  int component_;
};

/// Multiscale dictionary: 3 dyadic scales x 8 centres per scale.
std::vector<TestFunction> default_dictionary(const Grid& grid, double horizon, bool vector_valued);

/// Weak continuity imbalance for a test function supported inside (0, horizon).
double continuity_residual(const Trajectory& traj, const TestFunction& phi);

/// Weak momentum imbalance including the Reynolds stress term.
double momentum_residual(const Trajectory& traj, const TestFunction& phi, const ReynoldsField& reynolds);

struct DictionaryResiduals {
  std::vector<double> continuity;  ///< one per scalar member
  std::vector<double> momentum;    ///< one per vector member
  [[nodiscard]] double max_continuity() const noexcept;
  [[nodiscard]] double max_momentum() const noexcept;
};

DictionaryResiduals dictionary_residuals(const Trajectory& traj, const ReynoldsField& reynolds,
                                         std::span<const TestFunction> dictionary,
                                         Execution exec = Execution::parallel);

struct EnsembleEstimate {
  ReynoldsField reynolds;
  Trajectory average;
};

/// Equal-weight Reynolds stress of an ensemble and the averaged trajectory.
EnsembleEstimate estimate_reynolds(std::span<const Trajectory> ensemble, Execution exec = Execution::parallel);

struct DefectValue {
  double value = 0.0;  ///< clamped at 0
  double raw = 0.0;
  bool negative_excursion = false;
};

DefectValue energy_defect(const Trajectory& traj, double t, double tol_rel = 1e-10);

struct CompatibilitySlack {
  double t = 0.0;
  double defect = 0.0;
  double trace = 0.0;
  double r = 0.0;
  double slack = 0.0;
  bool pass = false;
};

/// slack = D_E(t) - r(d, gamma) * int trace R(t); pass iff slack >= -tol_abs.
CompatibilitySlack check_compatibility(const Trajectory& traj, const ReynoldsField& reynolds, double t,
                                       double tol_abs, std::optional<double> r_override = std::nullopt);

struct CertifyTolerances {
  double residual = 1e-12;        ///< absolute bound on weak-form residuals
  double monotone_rel = 1e-10;    ///< allowed energy increase, relative to max(1, E(0))
  double psd_rel = 1e-10;         ///< lambda_min >= -psd_rel * |R|
  double slack_rel = 1e-10;       ///< compatibility slack >= -slack_rel * max(1, E(0))
  double defect_rel = 1e-10;      ///< negative defect excursions
  std::optional<double> r_override;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct DissipativeCertificate {
  std::vector<CheckResult> checks;
  std::vector<CompatibilitySlack> per_time;
  DictionaryResiduals residuals;
  double momentum_without_reynolds = 0.0;  ///< max momentum residual with R = 0, for comparison
  EnergySource energy_source = EnergySource::supplied;
  bool pass = false;

  [[nodiscard]] const CheckResult& check(const std::string& name) const;
};

DissipativeCertificate certify(const Trajectory& traj, const ReynoldsField& reynolds,
                               std::span<const TestFunction> dictionary, const CertifyTolerances& tol = {},
                               Execution exec = Execution::parallel);

}  // namespace dislab
