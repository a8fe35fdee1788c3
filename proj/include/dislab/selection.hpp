#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dislab/trajectory.hpp"

namespace dislab {

/// Finite set of trajectories emanating from one initial datum.
class CandidateSet {
 public:
  explicit CandidateSet(std::vector<Trajectory> members, double tol_eq = 1e-9);

  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] const Trajectory& operator[](std::size_t i) const { return members_.at(i); }
  [[nodiscard]] const std::vector<Trajectory>& members() const noexcept { return members_; }

 private:
  std::vector<Trajectory> members_;
};

enum class F2Variant { full, momentum_only };
const char* to_string(F2Variant v) noexcept;
F2Variant f2_variant_from_string(const std::string& s);

/// min{4/3, 2 gamma / (gamma + 1)}.
double default_exponent(const GasLaw& law) noexcept;

/// int_0^inf e^{-t} E(t) dt.
double F1(const Trajectory& traj);

/// Full: int e^{-t} [||rho||_q^q + ||m||_q^q + |E|^q] dt. Momentum only: int e^{-t} ||m||_q^q dt.
double F2(const Trajectory& traj, F2Variant variant, double q);

/// Integrand of a functional at every sample (piecewise constant between samples).
struct Functional {
  enum class Kind { f1, f2 };
  Kind kind = Kind::f1;
  F2Variant variant = F2Variant::full;
  double q = 0.0;  ///< 0 selects the default exponent
};

double evaluate(const Trajectory& traj, const Functional& f);
std::vector<double> functional_density(const Trajectory& traj, const Functional& f);

struct SelectionReport {
  std::vector<double> f1;
  std::vector<bool> survived;
  std::vector<double> f2;  ///< evaluated for every member
  std::size_t selected = 0;
  std::vector<std::size_t> f2_ties;  ///< survivors tied with the selected member (including it)
  bool tie = false;
  F2Variant variant = F2Variant::full;
  double q = 0.0;
};

/// Two-step argmin: F1 first, then F2 over the F1 survivors. Ties resolve to the lowest index.
SelectionReport select(const CandidateSet& candidates, F2Variant variant = F2Variant::full,
                       std::optional<double> q = std::nullopt, double tie_rel = 1e-9,
                       Execution exec = Execution::parallel);

/// int_0^inf e^{-lambda t} E(t) dt with constant extension.
double laplace_energy(const Trajectory& traj, double lambda);

/// 32 log-spaced points in [0.5, 128].
std::vector<double> default_lambda_grid();

struct CompetitorBound {
  std::size_t index = 0;
  std::optional<double> lambda_lower;  ///< grid-relative; nullopt if the candidate never wins for good
};

struct MinimizerVerdict {
  bool absolute = false;
  std::vector<CompetitorBound> competitors;
};

/// Laplace-transform domination test; tolerance at rate lambda is tol * max(1, E0) / lambda.
MinimizerVerdict is_absolute_minimizer(const Trajectory& candidate, std::span<const Trajectory> competitors,
                                       std::span<const double> lambda_grid, double tol = 1e-12);

/// Same test against every other member of the set.
MinimizerVerdict is_absolute_minimizer(std::size_t candidate, const CandidateSet& candidates,
                                       std::span<const double> lambda_grid, double tol = 1e-12);

/// True iff the Laplace transforms agree within tol * max(E0) / lambda on the grid.
bool lerch_equal(const Trajectory& u, const Trajectory& v, std::span<const double> lambda_grid, double tol = 1e-12);

/// |F(S_T u) - e^T (F(u) - int_0^T e^{-t} f(u(t)) dt)|.
double check_shift_identity(const Trajectory& traj, double T, const Functional& f);

/// F(u) - F(u concatenated with v at T).
double check_concatenation_inequality(const Trajectory& u, const Trajectory& v, double T, const Functional& f);

}  // namespace dislab
