#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dislab/eos.hpp"
#include "dislab/fields.hpp"
#include "dislab/kernels.hpp"
#include "dislab/reynolds.hpp"

namespace dislab {

/// Where a trajectory's total-energy curve came from; carried into certificates.
enum class EnergySource { supplied, running_min_envelope, ensemble_average, derived };

const char* to_string(EnergySource s) noexcept;
EnergySource energy_source_from_string(const std::string& s);

struct InvariantViolation {
  std::string what;
  std::size_t index = 0;
  double amount = 0.0;
};

inline constexpr double kInvariantTol = 1e-10;

/// Time-sampled fields plus a caglad total-energy curve.
///
/// Sample times satisfy 0 = t_0 < t_1 < ... < t_N. The energy curve is
/// described by E(0) = `initial_energy` and knot values E_k = E(t_k+): the
/// curve equals E_k on (t_k, t_{k+1}] and E_N beyond t_N. Fields are held
/// constant on [t_k, t_{k+1}) and beyond t_N for every infinite-horizon
/// integral.
///
/// The constructor only checks structure (sizes, ordering, one grid). Use
/// `checked` or `violations` for the dissipative-class invariants so that
/// diagnostics can load and report on broken trajectories.
class Trajectory {
 public:
  Trajectory(GasLaw law, std::vector<double> times, std::vector<FluidState> states, double initial_energy,
             std::vector<double> energy, EnergySource source = EnergySource::supplied);

  static Trajectory checked(GasLaw law, std::vector<double> times, std::vector<FluidState> states,
                            double initial_energy, std::vector<double> energy,
                            EnergySource source = EnergySource::supplied);

  [[nodiscard]] const GasLaw& law() const noexcept { return law_; }
  [[nodiscard]] const Grid& grid() const noexcept { return states_.front().grid(); }
  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
  [[nodiscard]] double horizon() const noexcept { return times_.back(); }
  [[nodiscard]] const FluidState& state(std::size_t k) const { return states_.at(k); }
  [[nodiscard]] const std::vector<FluidState>& states() const noexcept { return states_; }
  [[nodiscard]] double initial_energy() const noexcept { return initial_energy_; }
  [[nodiscard]] const std::vector<double>& energy() const noexcept { return energy_; }
  [[nodiscard]] EnergySource energy_source() const noexcept { return source_; }

  /// E(t_k+).
  [[nodiscard]] double energy_after(std::size_t k) const { return energy_.at(k); }
  /// E(t_k): left value, E(0) for k = 0.
  [[nodiscard]] double energy_before(std::size_t k) const { return k == 0 ? initial_energy_ : energy_.at(k - 1); }
  /// Caglad evaluation E(t) for any t >= 0.
  [[nodiscard]] double energy_at(double t) const;
  /// Integral of the energy density of the fields at sample k (may be +inf).
  [[nodiscard]] double mean_energy(std::size_t k) const { return mean_energy_.at(k); }
  /// E(t_k+) - mean energy at t_k, unclamped.
  [[nodiscard]] double raw_defect(std::size_t k) const { return energy_.at(k) - mean_energy_.at(k); }

  [[nodiscard]] std::optional<std::size_t> sample_index(double t) const noexcept;
  /// Index of sample time `t`; throws DomainError if `t` is not a sample time.
  [[nodiscard]] std::size_t require_sample(double t) const;

  [[nodiscard]] std::vector<InvariantViolation> violations(double tol_rel = kInvariantTol) const;
  void require_invariants(double tol_rel = kInvariantTol) const;

  /// Same fields with a replacement energy curve (structure-checked only).
  [[nodiscard]] Trajectory with_energy(double initial_energy, std::vector<double> energy,
                                       EnergySource source = EnergySource::derived) const;

  /// Tolerance scale for energy comparisons: max(1, E(0)).
  [[nodiscard]] double energy_scale() const noexcept;

 private:
  GasLaw law_;
  std::vector<double> times_;
  std::vector<FluidState> states_;
  double initial_energy_;
  std::vector<double> energy_;
  std::vector<double> mean_energy_;
  EnergySource source_;
};

/// Same grid, law and sample times.
bool same_discretization(const Trajectory& u, const Trajectory& v) noexcept;
void require_same_discretization(const Trajectory& u, const Trajectory& v, const char* where);

/// sum_k v_k * int_{t_k}^{t_{k+1}} e^{-lambda t} dt + v_N * int_{t_N}^inf e^{-lambda t} dt.
double piecewise_laplace(std::span<const double> times, std::span<const double> values, double lambda);
/// Same sum truncated to [0, times[upto]].
double piecewise_laplace_prefix(std::span<const double> times, std::span<const double> values, double lambda,
                                std::size_t upto);

/// Admissible range of the trajectory-space exponent: 1 < q <= 2 gamma / (gamma + 1).
double max_trajectory_exponent(const GasLaw& law) noexcept;
void require_trajectory_exponent(double q, const GasLaw& law);

/// ||u(t)||^q densities: integral |rho|^q and integral |m|^q at sample k.
double density_q_norm(const FluidState& s, double q);
double momentum_q_norm(const FluidState& s, double q);

/// (int_0^inf e^{-t} [ ||rho||_q^q + ||m||_q^q + |E|^q ] dt)^{1/q}.
double weighted_norm(const Trajectory& traj, double q);

Trajectory shift(const Trajectory& traj, double T);

/// u on [0, T] followed by v shifted to start at T.
Trajectory concatenate(const Trajectory& u, const Trajectory& v, double T, double tol_match = 1e-10);

/// Affine combination lambda*u + (1-lambda)*v and the extra Reynolds stress it creates.
std::pair<Trajectory, ReynoldsField> convex_combine(const Trajectory& u, const Trajectory& v, double lambda,
                                                     Execution exec = Execution::parallel);

enum class Relation { less, greater, equal, incomparable };
const char* to_string(Relation r) noexcept;
Relation mirror(Relation r) noexcept;

/// Open time window (start, start + delta).
struct Window {
  double start = 0.0;
  double delta = 0.0;
};

struct OrderResult {
  Relation relation = Relation::incomparable;
  std::optional<Window> witness;
  /// Index of the sample T at which the witness window opens (local order only).
  std::optional<std::size_t> junction;
};

struct OrderTolerances {
  double eq_rel = 1e-9;      ///< field/energy equality, relative
  double strict_rel = 1e-6;  ///< strict energy gap, relative to E(0)
};

/// Global order: E_u <= E_v everywhere.
OrderResult compare_admissible(const Trajectory& u, const Trajectory& v, const OrderTolerances& tol = {});

/// Local order: equal trios on [0, T], then E_u < E_v on a window (T, T + delta).
OrderResult compare_local(const Trajectory& u, const Trajectory& v, const OrderTolerances& tol = {});

struct SampleTime {
  std::size_t index = 0;
  double t = 0.0;
};

/// First sample time where the energy defect exceeds delta; nullopt means "not within the horizon".
std::optional<SampleTime> stopping_time(const Trajectory& traj, double delta);

/// Concatenate a continuation started from the fields at T with E(0) = mean energy at T.
Trajectory defect_reset(const Trajectory& traj, double T, const Trajectory& continuation,
                        double tol_match = 1e-10);

struct ImproveResult {
  Trajectory competitor;
  OrderResult order;
  double epsilon = 0.0;    ///< defect at T
  double min_gap = 0.0;    ///< min of E_traj - E_competitor over the witness window
  Window window;           ///< witness window restricted to the half-defect window
};

/// Build a competitor by resetting the defect at T; it is smaller in the local order.
ImproveResult improve(const Trajectory& traj, double T, const Trajectory& continuation,
                      const OrderTolerances& tol = {});

/// Both trajectories with their energy replaced by min{E_u, E_v} from T on.
std::pair<Trajectory, Trajectory> min_energy_merge(const Trajectory& u, const Trajectory& v, double T,
                                                   const OrderTolerances& tol = {});

/// Reynolds stresses matching `min_energy_merge`: from T on both take the stress of the lower-energy member.
std::pair<ReynoldsField, ReynoldsField> merge_reynolds(const Trajectory& u, const ReynoldsField& ru,
                                                       const Trajectory& v, const ReynoldsField& rv, double T);

}  // namespace dislab
