#include "dislab/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dislab/error.hpp"

namespace dislab {

CandidateSet::CandidateSet(std::vector<Trajectory> members, double tol_eq) : members_(std::move(members)) {
  if (members_.empty()) throw DomainError("candidate set is empty");
  const Trajectory& first = members_.front();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const Trajectory& m = members_[i];
    const auto v = m.violations();
    if (!v.empty()) {
      throw DomainError("candidate member " + std::to_string(i) + " violates '" + v.front().what + "' at sample " +
                        std::to_string(v.front().index));
    }
    if (i == 0) continue;
    if (!same_discretization(first, m)) {
      throw MismatchError("candidate member " + std::to_string(i) + " differs in grid, law or sample times");
    }
    if (m.state(0).relative_l1_distance(first.state(0)) > tol_eq ||
        std::abs(m.initial_energy() - first.initial_energy()) > tol_eq * first.energy_scale()) {
      throw MismatchError("candidate member " + std::to_string(i) + " does not share the initial data");
    }
  }
}

const char* to_string(F2Variant v) noexcept { return v == F2Variant::full ? "full" : "momentum-only"; }

F2Variant f2_variant_from_string(const std::string& s) {
  if (s == "full") return F2Variant::full;
  if (s == "momentum-only" || s == "momentum_only") return F2Variant::momentum_only;
  throw DomainError("unknown F2 variant '" + s + "' (expected full or momentum-only)");
}

double default_exponent(const GasLaw& law) noexcept { return std::min(4.0 / 3.0, max_trajectory_exponent(law)); }

double laplace_energy(const Trajectory& traj, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("laplace_energy: lambda must be positive");
  return piecewise_laplace(traj.times(), traj.energy(), lambda);
}

double F1(const Trajectory& traj) { return laplace_energy(traj, 1.0); }

std::vector<double> functional_density(const Trajectory& traj, const Functional& f) {
  std::vector<double> d(traj.size());
  if (f.kind == Functional::Kind::f1) {
    for (std::size_t k = 0; k < traj.size(); ++k) d[k] = traj.energy_after(k);
    return d;
  }
  const double q = f.q > 0.0 ? f.q : default_exponent(traj.law());
  require_trajectory_exponent(q, traj.law());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    d[k] = momentum_q_norm(traj.state(k), q);
    if (f.variant == F2Variant::full) {
      d[k] += density_q_norm(traj.state(k), q) + std::pow(std::abs(traj.energy_after(k)), q);
    }
  }
  return d;
}

double evaluate(const Trajectory& traj, const Functional& f) {
  return piecewise_laplace(traj.times(), functional_density(traj, f), 1.0);
}

double F2(const Trajectory& traj, F2Variant variant, double q) {
  return evaluate(traj, Functional{Functional::Kind::f2, variant, q});
}

SelectionReport select(const CandidateSet& candidates, F2Variant variant, std::optional<double> q, double tie_rel,
                       Execution exec) {
  const std::size_t n = candidates.size();
  SelectionReport rep;
  rep.variant = variant;
  rep.q = q ? *q : default_exponent(candidates[0].law());
  require_trajectory_exponent(rep.q, candidates[0].law());
  rep.f1.assign(n, 0.0);
  rep.f2.assign(n, 0.0);
  const auto eval = [&](long i) {
    const auto u = static_cast<std::size_t>(i);
    rep.f1[u] = F1(candidates[u]);
    rep.f2[u] = F2(candidates[u], variant, rep.q);
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) eval(i);
  } else {
    for (long i = 0; i < static_cast<long>(n); ++i) eval(i);
  }
  const double f1_min = *std::min_element(rep.f1.begin(), rep.f1.end());
  const double f1_tol = tie_rel * std::abs(f1_min);
  rep.survived.assign(n, false);
  double f2_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    rep.survived[i] = rep.f1[i] <= f1_min + f1_tol;
    if (rep.survived[i]) f2_min = std::min(f2_min, rep.f2[i]);
  }
  const double f2_tol = tie_rel * std::abs(f2_min);
  bool chosen = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rep.survived[i] || rep.f2[i] > f2_min + f2_tol) continue;
    if (!chosen) {
      rep.selected = i;
      chosen = true;
    }
    rep.f2_ties.push_back(i);
  }
  rep.tie = rep.f2_ties.size() > 1;
  return rep;
}

std::vector<double> default_lambda_grid() {
  constexpr int n = 32;
  std::vector<double> grid(n);
  const double lo = std::log(0.5);
  const double hi = std::log(128.0);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / (n - 1));
  grid.front() = 0.5;
  grid.back() = 128.0;
  return grid;
}

namespace {

void require_lambda_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("lambda grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw DomainError("lambda grid must be positive and strictly increasing");
    }
  }
  if (grid.front() > 1.0 || grid.back() < 100.0) throw DomainError("lambda grid must span at least [1, 100]");
}

}  // namespace

MinimizerVerdict is_absolute_minimizer(const Trajectory& candidate, std::span<const Trajectory> competitors,
                                       std::span<const double> lambda_grid, double tol) {
  require_lambda_grid(lambda_grid);
  MinimizerVerdict v;
  v.absolute = true;
  std::vector<double> own(lambda_grid.size());
  for (std::size_t j = 0; j < lambda_grid.size(); ++j) own[j] = laplace_energy(candidate, lambda_grid[j]);
  for (std::size_t i = 0; i < competitors.size(); ++i) {
    const Trajectory& c = competitors[i];
    const double scale = std::max({1.0, candidate.initial_energy(), c.initial_energy()});
    CompetitorBound b{i, std::nullopt};
    for (std::size_t j = lambda_grid.size(); j-- > 0;) {
      const double lam = lambda_grid[j];
      if (own[j] <= laplace_energy(c, lam) + tol * scale / lam) {
        b.lambda_lower = lam;
      } else {
        break;
      }
    }
    v.absolute = v.absolute && b.lambda_lower.has_value();
    v.competitors.push_back(b);
  }
  return v;
}

MinimizerVerdict is_absolute_minimizer(std::size_t candidate, const CandidateSet& candidates,
                                       std::span<const double> lambda_grid, double tol) {
  if (candidate >= candidates.size()) throw DomainError("is_absolute_minimizer: candidate index out of range");
  std::vector<Trajectory> others;
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i == candidate) continue;
    others.push_back(candidates[i]);
    index.push_back(i);
  }
  MinimizerVerdict v = is_absolute_minimizer(candidates[candidate], others, lambda_grid, tol);
  for (CompetitorBound& b : v.competitors) b.index = index[b.index];
  return v;
}

bool lerch_equal(const Trajectory& u, const Trajectory& v, std::span<const double> lambda_grid, double tol) {
  double scale = std::max(u.initial_energy(), v.initial_energy());
  if (!(scale > 0.0)) scale = 1.0;
  for (double lam : lambda_grid) {
    if (std::abs(laplace_energy(u, lam) - laplace_energy(v, lam)) > tol * scale / lam) return false;
  }
  return true;
}

double check_shift_identity(const Trajectory& traj, double T, const Functional& f) {
  const std::size_t k = traj.require_sample(T);
  const double left = evaluate(shift(traj, T), f);
  const std::vector<double> density = functional_density(traj, f);
  const double whole = piecewise_laplace(traj.times(), density, 1.0);
  const double head = piecewise_laplace_prefix(traj.times(), density, 1.0, k);
  const double right = std::exp(traj.times()[k]) * (whole - head);
  return std::abs(left - right);
}

double check_concatenation_inequality(const Trajectory& u, const Trajectory& v, double T, const Functional& f) {
  return evaluate(u, f) - evaluate(concatenate(u, v, T), f);
}

}  // namespace dislab
