#include "dislab/dissipative.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dislab/error.hpp"

namespace dislab {

namespace {

// Antiderivative of (1 - s^2)^2 from -1, clamped to [-1, 1].
double bump_primitive(double s) noexcept {
  s = std::clamp(s, -1.0, 1.0);
  const double s2 = s * s;
  return s - 2.0 * s * s2 / 3.0 + s * s2 * s2 / 5.0 + 8.0 / 15.0;
}

// Cell integrals of psi and psi' along one axis; a missing bump is the constant 1.
struct AxisWeights {
  std::vector<double> value;
  std::vector<double> slope;
};

AxisWeights axis_weights(const Axis& axis, const std::optional<Bump>& bump, int cells) {
  AxisWeights w{std::vector<double>(static_cast<std::size_t>(cells), 1.0),
                std::vector<double>(static_cast<std::size_t>(cells), 0.0)};
  if (!bump) return w;
  const double h = axis.spacing();
  for (int i = 0; i < cells; ++i) {
    const double a = axis.lo + i * h;
    const double b = a + h;
    w.value[static_cast<std::size_t>(i)] = bump->integral(a, b);
    w.slope[static_cast<std::size_t>(i)] = bump->value(b) - bump->value(a);
  }
  return w;
}

struct CellWeights {
  std::vector<double> phi;     // integral of psi over the cell
  std::vector<double> grad_x;  // integral of d psi / dx
  std::vector<double> grad_y;
};

CellWeights cell_weights(const Grid& g, const TestFunction& f) {
  const AxisWeights wx = axis_weights(g.axis(0), f.space_x(), g.nx());
  const AxisWeights wy = g.dim() == 2 ? axis_weights(g.axis(1), f.space_y(), g.ny())
                                      : AxisWeights{{1.0}, {0.0}};
  CellWeights cw{std::vector<double>(g.size()), std::vector<double>(g.size()), std::vector<double>(g.size())};
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.index(i, j);
      const auto ii = static_cast<std::size_t>(i);
      const auto jj = static_cast<std::size_t>(j);
      cw.phi[c] = wx.value[ii] * wy.value[jj];
      cw.grad_x[c] = wx.slope[ii] * wy.value[jj];
      cw.grad_y[c] = wx.value[ii] * wy.slope[jj];
    }
  }
  return cw;
}

// int theta'(t) A(t) + theta(t) B(t) dt with A, B linear between samples.
// Three-point Gauss-Legendre is exact: the bump is a quartic inside its support.
double time_integral(const std::vector<double>& times, const Bump& theta, const std::vector<double>& A,
                     const std::vector<double>& B) {
  static constexpr double kNodes[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr double kWeights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t0 = times[k];
    const double t1 = times[k + 1];
    const double a = std::max(t0, theta.lo());
    const double b = std::min(t1, theta.hi());
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int q = 0; q < 3; ++q) {
      const double t = mid + half * kNodes[q];
      const double s = (t - t0) / (t1 - t0);
      const double av = (1.0 - s) * A[k] + s * A[k + 1];
      const double bv = (1.0 - s) * B[k] + s * B[k + 1];
      total += kWeights[q] * half * (theta.derivative(t) * av + theta.value(t) * bv);
    }
  }
  return total;
}

void require_horizon(const Trajectory& traj, const TestFunction& phi) {
  phi.require_support(traj.grid(), traj.horizon());
}

}  // namespace

double Bump::value(double x) const noexcept {
  const double s = (x - center) / half_width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double u = 1.0 - s * s;
  return u * u;
}

double Bump::derivative(double x) const noexcept {
  const double s = (x - center) / half_width;
  if (std::abs(s) >= 1.0) return 0.0;
  return -4.0 * s * (1.0 - s * s) / half_width;
}

double Bump::integral(double a, double b) const noexcept {
  return half_width * (bump_primitive((b - center) / half_width) - bump_primitive((a - center) / half_width));
}

TestFunction TestFunction::scalar(Bump time, Bump x, std::optional<Bump> y) {
  if (!(time.half_width > 0.0) || !(x.half_width > 0.0) || (y && !(y->half_width > 0.0))) {
    throw DomainError("test function: bump half-widths must be positive");
  }
  return TestFunction(time, x, y, -1);
}

TestFunction TestFunction::vector(Bump time, Bump x, std::optional<Bump> y, int component) {
  if (component < 0 || component > 1 || (component == 1 && !y)) {
    throw DomainError("test function: invalid vector component");
  }
  TestFunction f = scalar(time, x, y);
  f.component_ = component;
  return f;
}

double TestFunction::value(double t, double x, double y) const noexcept {
  return time_.value(t) * x_.value(x) * (y_ ? y_->value(y) : 1.0);
}

double TestFunction::dt(double t, double x, double y) const noexcept {
  return time_.derivative(t) * x_.value(x) * (y_ ? y_->value(y) : 1.0);
}

std::array<double, 2> TestFunction::grad(double t, double x, double y) const noexcept {
  const double th = time_.value(t);
  const double py = y_ ? y_->value(y) : 1.0;
  return {th * x_.derivative(x) * py, y_ ? th * x_.value(x) * y_->derivative(y) : 0.0};
}

void TestFunction::require_support(const Grid& grid, double horizon) const {
  if (time_.lo() < 0.0 || time_.hi() > horizon * (1.0 + 1e-12)) {
    throw DomainError("test function " + describe() + ": time support exceeds the horizon [0, " +
                      std::to_string(horizon) + "]");
  }
  const auto inside = [](const Bump& b, const Axis& ax) {
    const double margin = ax.spacing() * (1.0 - 1e-9);
    return b.lo() >= ax.lo + margin && b.hi() <= ax.hi - margin;
  };
  if (!inside(x_, grid.axis(0)) || (grid.dim() == 2 && (!y_ || !inside(*y_, grid.axis(1)))) ||
      (grid.dim() == 1 && y_)) {
    throw DomainError("test function " + describe() + ": spatial support must stay one cell inside the domain");
  }
}

std::string TestFunction::describe() const {
  char buf[160];
  if (y_) {
    std::snprintf(buf, sizeof buf, "%s[t=%.4g+-%.4g, x=%.4g+-%.4g, y=%.4g+-%.4g]",
                  is_vector() ? (component_ == 0 ? "vx" : "vy") : "s", time_.center, time_.half_width,
                  x_.center, x_.half_width, y_->center, y_->half_width);
  } else {
    std::snprintf(buf, sizeof buf, "%s[t=%.4g+-%.4g, x=%.4g+-%.4g]", is_vector() ? "vx" : "s", time_.center,
                  time_.half_width, x_.center, x_.half_width);
  }
  return buf;
}

std::vector<TestFunction> default_dictionary(const Grid& grid, double horizon, bool vector_valued) {
  if (!(horizon > 0.0)) throw DomainError("default_dictionary: horizon must be positive");
  constexpr int kScales = 3;
  constexpr int kCenters = 8;
  const Bump theta{0.5 * horizon, 0.45 * horizon};
  const auto bumps = [](const Axis& ax, int scale) {
    const double avail = ax.length() - 2.0 * ax.spacing();
    if (!(avail > 0.0)) throw DomainError("default_dictionary: grid too coarse for interior test functions");
    const double h = avail / static_cast<double>(4 << scale);
    const double first = ax.lo + ax.spacing() + h;
    const double span = avail - 2.0 * h;
    std::vector<Bump> out;
    for (int i = 0; i < kCenters; ++i) out.push_back({first + span * i / (kCenters - 1), h});
    return out;
  };
  std::vector<TestFunction> dict;
  for (int s = 0; s < kScales; ++s) {
    const auto bx = bumps(grid.axis(0), s);
    const auto by = grid.dim() == 2 ? bumps(grid.axis(1), s) : std::vector<Bump>{};
    for (int i = 0; i < kCenters; ++i) {
      std::optional<Bump> y;
      if (grid.dim() == 2) y = by[static_cast<std::size_t>((3 * i) % kCenters)];
      const Bump& x = bx[static_cast<std::size_t>(i)];
      if (vector_valued) {
        dict.push_back(TestFunction::vector(theta, x, y, grid.dim() == 2 ? i % 2 : 0));
      } else {
        dict.push_back(TestFunction::scalar(theta, x, y));
      }
    }
  }
  return dict;
}

double continuity_residual(const Trajectory& traj, const TestFunction& phi) {
  require_horizon(traj, phi);
  const Grid& g = traj.grid();
  const CellWeights w = cell_weights(g, phi);
  std::vector<double> A(traj.size(), 0.0), B(traj.size(), 0.0);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const FluidState& s = traj.state(k);
    double a = 0.0, b = 0.0;
    for (std::size_t c = 0; c < g.size(); ++c) {
      a += s.rho()[c] * w.phi[c];
      b += s.mx()[c] * w.grad_x[c] + s.my()[c] * w.grad_y[c];
    }
    A[k] = a;
    B[k] = b;
  }
  return time_integral(traj.times(), phi.time(), A, B);
}

double momentum_residual(const Trajectory& traj, const TestFunction& phi, const ReynoldsField& reynolds) {
  if (!phi.is_vector()) throw DomainError("momentum_residual: test function must be vector valued");
  if (!(reynolds.grid() == traj.grid()) || reynolds.times() != traj.times()) {
    throw MismatchError("momentum_residual: Reynolds field and trajectory differ in grid or sample times");
  }
  require_horizon(traj, phi);
  const Grid& g = traj.grid();
  const CellWeights w = cell_weights(g, phi);
  const int e = phi.component();
  const double pa = traj.law().a();
  const double gm = traj.law().gamma();
  std::vector<double> A(traj.size(), 0.0), B(traj.size(), 0.0);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const FluidState& s = traj.state(k);
    const StressSlice& R = reynolds.slice(k);
    double a = 0.0, b = 0.0;
    for (std::size_t c = 0; c < g.size(); ++c) {
      const double rho = s.rho()[c];
      const double mx = s.mx()[c];
      const double my = s.my()[c];
      const double me = e == 0 ? mx : my;
      const double gx = w.grad_x[c];
      const double gy = w.grad_y[c];
      const double ge = e == 0 ? gx : gy;
      a += me * w.phi[c];
      double flux = pa * std::pow(rho, gm) * ge;
      if (rho > 0.0) flux += me / rho * (mx * gx + my * gy);
      flux += e == 0 ? R.xx[c] * gx + R.xy[c] * gy : R.xy[c] * gx + R.yy[c] * gy;
      b += flux;
    }
    A[k] = a;
    B[k] = b;
  }
  return time_integral(traj.times(), phi.time(), A, B);
}

double DictionaryResiduals::max_continuity() const noexcept {
  double m = 0.0;
  for (double r : continuity) m = std::max(m, std::abs(r));
  return m;
}

double DictionaryResiduals::max_momentum() const noexcept {
  double m = 0.0;
  for (double r : momentum) m = std::max(m, std::abs(r));
  return m;
}

DictionaryResiduals dictionary_residuals(const Trajectory& traj, const ReynoldsField& reynolds,
                                         std::span<const TestFunction> dictionary, Execution exec) {
  if (!(reynolds.grid() == traj.grid()) || reynolds.times() != traj.times()) {
    throw MismatchError("dictionary_residuals: Reynolds field and trajectory differ in grid or sample times");
  }
  for (const TestFunction& f : dictionary) require_horizon(traj, f);
  const auto n = static_cast<long>(dictionary.size());
  std::vector<double> values(dictionary.size(), 0.0);
  const auto eval = [&](long i) {
    const TestFunction& f = dictionary[static_cast<std::size_t>(i)];
    values[static_cast<std::size_t>(i)] =
        f.is_vector() ? momentum_residual(traj, f, reynolds) : continuity_residual(traj, f);
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) eval(i);
  } else {
    for (long i = 0; i < n; ++i) eval(i);
  }
  DictionaryResiduals out;
  for (std::size_t i = 0; i < dictionary.size(); ++i) {
    (dictionary[i].is_vector() ? out.momentum : out.continuity).push_back(values[i]);
  }
  return out;
}

EnsembleEstimate estimate_reynolds(std::span<const Trajectory> ensemble, Execution exec) {
  if (ensemble.empty()) throw DomainError("estimate_reynolds: ensemble is empty");
  const Trajectory& first = ensemble.front();
  for (std::size_t i = 1; i < ensemble.size(); ++i) {
    if (!same_discretization(first, ensemble[i])) {
      throw MismatchError("estimate_reynolds: member " + std::to_string(i) +
                          " differs from member 0 in grid, law or sample times");
    }
  }
  const Grid& g = first.grid();
  const std::size_t K = ensemble.size();
  const std::vector<double> weights(K, 1.0 / static_cast<double>(K));
  std::vector<FluidState> states;
  std::vector<StressSlice> slices;
  std::vector<double> energy(first.size(), 0.0);
  double e0 = 0.0;
  for (const Trajectory& m : ensemble) e0 += m.initial_energy() / static_cast<double>(K);
  for (std::size_t k = 0; k < first.size(); ++k) {
    std::vector<kernels::ConservedView> members;
    members.reserve(K);
    for (const Trajectory& m : ensemble) members.push_back(kernels::view_of(m.state(k)));
    std::vector<double> rho(g.size()), mx(g.size()), my(g.size());
    StressSlice s(g.size());
    kernels::reynolds_stress(exec, g, members, weights, first.law().a(), first.law().gamma(), {rho, mx, my},
                             {s.xx, s.xy, s.yy});
    states.emplace_back(g, std::move(rho), std::move(mx), std::move(my));
    slices.push_back(std::move(s));
    for (const Trajectory& m : ensemble) energy[k] += m.energy_after(k) / static_cast<double>(K);
  }
  Trajectory average(first.law(), first.times(), std::move(states), e0, std::move(energy),
                     EnergySource::ensemble_average);
  return {ReynoldsField(g, first.times(), std::move(slices)), std::move(average)};
}

DefectValue energy_defect(const Trajectory& traj, double t, double tol_rel) {
  const std::size_t k = traj.require_sample(t);
  DefectValue d;
  d.raw = traj.raw_defect(k);
  d.negative_excursion = d.raw < -tol_rel * traj.energy_scale();
  d.value = std::max(d.raw, 0.0);
  return d;
}

CompatibilitySlack check_compatibility(const Trajectory& traj, const ReynoldsField& reynolds, double t,
                                       double tol_abs, std::optional<double> r_override) {
  if (!(reynolds.grid() == traj.grid()) || reynolds.times() != traj.times()) {
    throw MismatchError("check_compatibility: Reynolds field and trajectory differ in grid or sample times");
  }
  const std::size_t k = traj.require_sample(t);
  CompatibilitySlack s;
  s.t = traj.times()[k];
  s.defect = std::max(traj.raw_defect(k), 0.0);
  s.trace = reynolds.trace_integral(k);
  s.r = defect_constant(traj.grid().dim(), traj.law(), r_override);
  s.slack = s.defect - s.r * s.trace;
  s.pass = s.slack >= -tol_abs;
  return s;
}

const CheckResult& DissipativeCertificate::check(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return c;
  }
  throw DomainError("certificate has no check named '" + name + "'");
}

DissipativeCertificate certify(const Trajectory& traj, const ReynoldsField& reynolds,
                               std::span<const TestFunction> dictionary, const CertifyTolerances& tol,
                               Execution exec) {
  DissipativeCertificate cert;
  cert.energy_source = traj.energy_source();
  const double scale = traj.energy_scale();
  cert.residuals = dictionary_residuals(traj, reynolds, dictionary, exec);
  cert.momentum_without_reynolds =
      reynolds.is_zero()
          ? cert.residuals.max_momentum()
          : dictionary_residuals(traj, ReynoldsField::zero(traj.grid(), traj.times()), dictionary, exec).max_momentum();

  const auto add = [&](std::string name, double value, double tolerance, bool pass) {
    cert.checks.push_back({std::move(name), value, tolerance, pass});
  };
  add("continuity_residual", cert.residuals.max_continuity(), tol.residual,
      cert.residuals.max_continuity() <= tol.residual);
  add("momentum_residual", cert.residuals.max_momentum(), tol.residual,
      cert.residuals.max_momentum() <= tol.residual);

  double increase = std::max(0.0, traj.energy_after(0) - traj.initial_energy());
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    increase = std::max(increase, traj.energy_after(k + 1) - traj.energy_after(k));
  }
  add("energy_monotonicity", increase, tol.monotone_rel * scale, increase <= tol.monotone_rel * scale);

  double vacuum_cells = 0.0;
  for (const FluidState& s : traj.states()) {
    if (s.vacuum_violation()) vacuum_cells += 1.0;
  }
  add("vacuum_consistency", vacuum_cells, 0.0, vacuum_cells == 0.0);

  const PsdReport psd = reynolds.check_psd(tol.psd_rel);
  add("reynolds_psd", psd.worst_relative, -tol.psd_rel, psd.symmetric_psd);

  double worst_defect = std::numeric_limits<double>::infinity();
  double worst_slack = std::numeric_limits<double>::infinity();
  bool slack_pass = true;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    worst_defect = std::min(worst_defect, traj.raw_defect(k));
    CompatibilitySlack s = check_compatibility(traj, reynolds, traj.times()[k], tol.slack_rel * scale,
                                               tol.r_override);
    worst_slack = std::min(worst_slack, s.slack);
    slack_pass = slack_pass && s.pass;
    cert.per_time.push_back(s);
  }
  add("defect_nonnegative", worst_defect, -tol.defect_rel * scale, worst_defect >= -tol.defect_rel * scale);
  add("compatibility", worst_slack, -tol.slack_rel * scale, slack_pass);

  cert.pass = std::all_of(cert.checks.begin(), cert.checks.end(), [](const CheckResult& c) { return c.pass; });
  return cert;
}

}  // namespace dislab
