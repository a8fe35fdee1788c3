#include <cmath>
#include <limits>

#include "dislab/solver.hpp"

namespace dislab {

namespace {

struct WaveCurve {
  double rho_k;
  double c_k;
  double a;
  double gamma;

  [[nodiscard]] double sound(double rho) const { return std::sqrt(a * gamma * std::pow(rho, gamma - 1.0)); }

  /// Velocity jump across the wave connecting rho_k to rho.
  [[nodiscard]] double operator()(double rho) const {
    if (rho > rho_k) {
      const double dp = a * (std::pow(rho, gamma) - std::pow(rho_k, gamma));
      return std::sqrt(dp * (rho - rho_k) / (rho * rho_k));
    }
    return 2.0 / (gamma - 1.0) * ((rho > 0.0 ? sound(rho) : 0.0) - c_k);
  }
};

double density_from_sound(double c, double a, double gamma) {
  if (c <= 0.0) return 0.0;
  return std::pow(c * c / (a * gamma), 1.0 / (gamma - 1.0));
}

}  // namespace

ExactRiemann::ExactRiemann(const RiemannData& data) : d_(data) {
  if (!(d_.rho_l > 0.0) || !(d_.rho_r > 0.0)) {
    throw DomainError("exact_riemann: left and right densities must be positive");
  }
  const double a = d_.law.a();
  const double g = d_.law.gamma();
  const WaveCurve fl{d_.rho_l, sound_speed(d_.rho_l, d_.law), a, g};
  const WaveCurve fr{d_.rho_r, sound_speed(d_.rho_r, d_.law), a, g};
  const double du = d_.u_r - d_.u_l;
  auto residual = [&](double rho) { return fl(rho) + fr(rho) + du; };

  if (d_.rho_l == d_.rho_r && d_.u_l == d_.u_r) {
    rho_star_ = d_.rho_l;
  } else {
    if (residual(0.0) >= 0.0) {
      throw VacuumError("exact_riemann: the data generate a vacuum region (u_R - u_L >= 2(c_L + c_R)/(gamma - 1))");
    }
    double lo = 0.0;
    double hi = std::max(d_.rho_l, d_.rho_r);
    while (residual(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
    }
    for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (residual(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    rho_star_ = 0.5 * (lo + hi);
  }
  u_star_ = 0.5 * (d_.u_l + d_.u_r) + 0.5 * (fr(rho_star_) - fl(rho_star_));

  left_ = rho_star_ > d_.rho_l ? WaveKind::shock : WaveKind::rarefaction;
  right_ = rho_star_ > d_.rho_r ? WaveKind::shock : WaveKind::rarefaction;
  if (left_ == WaveKind::shock) {
    s_left_ = (rho_star_ * u_star_ - d_.rho_l * d_.u_l) / (rho_star_ - d_.rho_l);
  } else {
    s_left_ = d_.u_l - fl.c_k;
  }
  if (right_ == WaveKind::shock) {
    s_right_ = (rho_star_ * u_star_ - d_.rho_r * d_.u_r) / (rho_star_ - d_.rho_r);
  } else {
    s_right_ = d_.u_r + fr.c_k;
  }
}

RiemannPoint ExactRiemann::sample(double xi) const {
  const double a = d_.law.a();
  const double g = d_.law.gamma();
  const RiemannPoint left{d_.rho_l, d_.u_l};
  const RiemannPoint right{d_.rho_r, d_.u_r};
  const RiemannPoint star{rho_star_, u_star_};
  const double c_star = sound_speed(rho_star_, d_.law);
  if (xi <= u_star_) {
    if (left_ == WaveKind::shock) return xi < s_left_ ? left : star;
    const double c_l = sound_speed(d_.rho_l, d_.law);
    const double head = d_.u_l - c_l;
    const double tail = u_star_ - c_star;
    if (xi <= head) return left;
    if (xi >= tail) return star;
    const double c = (g - 1.0) / (g + 1.0) * (d_.u_l + 2.0 * c_l / (g - 1.0) - xi);
    return {density_from_sound(c, a, g), xi + c};
  }
  if (right_ == WaveKind::shock) return xi > s_right_ ? right : star;
  const double c_r = sound_speed(d_.rho_r, d_.law);
  const double head = d_.u_r + c_r;
  const double tail = u_star_ + c_star;
  if (xi >= head) return right;
  if (xi <= tail) return star;
  const double c = (g - 1.0) / (g + 1.0) * (xi - d_.u_r + 2.0 * c_r / (g - 1.0));
  return {density_from_sound(c, a, g), xi - c};
}

RiemannPoint exact_riemann(const RiemannData& data, double xi) { return ExactRiemann(data).sample(xi); }

namespace {

RiemannPoint evaluate(const ExactRiemann& sol, const RiemannData& data, double x, double x0, double t) {
  if (t <= 0.0) return x < x0 ? RiemannPoint{data.rho_l, data.u_l} : RiemannPoint{data.rho_r, data.u_r};
  return sol.sample((x - x0) / t);
}

}  // namespace

FluidState sample_riemann(const RiemannData& data, const Grid& grid, double x0, double t) {
  const ExactRiemann sol(data);
  const std::size_t n = grid.size();
  std::vector<double> rho(n), mx(n);
  for (std::size_t c = 0; c < n; ++c) {
    const RiemannPoint p = evaluate(sol, data, grid.x(c), x0, t);
    rho[c] = p.rho;
    mx[c] = p.rho * p.u;
  }
  return FluidState(grid, std::move(rho), std::move(mx));
}

FluidState average_riemann(const RiemannData& data, const Grid& grid, double x0, double t, int sub) {
  const ExactRiemann sol(data);
  const std::size_t n = grid.size();
  const double h = grid.dx();
  std::vector<double> rho(n, 0.0), mx(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    const double left = grid.x(c) - 0.5 * h;
    for (int s = 0; s < sub; ++s) {
      const RiemannPoint p = evaluate(sol, data, left + (s + 0.5) * h / sub, x0, t);
      rho[c] += p.rho / sub;
      mx[c] += p.rho * p.u / sub;
    }
  }
  return FluidState(grid, std::move(rho), std::move(mx));
}

}  // namespace dislab
