#pragma once

#include <algorithm>
#include <cmath>

#include "dislab/kernels.hpp"

namespace dislab::kernels::detail {

/// State rotated into a face frame: normal and tangential momentum.
struct FaceState {
  double rho;
  double mn;
  double mt;
};

struct FaceFlux {
  double rho;
  double mn;
  double mt;
};

inline double pressure_of(double rho, double a, double gamma) noexcept { return a * std::pow(rho, gamma); }

inline double sound_of(double rho, double a, double gamma) noexcept {
  return rho > 0.0 ? std::sqrt(a * gamma * std::pow(rho, gamma - 1.0)) : 0.0;
}

inline FaceFlux physical_flux(const FaceState& s, double a, double gamma) noexcept {
  if (s.rho <= 0.0) return {0.0, 0.0, 0.0};
  const double un = s.mn / s.rho;
  return {s.mn, s.mn * un + pressure_of(s.rho, a, gamma), s.mt * un};
}

inline FaceFlux numerical_flux(const FaceState& l, const FaceState& r, const FluxParams& p) noexcept {
  const FaceFlux fl = physical_flux(l, p.a, p.gamma);
  const FaceFlux fr = physical_flux(r, p.a, p.gamma);
  const double ul = l.rho > 0.0 ? l.mn / l.rho : 0.0;
  const double ur = r.rho > 0.0 ? r.mn / r.rho : 0.0;
  const double cl = sound_of(l.rho, p.a, p.gamma);
  const double cr = sound_of(r.rho, p.a, p.gamma);
  FaceFlux f{};
  if (p.flux == FluxKind::llf) {
    const double s = std::max(std::abs(ul) + cl, std::abs(ur) + cr);
    f.rho = 0.5 * (fl.rho + fr.rho) - 0.5 * s * (r.rho - l.rho);
    f.mn = 0.5 * (fl.mn + fr.mn) - 0.5 * s * (r.mn - l.mn);
    f.mt = 0.5 * (fl.mt + fr.mt) - 0.5 * s * (r.mt - l.mt);
  } else {
    const double sl = std::min(ul - cl, ur - cr);
    const double sr = std::max(ul + cl, ur + cr);
    if (sl >= 0.0) {
      f = fl;
    } else if (sr <= 0.0) {
      f = fr;
    } else {
      const double inv = 1.0 / (sr - sl);
      f.rho = (sr * fl.rho - sl * fr.rho + sl * sr * (r.rho - l.rho)) * inv;
      f.mn = (sr * fl.mn - sl * fr.mn + sl * sr * (r.mn - l.mn)) * inv;
      f.mt = (sr * fl.mt - sl * fr.mt + sl * sr * (r.mt - l.mt)) * inv;
    }
  }
  f.rho -= p.nu * (r.rho - l.rho);
  f.mn -= p.nu * (r.mn - l.mn);
  f.mt -= p.nu * (r.mt - l.mt);
  return f;
}

/// Neighbor of cell index `i` along an axis with `n` cells; nullopt-like -1 means mirror ghost.
inline int wrap(int i, int n, Boundary b) noexcept {
  if (i >= 0 && i < n) return i;
  if (b == Boundary::periodic) return (i + n) % n;
  return -1;
}

/// Face states for the x-face at (i, j) between cells i-1 and i.
inline void x_face_states(const Grid& g, ConservedView u, int i, int j, FaceState& l, FaceState& r) noexcept {
  const int nx = g.nx();
  const Boundary b = g.axis(0).boundary;
  const int il = wrap(i - 1, nx, b);
  const int ir = wrap(i, nx, b);
  if (il >= 0) {
    const std::size_t c = g.index(il, j);
    l = {u.rho[c], u.mx[c], u.my[c]};
  }
  if (ir >= 0) {
    const std::size_t c = g.index(ir, j);
    r = {u.rho[c], u.mx[c], u.my[c]};
  }
  if (il < 0) l = {r.rho, -r.mn, r.mt};
  if (ir < 0) r = {l.rho, -l.mn, l.mt};
}

/// Face states for the y-face at (i, j) between cells j-1 and j; normal momentum is my.
inline void y_face_states(const Grid& g, ConservedView u, int i, int j, FaceState& l, FaceState& r) noexcept {
  const int ny = g.ny();
  const Boundary b = g.axis(1).boundary;
  const int jl = wrap(j - 1, ny, b);
  const int jr = wrap(j, ny, b);
  if (jl >= 0) {
    const std::size_t c = g.index(i, jl);
    l = {u.rho[c], u.my[c], u.mx[c]};
  }
  if (jr >= 0) {
    const std::size_t c = g.index(i, jr);
    r = {u.rho[c], u.my[c], u.mx[c]};
  }
  if (jl < 0) l = {r.rho, -r.mn, r.mt};
  if (jr < 0) r = {l.rho, -l.mn, l.mt};
}

inline void cell_signal_speed(ConservedView u, std::size_t c, double a, double gamma, double& sx, double& sy) noexcept {
  const double rho = u.rho[c];
  if (rho <= 0.0) {
    sx = 0.0;
    sy = 0.0;
    return;
  }
  const double cs = sound_of(rho, a, gamma);
  sx = std::abs(u.mx[c] / rho) + cs;
  sy = std::abs(u.my[c] / rho) + cs;
}

/// Reynolds stress of one cell from K weighted members, written as a sum of
/// nonnegative terms: sum w rho (u - u_bar)(u - u_bar)^T plus the Bregman gaps
/// p(rho) - p(rho_bar) - p'(rho_bar)(rho - rho_bar) on the diagonal.
inline void cell_reynolds(std::span<const ConservedView> members, std::span<const double> weights, std::size_t c,
                          int dim, double a, double gamma,
                          double& rho_bar, double& mx_bar, double& my_bar, double& rxx, double& rxy,
                          double& ryy) noexcept {
  double r = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    r += weights[k] * members[k].rho[c];
    mx += weights[k] * members[k].mx[c];
    my += weights[k] * members[k].my[c];
  }
  double kxx = 0.0, kxy = 0.0, kyy = 0.0, dp = 0.0;
  if (r > 0.0) {
    const double ux = mx / r;
    const double uy = my / r;
    const double pr = pressure_of(r, a, gamma);
    const double slope = a * gamma * std::pow(r, gamma - 1.0);
    for (std::size_t k = 0; k < members.size(); ++k) {
      const ConservedView& m = members[k];
      const double w = weights[k];
      const double rho = m.rho[c];
      if (rho > 0.0) {
        const double dx = m.mx[c] / rho - ux;
        const double dy = m.my[c] / rho - uy;
        kxx += w * rho * dx * dx;
        kxy += w * rho * dx * dy;
        kyy += w * rho * dy * dy;
      }
      dp += w * std::max(0.0, pressure_of(rho, a, gamma) - pr - slope * (rho - r));
    }
  }
  rho_bar = r;
  mx_bar = mx;
  my_bar = my;
  rxx = kxx + dp;
  rxy = kxy;
  ryy = dim == 2 ? kyy + dp : 0.0;
}

}  // namespace dislab::kernels::detail
