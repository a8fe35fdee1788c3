#include "kernel_detail.hpp"

namespace dislab::kernels::serial {

SignalSpeeds max_signal_speed(const Grid& grid, ConservedView u, double a, double gamma) {
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    double sx = 0.0;
    double sy = 0.0;
    detail::cell_signal_speed(u, c, a, gamma, sx, sy);
    mx = std::max(mx, sx);
    my = std::max(my, sy);
  }
  return {mx, grid.dim() == 2 ? my : 0.0};
}

void fv_rate(const Grid& grid, ConservedView u, const FluxParams& params, ConservedSpan rate) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  const std::size_t nfx = static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny);
  std::vector<detail::FaceFlux> fx(nfx);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      detail::FaceState l{}, r{};
      detail::x_face_states(grid, u, i, j, l, r);
      fx[static_cast<std::size_t>(j) * (nx + 1) + i] = detail::numerical_flux(l, r, params);
    }
  }
  const double inv_dx = 1.0 / grid.dx();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = grid.index(i, j);
      const auto& fl = fx[static_cast<std::size_t>(j) * (nx + 1) + i];
      const auto& fr = fx[static_cast<std::size_t>(j) * (nx + 1) + i + 1];
      rate.rho[c] = -(fr.rho - fl.rho) * inv_dx;
      rate.mx[c] = -(fr.mn - fl.mn) * inv_dx;
      rate.my[c] = grid.dim() == 2 ? -(fr.mt - fl.mt) * inv_dx : 0.0;
    }
  }
  if (grid.dim() == 1) return;

  std::vector<detail::FaceFlux> fy(static_cast<std::size_t>(ny + 1) * static_cast<std::size_t>(nx));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      detail::FaceState l{}, r{};
      detail::y_face_states(grid, u, i, j, l, r);
      fy[static_cast<std::size_t>(j) * nx + i] = detail::numerical_flux(l, r, params);
    }
  }
  const double inv_dy = 1.0 / grid.dy();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = grid.index(i, j);
      const auto& gl = fy[static_cast<std::size_t>(j) * nx + i];
      const auto& gr = fy[static_cast<std::size_t>(j + 1) * nx + i];
      rate.rho[c] -= (gr.rho - gl.rho) * inv_dy;
      rate.my[c] -= (gr.mn - gl.mn) * inv_dy;
      rate.mx[c] -= (gr.mt - gl.mt) * inv_dy;
    }
  }
}

void reynolds_stress(const Grid& grid, std::span<const ConservedView> members, std::span<const double> weights,
                     double a, double gamma, ConservedSpan mean, StressSpan stress) {
  for (std::size_t c = 0; c < grid.size(); ++c) {
    detail::cell_reynolds(members, weights, c, grid.dim(), a, gamma, mean.rho[c], mean.mx[c], mean.my[c], stress.xx[c],
                          stress.xy[c], stress.yy[c]);
  }
}

}  // namespace dislab::kernels::serial
