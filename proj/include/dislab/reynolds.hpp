#pragma once

#include <cstddef>
#include <vector>

#include "dislab/fields.hpp"

namespace dislab {

/// Symmetric 2x2 matrix; in 1D only `xx` is used.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  [[nodiscard]] double trace(int dim) const noexcept { return dim == 2 ? xx + yy : xx; }
  [[nodiscard]] double min_eigenvalue(int dim) const noexcept;
  [[nodiscard]] double norm(int dim) const noexcept;  ///< Frobenius norm
};

/// Per-cell symmetric stress at one sample time.
struct StressSlice {
  std::vector<double> xx;
  std::vector<double> xy;
  std::vector<double> yy;

  explicit StressSlice(std::size_t n = 0) : xx(n, 0.0), xy(n, 0.0), yy(n, 0.0) {}
  [[nodiscard]] Sym2 at(std::size_t c) const noexcept { return {xx[c], xy[c], yy[c]}; }
  [[nodiscard]] std::size_t size() const noexcept { return xx.size(); }
};

struct PsdReport {
  double worst_relative = 0.0;  ///< min over cells of lambda_min / max(norm, tiny); 0 if all zero
  double worst_absolute = 0.0;  ///< min over cells of lambda_min
  std::size_t time_index = 0;
  std::size_t cell = 0;
  bool symmetric_psd = true;
};

/// Discrete Reynolds stress: one symmetric matrix per cell per sample time.
class ReynoldsField {
 public:
  ReynoldsField(Grid grid, std::vector<double> times, std::vector<StressSlice> slices);

  static ReynoldsField zero(const Grid& grid, std::vector<double> times);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] std::size_t size() const noexcept { return slices_.size(); }
  [[nodiscard]] const StressSlice& slice(std::size_t k) const { return slices_.at(k); }

  /// Integral of trace R over the domain at sample k (midpoint rule).
  [[nodiscard]] double trace_integral(std::size_t k) const;
  [[nodiscard]] bool is_zero() const noexcept;

  /// Cell-wise PSD check with tolerance tol_rel * (matrix norm).
  [[nodiscard]] PsdReport check_psd(double tol_rel = 1e-10) const;

  /// this * alpha + other * beta on identical discretizations.
  [[nodiscard]] ReynoldsField combine(double alpha, const ReynoldsField& other, double beta) const;

  /// Restriction to samples [first, last] with times shifted so `first` becomes 0.
  [[nodiscard]] ReynoldsField shifted(std::size_t first) const;

 private:
  Grid grid_;
  std::vector<double> times_;
  std::vector<StressSlice> slices_;
};

}  // namespace dislab
