#include "dislab/reynolds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dislab {

double Sym2::min_eigenvalue(int dim) const noexcept {
  if (dim == 1) return xx;
  const double mean = 0.5 * (xx + yy);
  const double half_diff = 0.5 * (xx - yy);
  return mean - std::hypot(half_diff, xy);
}

double Sym2::norm(int dim) const noexcept {
  if (dim == 1) return std::abs(xx);
  return std::sqrt(xx * xx + 2.0 * xy * xy + yy * yy);
}

ReynoldsField::ReynoldsField(Grid grid, std::vector<double> times, std::vector<StressSlice> slices)
    : grid_(std::move(grid)), times_(std::move(times)), slices_(std::move(slices)) {
  if (times_.size() != slices_.size()) {
    throw MismatchError("ReynoldsField: number of slices does not match number of sample times");
  }
  for (const auto& s : slices_) {
    if (s.xx.size() != grid_.size() || s.xy.size() != grid_.size() || s.yy.size() != grid_.size()) {
      throw MismatchError("ReynoldsField: slice size does not match the grid");
    }
  }
}

ReynoldsField ReynoldsField::zero(const Grid& grid, std::vector<double> times) {
  std::vector<StressSlice> slices(times.size(), StressSlice(grid.size()));
  return ReynoldsField(grid, std::move(times), std::move(slices));
}

double ReynoldsField::trace_integral(std::size_t k) const {
  const StressSlice& s = slices_.at(k);
  double sum = 0.0;
  for (std::size_t c = 0; c < s.size(); ++c) sum += s.at(c).trace(grid_.dim());
  return sum * grid_.cell_volume();
}

bool ReynoldsField::is_zero() const noexcept {
  for (const auto& s : slices_) {
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (s.xx[c] != 0.0 || s.xy[c] != 0.0 || s.yy[c] != 0.0) return false;
    }
  }
  return true;
}

PsdReport ReynoldsField::check_psd(double tol_rel) const {
  PsdReport rep;
  const int d = grid_.dim();
  for (std::size_t k = 0; k < slices_.size(); ++k) {
    const StressSlice& s = slices_[k];
    for (std::size_t c = 0; c < s.size(); ++c) {
      const Sym2 m = s.at(c);
      const double lmin = m.min_eigenvalue(d);
      const double nrm = m.norm(d);
      const double rel = nrm > 0.0 ? lmin / nrm : 0.0;
      rep.worst_absolute = std::min(rep.worst_absolute, lmin);
      if (rel < rep.worst_relative) {
        rep.worst_relative = rel;
        rep.time_index = k;
        rep.cell = c;
      }
      if (lmin < -tol_rel * nrm) rep.symmetric_psd = false;
    }
  }
  return rep;
}

ReynoldsField ReynoldsField::combine(double alpha, const ReynoldsField& other, double beta) const {
  if (!(grid_ == other.grid_) || times_ != other.times_) {
    throw MismatchError("ReynoldsField::combine: different discretizations");
  }
  std::vector<StressSlice> out(slices_.size(), StressSlice(grid_.size()));
  for (std::size_t k = 0; k < slices_.size(); ++k) {
    for (std::size_t c = 0; c < grid_.size(); ++c) {
      out[k].xx[c] = alpha * slices_[k].xx[c] + beta * other.slices_[k].xx[c];
      out[k].xy[c] = alpha * slices_[k].xy[c] + beta * other.slices_[k].xy[c];
      out[k].yy[c] = alpha * slices_[k].yy[c] + beta * other.slices_[k].yy[c];
    }
  }
  return ReynoldsField(grid_, times_, std::move(out));
}

ReynoldsField ReynoldsField::shifted(std::size_t first) const {
  if (first >= times_.size()) throw DomainError("ReynoldsField::shifted: index beyond horizon");
  std::vector<double> t;
  std::vector<StressSlice> s;
  for (std::size_t k = first; k < times_.size(); ++k) {
    t.push_back(times_[k] - times_[first]);
    s.push_back(slices_[k]);
  }
  return ReynoldsField(grid_, std::move(t), std::move(s));
}

}  // namespace dislab
