#pragma once

#include <string>
#include <vector>

#include "dislab/io.hpp"

namespace dislab::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  int width = 640;
  int height = 400;
};

/// Static SVG line plot; identical input gives identical bytes.
std::string line_plot(const PlotSpec& spec, const std::vector<Series>& series);

enum class PlotKind { energy, defect, profile };
PlotKind plot_kind_from_string(const std::string& s);

/// energy: t,E. defect: t,defect,traceR,slack. profile: i,rho,mx (1D state).
std::string plot_table(const io::CsvTable& table, PlotKind kind);

}  // namespace dislab::svg
