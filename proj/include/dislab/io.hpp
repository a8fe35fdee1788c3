#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dislab/dissipative.hpp"
#include "dislab/reynolds.hpp"
#include "dislab/selection.hpp"
#include "dislab/trajectory.hpp"

namespace dislab::io {

namespace fs = std::filesystem;

/// Shortest round-trip text for a double ("%.17g").
std::string format_double(double v);

/// Parsed CSV with a header row; cells keep their text.
struct CsvTable {
  std::string source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  ///< 1-based file line of each row

  [[nodiscard]] std::size_t column(const std::string& name) const;
  [[nodiscard]] double number(std::size_t row, std::size_t col) const;
};

CsvTable read_csv(const fs::path& path);
/// Throws ParseError naming the expected columns unless the header matches exactly.
void require_columns(const CsvTable& t, const std::vector<std::string>& expected);

void write_state_csv(const fs::path& path, const FluidState& state);
FluidState read_state_csv(const fs::path& path, const Grid& grid);

/// Bundle layout: meta.json, energy.csv (t,E), states/state_NNNN.csv.
void write_bundle(const fs::path& dir, const Trajectory& traj);
Trajectory read_bundle(const fs::path& dir);

/// reynolds/R_NNNN.csv inside a bundle directory.
void write_reynolds(const fs::path& dir, const ReynoldsField& field);
ReynoldsField read_reynolds(const fs::path& dir, const Grid& grid, const std::vector<double>& times);
bool has_reynolds(const fs::path& dir);

/// t,defect,traceR,slack
void write_slack_csv(const fs::path& path, const std::vector<CompatibilitySlack>& rows);
void write_certificate(const fs::path& dir, const DissipativeCertificate& cert);

/// member,F1,survived,F2,selected
void write_selection(const fs::path& dir, const SelectionReport& report, const MinimizerVerdict* verdict);

/// member_NNN subdirectories, each a bundle.
void write_candidate_set(const fs::path& dir, const std::vector<Trajectory>& members);
std::vector<Trajectory> read_candidate_set(const fs::path& dir);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace dislab::io
