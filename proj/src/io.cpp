#include "dislab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dislab/error.hpp"

namespace dislab::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

std::string state_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "state_%04zu.csv", k);
  return buf;
}

std::string stress_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "R_%04zu.csv", k);
  return buf;
}

json axis_json(const Axis& a) {
  return {{"cells", a.cells}, {"lo", a.lo}, {"hi", a.hi}, {"boundary", to_string(a.boundary)}};
}

[[noreturn]] void meta_error(const fs::path& p, const std::string& what) {
  throw ParseError(p.string() + ": " + what);
}

Axis axis_from_json(const json& j, const fs::path& p) {
  try {
    return Axis{j.at("cells").get<int>(), j.at("lo").get<double>(), j.at("hi").get<double>(),
                boundary_from_string(j.at("boundary").get<std::string>())};
  } catch (const json::exception& e) {
    meta_error(p, std::string("bad grid axis: ") + e.what());
  }
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ParseError(source + ": missing column '" + name + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
  const std::string& s = rows.at(row).at(col);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source + ":" + std::to_string(lines.at(row)) + ": column '" + header.at(col) +
                     "' is not a number: '" + s + "'");
  }
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  CsvTable t;
  t.source = path.string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError(t.source + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                       " fields, found " + std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.lines.push_back(lineno);
  }
  if (t.header.empty()) throw ParseError(t.source + ": empty file");
  return t;
}

void require_columns(const CsvTable& t, const std::vector<std::string>& expected) {
  if (t.header != expected) {
    throw ParseError(t.source + ": expected columns '" + join(expected) + "', found '" + join(t.header) + "'");
  }
}

void write_state_csv(const fs::path& path, const FluidState& state) {
  const Grid& g = state.grid();
  std::string out = g.dim() == 2 ? "i,j,rho,mx,my\n" : "i,rho,mx\n";
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.index(i, j);
      out += std::to_string(i) + ",";
      if (g.dim() == 2) out += std::to_string(j) + ",";
      out += format_double(state.rho()[c]) + "," + format_double(state.mx()[c]);
      if (g.dim() == 2) out += "," + format_double(state.my()[c]);
      out += "\n";
    }
  }
  write_text(path, out);
}

FluidState read_state_csv(const fs::path& path, const Grid& grid) {
  const CsvTable t = read_csv(path);
  const bool two = grid.dim() == 2;
  require_columns(t, two ? std::vector<std::string>{"i", "j", "rho", "mx", "my"}
                         : std::vector<std::string>{"i", "rho", "mx"});
  if (t.rows.size() != grid.size()) {
    throw ParseError(t.source + ": expected " + std::to_string(grid.size()) + " cells, found " +
                     std::to_string(t.rows.size()));
  }
  std::vector<double> rho(grid.size()), mx(grid.size()), my(grid.size(), 0.0);
  std::vector<bool> seen(grid.size(), false);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double fi = t.number(r, 0);
    const double fj = two ? t.number(r, 1) : 0.0;
    const int i = static_cast<int>(fi);
    const int j = static_cast<int>(fj);
    if (fi != i || fj != j || i < 0 || i >= grid.nx() || j < 0 || j >= grid.ny()) {
      throw ParseError(t.source + ":" + std::to_string(t.lines[r]) + ": cell index out of range");
    }
    const std::size_t c = grid.index(i, j);
    if (seen[c]) throw ParseError(t.source + ":" + std::to_string(t.lines[r]) + ": duplicate cell");
    seen[c] = true;
    const std::size_t off = two ? 2 : 1;
    rho[c] = t.number(r, off);
    mx[c] = t.number(r, off + 1);
    if (two) my[c] = t.number(r, off + 2);
  }
  try {
    return FluidState(grid, std::move(rho), std::move(mx), std::move(my));
  } catch (const DomainError& e) {
    throw ParseError(t.source + ": " + e.what());
  }
}

void write_bundle(const fs::path& dir, const Trajectory& traj) {
  fs::create_directories(dir / "states");
  const Grid& g = traj.grid();
  json grid = {{"dim", g.dim()}, {"x", axis_json(g.axis(0))}};
  if (g.dim() == 2) grid["y"] = axis_json(g.axis(1));
  json states = json::array();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const std::string name = "states/" + state_name(k);
    write_state_csv(dir / name, traj.state(k));
    states.push_back(name);
  }
  const json meta = {{"format", "dislab-bundle"},
                     {"version", 1},
                     {"grid", grid},
                     {"law", {{"a", traj.law().a()}, {"gamma", traj.law().gamma()}}},
                     {"times", traj.times()},
                     {"initial_energy", traj.initial_energy()},
                     {"energy_source", to_string(traj.energy_source())},
                     {"states", states}};
  write_text(dir / "meta.json", meta.dump(2) + "\n");
  std::string energy = "t,E\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    energy += format_double(traj.times()[k]) + "," + format_double(traj.energy_after(k)) + "\n";
  }
  write_text(dir / "energy.csv", energy);
}

Trajectory read_bundle(const fs::path& dir) {
  const fs::path meta_path = dir / "meta.json";
  json meta;
  try {
    meta = json::parse(read_text(meta_path));
  } catch (const json::parse_error& e) {
    meta_error(meta_path, e.what());
  }
  try {
    if (meta.value("format", std::string()) != "dislab-bundle") meta_error(meta_path, "not a trajectory bundle");
    const json& gj = meta.at("grid");
    const int dim = gj.at("dim").get<int>();
    if (dim != 1 && dim != 2) meta_error(meta_path, "grid.dim must be 1 or 2");
    const Grid grid = dim == 1 ? Grid(axis_from_json(gj.at("x"), meta_path))
                               : Grid(axis_from_json(gj.at("x"), meta_path), axis_from_json(gj.at("y"), meta_path));
    const GasLaw law(meta.at("law").at("a").get<double>(), meta.at("law").at("gamma").get<double>());
    const auto times = meta.at("times").get<std::vector<double>>();
    const auto names = meta.at("states").get<std::vector<std::string>>();
    if (names.size() != times.size()) meta_error(meta_path, "states and times differ in length");
    std::vector<FluidState> states;
    for (const std::string& n : names) states.push_back(read_state_csv(dir / n, grid));
    const CsvTable et = read_csv(dir / "energy.csv");
    require_columns(et, {"t", "E"});
    if (et.rows.size() != times.size()) {
      throw ParseError(et.source + ": expected " + std::to_string(times.size()) + " rows, found " +
                       std::to_string(et.rows.size()));
    }
    std::vector<double> energy(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double t = et.number(k, 0);
      if (std::abs(t - times[k]) > 1e-12 * std::max(1.0, std::abs(times[k]))) {
        throw ParseError(et.source + ":" + std::to_string(et.lines[k]) + ": time does not match meta.json");
      }
      energy[k] = et.number(k, 1);
    }
    return Trajectory(law, times, std::move(states), meta.at("initial_energy").get<double>(), std::move(energy),
                      energy_source_from_string(meta.at("energy_source").get<std::string>()));
  } catch (const json::exception& e) {
    meta_error(meta_path, e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    meta_error(meta_path, e.what());
  }
}

void write_reynolds(const fs::path& dir, const ReynoldsField& field) {
  const Grid& g = field.grid();
  for (std::size_t k = 0; k < field.size(); ++k) {
    const StressSlice& s = field.slice(k);
    std::string out = g.dim() == 2 ? "i,j,xx,xy,yy\n" : "i,xx\n";
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        const std::size_t c = g.index(i, j);
        out += std::to_string(i) + ",";
        if (g.dim() == 2) {
          out += std::to_string(j) + "," + format_double(s.xx[c]) + "," + format_double(s.xy[c]) + "," +
                 format_double(s.yy[c]);
        } else {
          out += format_double(s.xx[c]);
        }
        out += "\n";
      }
    }
    write_text(dir / "reynolds" / stress_name(k), out);
  }
}

bool has_reynolds(const fs::path& dir) { return fs::exists(dir / "reynolds" / stress_name(0)); }

ReynoldsField read_reynolds(const fs::path& dir, const Grid& grid, const std::vector<double>& times) {
  std::vector<StressSlice> slices;
  const bool two = grid.dim() == 2;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const CsvTable t = read_csv(dir / "reynolds" / stress_name(k));
    require_columns(t, two ? std::vector<std::string>{"i", "j", "xx", "xy", "yy"}
                           : std::vector<std::string>{"i", "xx"});
    if (t.rows.size() != grid.size()) throw ParseError(t.source + ": wrong number of cells");
    StressSlice s(grid.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const int i = static_cast<int>(t.number(r, 0));
      const int j = two ? static_cast<int>(t.number(r, 1)) : 0;
      if (i < 0 || i >= grid.nx() || j < 0 || j >= grid.ny()) {
        throw ParseError(t.source + ":" + std::to_string(t.lines[r]) + ": cell index out of range");
      }
      const std::size_t c = grid.index(i, j);
      if (two) {
        s.xx[c] = t.number(r, 2);
        s.xy[c] = t.number(r, 3);
        s.yy[c] = t.number(r, 4);
      } else {
        s.xx[c] = t.number(r, 1);
      }
    }
    slices.push_back(std::move(s));
  }
  return ReynoldsField(grid, times, std::move(slices));
}

void write_slack_csv(const fs::path& path, const std::vector<CompatibilitySlack>& rows) {
  std::string out = "t,defect,traceR,slack\n";
  for (const CompatibilitySlack& s : rows) {
    out += format_double(s.t) + "," + format_double(s.defect) + "," + format_double(s.trace) + "," +
           format_double(s.slack) + "\n";
  }
  write_text(path, out);
}

void write_certificate(const fs::path& dir, const DissipativeCertificate& cert) {
  json checks = json::array();
  for (const CheckResult& c : cert.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  const json j = {{"pass", cert.pass},
                  {"energy_source", to_string(cert.energy_source)},
                  {"checks", checks},
                  {"momentum_residual_without_reynolds", cert.momentum_without_reynolds},
                  {"residuals", {{"continuity", cert.residuals.continuity}, {"momentum", cert.residuals.momentum}}}};
  write_text(dir / "certificate.json", j.dump(2) + "\n");
  write_slack_csv(dir / "certificate.csv", cert.per_time);
}

void write_selection(const fs::path& dir, const SelectionReport& report, const MinimizerVerdict* verdict) {
  std::string csv = "member,F1,survived,F2,selected\n";
  json members = json::array();
  for (std::size_t i = 0; i < report.f1.size(); ++i) {
    const bool sel = i == report.selected;
    csv += std::to_string(i) + "," + format_double(report.f1[i]) + "," + (report.survived[i] ? "1" : "0") + "," +
           format_double(report.f2[i]) + "," + (sel ? "1" : "0") + "\n";
    members.push_back({{"member", i},
                       {"F1", report.f1[i]},
                       {"survived", static_cast<bool>(report.survived[i])},
                       {"F2", report.f2[i]},
                       {"selected", sel}});
  }
  json j = {{"variant", to_string(report.variant)},
            {"q", report.q},
            {"selected", report.selected},
            {"tie", report.tie},
            {"f2_ties", report.f2_ties},
            {"members", members}};
  if (verdict) {
    json comp = json::array();
    for (const CompetitorBound& b : verdict->competitors) {
      comp.push_back({{"member", b.index},
                      {"lambda_lower", b.lambda_lower ? json(*b.lambda_lower) : json(nullptr)}});
    }
    j["absolute_minimizer"] = {{"verdict", verdict->absolute}, {"competitors", comp}};
  }
  write_text(dir / "selection.json", j.dump(2) + "\n");
  write_text(dir / "selection.csv", csv);
}

void write_candidate_set(const fs::path& dir, const std::vector<Trajectory>& members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "member_%03zu", i);
    write_bundle(dir / buf, members[i]);
  }
}

std::vector<Trajectory> read_candidate_set(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ParseError("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> subdirs;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && e.path().filename().string().rfind("member_", 0) == 0) subdirs.push_back(e.path());
  }
  std::sort(subdirs.begin(), subdirs.end());
  if (subdirs.empty()) throw ParseError("'" + dir.string() + "' contains no member_* bundles");
  std::vector<Trajectory> out;
  for (const fs::path& p : subdirs) out.push_back(read_bundle(p));
  return out;
}

}  // namespace dislab::io
