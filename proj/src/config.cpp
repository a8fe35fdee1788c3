#include "dislab/config.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <json.hpp>

#include "dislab/error.hpp"
#include "dislab/io.hpp"

namespace dislab {

namespace {

using nlohmann::json;

// Object reader that records consumed keys so unknown keys can be rejected.
class Node {
 public:
  Node(const json& j, std::string path, const std::string& origin) : j_(j), path_(std::move(path)), origin_(origin) {
    if (!j_.is_object()) fail(path_, "must be an object");
  }

  [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }

  Node child(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) fail(name(key), "missing required field");
    return Node(j_.at(key), name(key), origin_);
  }

  double number(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) fail(name(key), "missing required field");
    const json& v = j_.at(key);
    if (!v.is_number()) fail(name(key), "must be a number");
    return v.get<double>();
  }

  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  int integer(const std::string& key) {
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(name(key), "must be an integer");
    return static_cast<int>(v);
  }

  int integer(const std::string& key, int fallback) { return has(key) ? integer(key) : fallback; }

  std::string text(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) fail(name(key), "missing required field");
    const json& v = j_.at(key);
    if (!v.is_string()) fail(name(key), "must be a string");
    return v.get<std::string>();
  }

  std::string text(const std::string& key, const std::string& fallback) { return has(key) ? text(key) : fallback; }

  std::vector<double> numbers(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) fail(name(key), "missing required field");
    const json& v = j_.at(key);
    if (!v.is_array()) fail(name(key), "must be an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) fail(name(key), "must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!used_.count(item.key())) fail(name(item.key()), "unknown key");
    }
  }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ParseError(origin_ + ": " + field + ": " + what);
  }

  [[nodiscard]] std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  template <typename F>
  auto guard(const std::string& key, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(name(key), e.what());
    }
  }

 private:
  const json& j_;
  std::string path_;
  const std::string& origin_;
  std::set<std::string> used_;
};

Axis read_axis(Node n) {
  Axis a;
  a.cells = n.integer("cells");
  a.lo = n.number("lo", 0.0);
  a.hi = n.number("hi", 1.0);
  const std::string b = n.text("boundary", "reflective");
  a.boundary = n.guard("boundary", [&] { return boundary_from_string(b); });
  n.finish();
  if (a.cells < 1) n.fail(n.name("cells"), "must be positive");
  if (!(a.hi > a.lo)) n.fail(n.name("hi"), "must exceed lo");
  return a;
}

InitialSpec read_initial(Node n, const std::filesystem::path& base) {
  InitialSpec s;
  if (n.has("file")) {
    s.preset = "file";
    s.file = n.text("file");
    if (s.file.is_relative() && !base.empty()) s.file = base / s.file;
    n.finish();
    return s;
  }
  s.preset = n.text("preset");
  if (s.preset == "constant") {
    s.rho = n.number("rho", s.rho);
    s.mx = n.number("mx", s.mx);
    s.my = n.number("my", s.my);
  } else if (s.preset == "acoustic") {
    s.rho = n.number("rho", s.rho);
    s.amplitude = n.number("amplitude", s.amplitude);
    s.mode = n.integer("mode", s.mode);
  } else if (s.preset == "riemann") {
    s.rho_l = n.number("rho_l");
    s.u_l = n.number("u_l");
    s.rho_r = n.number("rho_r");
    s.u_r = n.number("u_r");
    s.x0 = n.optional_number("x0");
  } else if (s.preset == "random") {
    s.rho_min = n.number("rho_min", s.rho_min);
    s.rho_max = n.number("rho_max", s.rho_max);
    s.m_max = n.number("m_max", s.m_max);
  } else {
    n.fail(n.name("preset"), "unknown preset '" + s.preset + "' (constant, acoustic, riemann, random)");
  }
  n.finish();
  return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin, const std::filesystem::path& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  ExperimentConfig cfg;
  Node root(doc, "", origin);

  {
    Node g = root.child("grid");
    const Axis x = read_axis(g.child("x"));
    if (g.has("y")) {
      const Axis y = read_axis(g.child("y"));
      cfg.grid = Grid(x, y);
    } else {
      cfg.grid = Grid(x);
    }
    g.finish();
  }
  {
    Node l = root.child("law");
    const double a = l.number("a");
    const double gamma = l.number("gamma");
    l.finish();
    cfg.law = root.guard("law", [&] { return GasLaw(a, gamma); });
  }
  if (root.has("scheme")) {
    Node s = root.child("scheme");
    const std::string flux = s.text("flux", "llf");
    cfg.scheme.flux = s.guard("flux", [&] { return flux_from_string(flux); });
    cfg.scheme.nu = s.number("nu", cfg.scheme.nu);
    cfg.scheme.cfl = s.number("cfl", cfg.scheme.cfl);
    const std::string exec = s.text("execution", "parallel");
    if (exec == "serial") {
      cfg.scheme.exec = Execution::serial;
    } else if (exec != "parallel") {
      s.fail(s.name("execution"), "must be 'serial' or 'parallel'");
    }
    s.finish();
    root.guard("scheme", [&] {
      cfg.scheme.validate();
      return 0;
    });
  }
  for (const char* key : {"nu", "cfl"}) {
    if (!root.has(key)) continue;
    const double v = root.number(key);
    (std::string(key) == "nu" ? cfg.scheme.nu : cfg.scheme.cfl) = v;
    root.guard(key, [&] {
      cfg.scheme.validate();
      return 0;
    });
  }
  cfg.t_end = root.number("t_end");
  cfg.sample_dt = root.number("sample_dt");
  if (!(cfg.t_end > 0.0)) root.fail("t_end", "must be positive");
  if (!(cfg.sample_dt > 0.0)) root.fail("sample_dt", "must be positive");
  cfg.initial = read_initial(root.child("initial"), base);
  cfg.E0 = root.optional_number("E0");
  if (root.has("ensemble")) {
    Node e = root.child("ensemble");
    cfg.ensemble_nu = e.numbers("nu");
    e.finish();
    if (cfg.ensemble_nu.empty()) e.fail("ensemble.nu", "needs at least one viscosity value");
    for (double nu : cfg.ensemble_nu) {
      if (!(nu >= 0.0)) e.fail("ensemble.nu", "viscosities must be nonnegative");
    }
  }
  if (root.has("selection")) {
    Node s = root.child("selection");
    const std::string v = s.text("variant", "full");
    cfg.selection.variant = s.guard("variant", [&] { return f2_variant_from_string(v); });
    cfg.selection.q = s.optional_number("q");
    cfg.selection.tie_rel = s.number("tie_rel", cfg.selection.tie_rel);
    if (s.has("lambda_grid")) cfg.selection.lambda_grid = s.numbers("lambda_grid");
    cfg.selection.tol = s.number("tol", cfg.selection.tol);
    s.finish();
  }
  if (root.has("certify")) {
    Node c = root.child("certify");
    CertifyTolerances& t = cfg.certify.tolerances;
    t.residual = c.number("residual", t.residual);
    cfg.certify.residual_per_dx = c.number("residual_per_dx", cfg.certify.residual_per_dx);
    t.monotone_rel = c.number("monotone_rel", t.monotone_rel);
    t.psd_rel = c.number("psd_rel", t.psd_rel);
    t.slack_rel = c.number("slack_rel", t.slack_rel);
    t.defect_rel = c.number("defect_rel", t.defect_rel);
    t.r_override = c.optional_number("r_override");
    c.finish();
  }
  if (root.has("dt1")) {
    Node d = root.child("dt1");
    cfg.dt1_delta_rel = d.number("delta_rel", cfg.dt1_delta_rel);
    d.finish();
    if (!(cfg.dt1_delta_rel > 0.0)) root.fail("dt1.delta_rel", "must be positive");
  }
  if (root.has("dt2")) {
    Node d = root.child("dt2");
    cfg.dt2_T = d.optional_number("T");
    d.finish();
  }
  if (root.has("seed")) {
    const double s = root.number("seed");
    if (s < 0 || s != std::floor(s)) root.fail("seed", "must be a nonnegative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  root.finish();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(io::read_text(path), path.string(), path.parent_path());
}

DataTriple initial_data(const ExperimentConfig& cfg) {
  const Grid& g = cfg.grid;
  const InitialSpec& s = cfg.initial;
  const std::size_t n = g.size();
  std::vector<double> rho(n), mx(n, 0.0), my(n, 0.0);
  if (s.preset == "file") {
    FluidState st = io::read_state_csv(s.file, g);
    rho.assign(st.rho().begin(), st.rho().end());
    mx.assign(st.mx().begin(), st.mx().end());
    my.assign(st.my().begin(), st.my().end());
  } else if (s.preset == "constant") {
    std::fill(rho.begin(), rho.end(), s.rho);
    std::fill(mx.begin(), mx.end(), s.mx);
    if (g.dim() == 2) std::fill(my.begin(), my.end(), s.my);
  } else if (s.preset == "acoustic") {
    const double c0 = sound_speed(s.rho, cfg.law);
    const double L = g.axis(0).length();
    for (std::size_t c = 0; c < n; ++c) {
      const double phase = 2.0 * std::numbers::pi * s.mode * (g.x(c) - g.axis(0).lo) / L;
      rho[c] = s.rho * (1.0 + s.amplitude * std::sin(phase));
      const double u = 2.0 / (cfg.law.gamma() - 1.0) * (sound_speed(rho[c], cfg.law) - c0);
      mx[c] = rho[c] * u;
    }
  } else if (s.preset == "riemann") {
    const double x0 = s.x0 ? *s.x0 : 0.5 * (g.axis(0).lo + g.axis(0).hi);
    for (std::size_t c = 0; c < n; ++c) {
      const bool left = g.x(c) < x0;
      rho[c] = left ? s.rho_l : s.rho_r;
      mx[c] = rho[c] * (left ? s.u_l : s.u_r);
    }
  } else if (s.preset == "random") {
    std::mt19937_64 gen(cfg.seed);
    const auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (std::size_t c = 0; c < n; ++c) {
      rho[c] = s.rho_min + (s.rho_max - s.rho_min) * unit();
      mx[c] = s.m_max * (2.0 * unit() - 1.0);
      if (g.dim() == 2) my[c] = s.m_max * (2.0 * unit() - 1.0);
    }
  } else {
    throw DomainError("unknown initial preset '" + s.preset + "'");
  }
  FluidState state(g, std::move(rho), std::move(mx), g.dim() == 2 ? std::move(my) : std::vector<double>{});
  const double mean = integrate_energy(state, cfg.law).value();
  return DataTriple{std::move(state), cfg.E0 ? *cfg.E0 : mean};
}

CertifyTolerances scaled_tolerances(const CertifySettings& s, const Grid& grid, double energy_scale) {
  CertifyTolerances t = s.tolerances;
  t.residual += s.residual_per_dx * grid.min_spacing() * energy_scale;
  return t;
}

}  // namespace dislab
