#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dislab/config.hpp"
#include "dislab/dissipative.hpp"
#include "dislab/error.hpp"
#include "dislab/experiments.hpp"
#include "dislab/io.hpp"
#include "dislab/selection.hpp"
#include "dislab/solver.hpp"
#include "dislab/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dislab;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kRuntime = 3;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string input;
  std::string reynolds;
  std::string kind = "energy";
  std::optional<double> residual_tol;
  std::optional<double> residual_per_dx;
  bool point_samples = false;
};

ExperimentConfig config_of(const Options& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

void write_summary(const fs::path& path, const json& j) { io::write_text(path, j.dump(2) + "\n"); }

int cmd_run(const Options& o) {
  const ExperimentConfig cfg = config_of(o);
  const Trajectory traj = run(initial_data(cfg), cfg.scheme, cfg.law, cfg.t_end, cfg.sample_dt);
  io::write_bundle(o.out, traj);
  std::cout << "wrote bundle with " << traj.size() << " samples to " << o.out << "\n";
  return kOk;
}

int cmd_ensemble(const Options& o) {
  const ExperimentConfig cfg = config_of(o);
  if (cfg.ensemble_nu.empty()) throw ParseError(o.config + ": ensemble.nu: missing required field");
  const EnsembleRun er = run_ensemble(initial_data(cfg), cfg.law, cfg.scheme, cfg.ensemble_nu, cfg.t_end,
                                      cfg.sample_dt, cfg.certify.tolerances.r_override);
  const fs::path out(o.out);
  io::write_candidate_set(out / "members", er.members);
  io::write_bundle(out / "average", er.estimate.average);
  io::write_reynolds(out / "average", er.estimate.reynolds);
  io::write_slack_csv(out / "defect.csv", er.slack);
  double worst = 0.0;
  bool pass = true;
  for (const CompatibilitySlack& s : er.slack) {
    worst = std::min(worst, s.slack);
    pass = pass && s.pass;
  }
  const PsdReport psd = er.estimate.reynolds.check_psd();
  write_summary(out / "summary.json", {{"members", er.members.size()},
                                       {"nu", cfg.ensemble_nu},
                                       {"min_slack", worst},
                                       {"slack_tolerance", 1e-8 * er.estimate.average.energy_scale()},
                                       {"psd", psd.symmetric_psd},
                                       {"pass", pass && psd.symmetric_psd}});
  std::cout << "ensemble of " << er.members.size() << " members, min slack " << io::format_double(worst)
            << (pass ? " (pass)\n" : " (FAIL)\n");
  return pass && psd.symmetric_psd ? kOk : kFailed;
}

int cmd_diagnose(const Options& o) {
  const Trajectory traj = io::read_bundle(o.input);
  CertifySettings settings;
  if (!o.config.empty()) settings = config_of(o).certify;
  if (o.residual_tol) settings.tolerances.residual = *o.residual_tol;
  if (o.residual_per_dx) settings.residual_per_dx = *o.residual_per_dx;
  const fs::path rdir = o.reynolds.empty() ? fs::path(o.input) : fs::path(o.reynolds);
  const ReynoldsField reynolds = io::has_reynolds(rdir) ? io::read_reynolds(rdir, traj.grid(), traj.times())
                                                        : ReynoldsField::zero(traj.grid(), traj.times());
  std::vector<TestFunction> dict = default_dictionary(traj.grid(), traj.horizon(), false);
  for (TestFunction& f : default_dictionary(traj.grid(), traj.horizon(), true)) dict.push_back(f);
  const CertifyTolerances tol = scaled_tolerances(settings, traj.grid(), traj.energy_scale());
  const DissipativeCertificate cert = certify(traj, reynolds, dict, tol);
  io::write_certificate(o.out, cert);
  for (const CheckResult& c : cert.checks) {
    std::printf("%-22s %s value=%.6g tol=%.3g\n", c.name.c_str(), c.pass ? "pass" : "FAIL", c.value, c.tolerance);
  }
  std::printf("certificate: %s (energy source: %s)\n", cert.pass ? "pass" : "FAIL", to_string(cert.energy_source));
  return cert.pass ? kOk : kFailed;
}

int cmd_select(const Options& o) {
  SelectionSettings s;
  if (!o.config.empty()) s = config_of(o).selection;
  std::vector<Trajectory> members = io::read_candidate_set(o.input);
  const CandidateSet set(std::move(members));
  const SelectionReport rep = select(set, s.variant, s.q, s.tie_rel);
  const MinimizerVerdict verdict = is_absolute_minimizer(rep.selected, set, s.lambda_grid, s.tol);
  io::write_selection(o.out, rep, &verdict);
  std::cout << "selected member " << rep.selected << (rep.tie ? " (F2 tie)" : "")
            << ", absolute minimizer on grid: " << (verdict.absolute ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_riemann(const Options& o) {
  const ExperimentConfig cfg = config_of(o);
  const Trajectory traj = riemann_trajectory(cfg, !o.point_samples);
  io::write_bundle(o.out, traj);
  const RiemannData rd{cfg.initial.rho_l, cfg.initial.u_l, cfg.initial.rho_r, cfg.initial.u_r, cfg.law};
  const ExactRiemann ex(rd);
  const auto wave = [](WaveKind w) { return w == WaveKind::shock ? "shock" : "rarefaction"; };
  write_summary(fs::path(o.out) / "riemann.json", {{"rho_star", ex.star_density()},
                                                   {"u_star", ex.star_velocity()},
                                                   {"left_wave", wave(ex.left_wave())},
                                                   {"right_wave", wave(ex.right_wave())}});
  std::cout << "rho* = " << io::format_double(ex.star_density()) << ", u* = " << io::format_double(ex.star_velocity())
            << "\n";
  return kOk;
}

int cmd_dt1(const Options& o) {
  const ExperimentConfig cfg = config_of(o);
  const Dt1Result r = dt1_demo(cfg);
  const fs::path out(o.out);
  io::write_bundle(out / "trajectory", r.trajectory);
  io::write_reynolds(out / "trajectory", r.reynolds);
  std::vector<CompatibilitySlack> rows;
  for (double t : r.trajectory.times()) {
    rows.push_back(check_compatibility(r.trajectory, r.reynolds, t, 1e-8 * r.trajectory.energy_scale(),
                                       cfg.certify.tolerances.r_override));
  }
  io::write_slack_csv(out / "defect.csv", rows);
  const bool pass = r.max_defect <= r.delta;
  write_summary(out / "summary.json", {{"delta", r.delta},
                                       {"max_defect", r.max_defect},
                                       {"reset_times", r.reset_times},
                                       {"pass", pass}});
  std::cout << r.reset_times.size() << " resets, max defect " << io::format_double(r.max_defect) << " vs delta "
            << io::format_double(r.delta) << (pass ? " (pass)\n" : " (FAIL)\n");
  return pass ? kOk : kFailed;
}

int cmd_dt2(const Options& o) {
  const ExperimentConfig cfg = config_of(o);
  const Dt2Result r = dt2_demo(cfg);
  const fs::path out(o.out);
  io::write_bundle(out / "original", r.original);
  io::write_bundle(out / "competitor", r.improvement.competitor);
  json witness = nullptr;
  if (r.improvement.order.witness) {
    witness = {{"start", r.improvement.order.witness->start}, {"delta", r.improvement.order.witness->delta}};
  }
  write_summary(out / "summary.json", {{"T", r.T},
                                       {"epsilon", r.improvement.epsilon},
                                       {"relation", to_string(r.improvement.order.relation)},
                                       {"witness", witness},
                                       {"window", {{"start", r.improvement.window.start},
                                                   {"delta", r.improvement.window.delta}}},
                                       {"min_gap", r.improvement.min_gap},
                                       {"pass", r.pass}});
  std::cout << "T = " << io::format_double(r.T) << ", epsilon = " << io::format_double(r.improvement.epsilon)
            << ", relation " << to_string(r.improvement.order.relation) << ", min gap "
            << io::format_double(r.improvement.min_gap) << (r.pass ? " (pass)\n" : " (FAIL)\n");
  return r.pass ? kOk : kFailed;
}

int cmd_plot(const Options& o) {
  const io::CsvTable table = io::read_csv(o.input);
  io::write_text(o.out, svg::plot_table(table, svg::plot_kind_from_string(o.kind)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative-solution laboratory for the barotropic Euler system"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options&) = nullptr;

  const auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config, "experiment configuration (JSON)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory")->required();
    sub->add_option("--seed", o.seed, "random seed (overrides the config)");
  };

  auto* run_cmd = app.add_subcommand("run", "run the finite-volume solver and write a trajectory bundle");
  add_common(run_cmd, true);
  run_cmd->callback([&] { handler = cmd_run; });

  auto* ens = app.add_subcommand("ensemble", "viscosity ensemble, Reynolds stress and defect table");
  add_common(ens, true);
  ens->callback([&] { handler = cmd_ensemble; });

  auto* diag = app.add_subcommand("diagnose", "certify a trajectory bundle");
  add_common(diag, false);
  diag->add_option("bundle", o.input, "trajectory bundle directory")->required()->check(CLI::ExistingDirectory);
  diag->add_option("--reynolds", o.reynolds, "directory holding reynolds/R_*.csv");
  diag->add_option("--residual-tol", o.residual_tol, "absolute residual tolerance");
  diag->add_option("--residual-per-dx", o.residual_per_dx, "additional residual tolerance per unit dx");
  diag->callback([&] { handler = cmd_diagnose; });

  auto* sel = app.add_subcommand("select", "two-step selection over a candidate-set directory");
  add_common(sel, false);
  sel->add_option("candidates", o.input, "directory of member_* bundles")->required()->check(CLI::ExistingDirectory);
  sel->callback([&] { handler = cmd_select; });

  auto* rie = app.add_subcommand("riemann", "exact Riemann solution bundle");
  add_common(rie, true);
  rie->add_flag("--point", o.point_samples, "point samples at cell centres instead of cell averages");
  rie->callback([&] { handler = cmd_riemann; });

  auto* dt1 = app.add_subcommand("dt1-demo", "stopping time and defect reset until D_E <= delta");
  add_common(dt1, true);
  dt1->callback([&] { handler = cmd_dt1; });

  auto* dt2 = app.add_subcommand("dt2-demo", "competitor construction and local order");
  add_common(dt2, true);
  dt2->callback([&] { handler = cmd_dt2; });

  auto* plot = app.add_subcommand("plot", "line plot of a CSV file as SVG");
  plot->add_option("csv", o.input, "input CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--kind", o.kind, "energy, defect or profile")->check(CLI::IsMember({"energy", "defect", "profile"}));
  plot->add_option("--out", o.out, "output SVG file")->required();
  plot->callback([&] { handler = cmd_plot; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return handler(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << (o.config.empty() ? "" : o.config + ": ") << e.what() << "\n";
    return kRuntime;
  }
}
