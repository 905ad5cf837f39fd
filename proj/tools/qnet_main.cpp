// Command-line front end: runs single simulations, dephasing-rate sweeps and
// coherent-vs-incoherent comparisons, writing CSV time series and JSON
// summaries for external plotting.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnet/analysis.hpp"
#include "qnet/dynamics.hpp"
#include "qnet/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvariantBreach = 2;

struct Flags {
  std::optional<std::string> manifest_path;
  std::optional<std::string> scenario;
  std::optional<double> gamma;
  std::optional<double> sink_rate;
  std::optional<double> t_max;
  std::optional<double> dt;
  std::optional<double> t_eval;
  std::optional<bool> reoptimize;
  std::optional<double> gamma_min;
  std::optional<double> gamma_max;
  std::optional<int> n_points;
  std::vector<std::string> scenarios;
  std::string out_dir = ".";
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.manifest_path,
                  "Path to a key = value run manifest");
  cmd->add_option("--scenario", flags.scenario,
                  "Scenario name (fixed, site1_osc, site4_osc, antiphase, inphase)");
  cmd->add_option("--gamma", flags.gamma, "Dephasing rate on sites 2 and 3");
  cmd->add_option("--Gamma", flags.sink_rate, "Sink decay rate");
  cmd->add_option("--tmax", flags.t_max, "Simulated time span (units 1/J0)");
  cmd->add_option("--dt", flags.dt, "Integrator step");
  cmd->add_option("--teval", flags.t_eval, "Efficiency evaluation horizon");
  cmd->add_option("--reoptimize-gamma", flags.reoptimize,
                  "Re-optimize gamma per scenario (compare subcommand)");
  cmd->add_option("--out", flags.out_dir, "Output directory");
}

qnet::RunManifest load_manifest(const Flags& flags) {
  qnet::RunManifest m;
  if (flags.manifest_path) m = qnet::parse_manifest_file(*flags.manifest_path);
  if (flags.scenario) {
    qnet::scenario_from_string(*flags.scenario);
    m.scenario = *flags.scenario;
  }
  if (flags.gamma) m.gamma = *flags.gamma;
  if (flags.sink_rate) m.Gamma = *flags.sink_rate;
  if (flags.t_max) m.t_max = *flags.t_max;
  if (flags.dt) m.h = *flags.dt;
  if (flags.t_eval) m.t_eval = *flags.t_eval;
  if (flags.reoptimize) m.reoptimize_gamma = *flags.reoptimize;
  if (flags.gamma_min) m.gamma_min = *flags.gamma_min;
  if (flags.gamma_max) m.gamma_max = *flags.gamma_max;
  if (flags.n_points) m.n_points = *flags.n_points;
  if (!flags.scenarios.empty()) m.scenarios = flags.scenarios;
  return m;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

json manifest_json(const qnet::RunManifest& m) {
  json j;
  j["tool_version"] = qnet::kToolVersion;
  j["scenario"] = m.scenario;
  j["config"] = m.configuration == qnet::Configuration::A ? "A" : "B";
  j["gamma"] = m.effective_gamma();
  j["Gamma"] = m.effective_sink_rate();
  j["a"] = m.amplitude;
  j["omega0"] = m.omega0;
  j["tmax"] = m.t_max;
  j["h"] = m.h;
  j["Teval"] = m.t_eval;
  return j;
}

int cmd_simulate(const Flags& flags) {
  const qnet::RunManifest m = load_manifest(flags);
  const qnet::Scenario scenario = m.build_scenario();
  const qnet::NoiseSpec noise = m.noise();

  qnet::EvolveOptions options;
  options.snapshot_stride = 0;
  options.eigen_check_interval = 10;
  const qnet::Trajectory traj =
      qnet::run_scenario(scenario, m.configuration, noise, m.t_max, m.h, options);

  const fs::path out_dir(flags.out_dir);
  fs::create_directories(out_dir);

  std::ostringstream csv;
  qnet::write_trajectory_csv(csv, traj, noise);
  write_file(out_dir / "simulate.csv", csv.str());

  json summary = manifest_json(m);
  summary["terminal_psink"] = traj.final_sink_population();
  summary["terminal_total"] = traj.total_population.back();
  summary["max_trace_drift"] = traj.max_trace_drift;
  summary["max_hermiticity_drift"] = traj.max_hermiticity_drift;
  summary["min_eigenvalue"] = traj.min_eigenvalue;
  summary["eq10_terminal"] = traj.efficiency.back();
  write_file(out_dir / "simulate.json", summary.dump(2) + "\n");

  std::cout << "simulate: terminal psink = "
            << qnet::format_double(traj.final_sink_population()) << "\n";
  return 0;
}

int cmd_sweep(const Flags& flags) {
  const qnet::RunManifest m = load_manifest(flags);
  const qnet::Scenario scenario = m.build_scenario();

  qnet::SweepRequest request;
  request.gamma_min = m.gamma_min;
  request.gamma_max = m.gamma_max;
  request.n_points = m.n_points;
  request.t_eval = m.t_eval;
  request.h = m.h;
  const qnet::SweepResult result = qnet::gamma_sweep(scenario, request);

  const fs::path out_dir(flags.out_dir);
  fs::create_directories(out_dir);

  std::ostringstream csv;
  qnet::write_sweep_csv(csv, result);
  write_file(out_dir / "sweep.csv", csv.str());

  json summary = manifest_json(m);
  summary["gamma_min"] = request.gamma_min;
  summary["gamma_max"] = request.gamma_max;
  summary["n_points"] = request.n_points;
  summary["gamma_opt"] = result.gamma_opt;
  summary["efficiency_opt"] = result.efficiency_opt;
  write_file(out_dir / "sweep.json", summary.dump(2) + "\n");

  std::cout << "sweep: gamma_opt = " << qnet::format_double(result.gamma_opt)
            << " (efficiency " << qnet::format_double(result.efficiency_opt)
            << " at Teval " << qnet::format_double(result.t_eval) << ")\n";
  return 0;
}

int cmd_compare(const Flags& flags) {
  const qnet::RunManifest m = load_manifest(flags);
  std::vector<std::string> names = m.scenarios;
  if (names.empty() && flags.scenario) names.push_back(*flags.scenario);
  if (names.empty()) {
    std::cerr << "compare: no scenarios given (use --scenarios or the manifest)\n";
    return kExitUsage;
  }
  std::vector<std::string> unique;
  for (const auto& name : names) {
    qnet::scenario_from_string(name);
    if (std::find(unique.begin(), unique.end(), name) != unique.end()) {
      std::cerr << "warning: duplicate scenario '" << name << "' ignored\n";
      continue;
    }
    unique.push_back(name);
  }

  const fs::path out_dir(flags.out_dir);
  fs::create_directories(out_dir);

  json summary;
  summary["tool_version"] = qnet::kToolVersion;
  summary["tmax"] = m.t_max;
  summary["h"] = m.h;
  summary["Teval"] = m.t_eval;
  summary["reoptimize_gamma"] = m.reoptimize_gamma;
  summary["scenarios"] = json::object();

  for (const auto& name : unique) {
    qnet::RunManifest scoped = m;
    scoped.scenario = name;
    const qnet::Scenario scenario = scoped.build_scenario();
    const qnet::TransportComparison cmp = qnet::compare_transport(
        scenario, m.t_max, m.h, m.reoptimize_gamma, m.t_eval);

    const qnet::NoiseSpec coh_noise =
        qnet::NoiseSpec::dephasing(0.0, qnet::kCoherentSinkRate);
    const qnet::NoiseSpec inc_noise = qnet::NoiseSpec::dephasing(
        cmp.gamma_incoherent, 2.0 * cmp.gamma_incoherent);

    std::ostringstream coh_csv, inc_csv;
    qnet::write_trajectory_csv(coh_csv, cmp.coherent, coh_noise);
    qnet::write_trajectory_csv(inc_csv, cmp.incoherent, inc_noise);
    write_file(out_dir / ("compare_" + name + "_coherent.csv"), coh_csv.str());
    write_file(out_dir / ("compare_" + name + "_incoherent.csv"), inc_csv.str());

    json entry;
    entry["gamma_incoherent"] = cmp.gamma_incoherent;
    entry["coherent_terminal"] = cmp.coherent_final;
    entry["incoherent_terminal"] = cmp.incoherent_final;
    entry["verdict"] = cmp.incoherent_wins() ? "incoherent-wins" : "coherent-wins";
    entry["crossover_time"] =
        cmp.crossover_time ? json(*cmp.crossover_time) : json(nullptr);
    entry["persistent_from"] =
        cmp.persistent_from ? json(*cmp.persistent_from) : json(nullptr);
    summary["scenarios"][name] = entry;

    std::cout << "compare " << name << ": "
              << (cmp.incoherent_wins() ? "incoherent-wins" : "coherent-wins")
              << " (coherent " << qnet::format_double(cmp.coherent_final)
              << ", incoherent " << qnet::format_double(cmp.incoherent_final)
              << ", gamma " << qnet::format_double(cmp.gamma_incoherent) << ")\n";
  }
  write_file(out_dir / "compare.json", summary.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-site excitation transport simulator"};
  app.require_subcommand(1);

  Flags sim_flags, sweep_flags, cmp_flags;

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run one scenario and emit the time series");
  add_common_flags(simulate, sim_flags);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Sweep the dephasing rate and locate gamma_opt");
  add_common_flags(sweep, sweep_flags);
  sweep->add_option("--gamma-min", sweep_flags.gamma_min, "Sweep grid lower bound");
  sweep->add_option("--gamma-max", sweep_flags.gamma_max, "Sweep grid upper bound");
  sweep->add_option("--points", sweep_flags.n_points, "Sweep grid size");

  CLI::App* compare = app.add_subcommand(
      "compare", "Coherent vs incoherent comparison per scenario");
  add_common_flags(compare, cmp_flags);
  compare->add_option("--scenarios", cmp_flags.scenarios,
                      "Comma-separated scenario list")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags);
    if (compare->parsed()) return cmd_compare(cmp_flags);
  } catch (const qnet::InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kExitInvariantBreach;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
