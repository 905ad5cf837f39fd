#include "qnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnet {

ScenarioName scenario_from_string(std::string_view name) {
  if (name == "fixed") return ScenarioName::Fixed;
  if (name == "site1_osc") return ScenarioName::Site1Osc;
  if (name == "site4_osc") return ScenarioName::Site4Osc;
  if (name == "antiphase") return ScenarioName::Antiphase;
  if (name == "inphase") return ScenarioName::Inphase;
  throw std::invalid_argument("unknown scenario '" + std::string(name) +
                              "' (expected fixed, site1_osc, site4_osc, antiphase or inphase)");
}

std::string to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::Fixed: return "fixed";
    case ScenarioName::Site1Osc: return "site1_osc";
    case ScenarioName::Site4Osc: return "site4_osc";
    case ScenarioName::Antiphase: return "antiphase";
    case ScenarioName::Inphase: return "inphase";
  }
  throw std::invalid_argument("invalid scenario enum value");
}

const std::vector<ScenarioName>& all_scenarios() {
  static const std::vector<ScenarioName> names = {
      ScenarioName::Fixed, ScenarioName::Site1Osc, ScenarioName::Site4Osc,
      ScenarioName::Antiphase, ScenarioName::Inphase};
  return names;
}

Scenario Scenario::preset(ScenarioName name, double amplitude, double omega0) {
  Scenario s;
  s.name = name;
  const DeformationSpec in_phase{amplitude, omega0, 0.0};
  const DeformationSpec out_of_phase{amplitude, omega0, std::numbers::pi};
  switch (name) {
    case ScenarioName::Fixed:
      break;
    case ScenarioName::Site1Osc:
      s.zeta1 = in_phase;
      break;
    case ScenarioName::Site4Osc:
      s.zeta2 = in_phase;
      break;
    case ScenarioName::Antiphase:
      s.zeta1 = in_phase;
      s.zeta2 = out_of_phase;
      break;
    case ScenarioName::Inphase:
      s.zeta1 = in_phase;
      s.zeta2 = in_phase;
      break;
  }
  return s;
}

NetworkConfig make_network(const Scenario& scenario, Configuration tag,
                           double coupling, double omega) {
  return NetworkConfig::diamond(tag, coupling, scenario.zeta1, scenario.zeta2,
                                omega);
}

Trajectory run_scenario(const Scenario& scenario, Configuration tag,
                        const NoiseSpec& noise, double t_max, double h,
                        const EvolveOptions& options) {
  const NetworkConfig config = make_network(scenario, tag);
  return evolve(config, noise, initial_excitation_at_site1(), t_max, h, options);
}

namespace {

double incoherent_efficiency(const Scenario& scenario, double gamma,
                             double t_eval, double h) {
  EvolveOptions fast;
  fast.snapshot_stride = 0;
  fast.eigen_check_interval = 0;
  const Trajectory traj =
      run_scenario(scenario, Configuration::B,
                   NoiseSpec::dephasing(gamma, 2.0 * gamma), t_eval, h, fast);
  return traj.final_sink_population();
}

}  // namespace

SweepResult gamma_sweep(const Scenario& scenario, const SweepRequest& request) {
  if (request.n_points < 2) {
    throw std::invalid_argument("gamma sweep needs at least two grid points");
  }
  if (!(request.gamma_min >= 0.0 && request.gamma_min < request.gamma_max)) {
    throw std::invalid_argument("gamma sweep needs 0 <= gamma_min < gamma_max");
  }

  SweepResult result;
  result.t_eval = request.t_eval;
  result.gammas.reserve(request.n_points);
  result.efficiencies.reserve(request.n_points);

  const double span = request.gamma_max - request.gamma_min;
  int best = 0;
  for (int k = 0; k < request.n_points; ++k) {
    const double g = request.gamma_min + span * k / (request.n_points - 1);
    result.gammas.push_back(g);
    result.efficiencies.push_back(
        incoherent_efficiency(scenario, g, request.t_eval, request.h));
    if (result.efficiencies[k] > result.efficiencies[best]) best = k;
  }

  // Golden-section refinement of the bracket around the grid argmax.
  double lo = result.gammas[std::max(0, best - 1)];
  double hi = result.gammas[std::min<int>(request.n_points - 1, best + 1)];
  result.gamma_opt = result.gammas[best];
  result.efficiency_opt = result.efficiencies[best];

  auto consider = [&](double g, double eff) {
    if (eff > result.efficiency_opt) {
      result.efficiency_opt = eff;
      result.gamma_opt = g;
    }
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = incoherent_efficiency(scenario, c, request.t_eval, request.h);
  double fd = incoherent_efficiency(scenario, d, request.t_eval, request.h);
  consider(c, fc);
  consider(d, fd);
  while (hi - lo > request.resolution) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = incoherent_efficiency(scenario, c, request.t_eval, request.h);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = incoherent_efficiency(scenario, d, request.t_eval, request.h);
      consider(d, fd);
    }
  }
  return result;
}

namespace {

// Difference series d = incoherent - coherent on the shared grid.
// crossover: first sign change to positive that persists >= 1 time unit.
// persistent_from: last non-positive sample when the tail stays positive.
void detect_crossovers(const Trajectory& coherent, const Trajectory& incoherent,
                       TransportComparison& out) {
  const std::size_t n = std::min(coherent.populations.size(),
                                 incoherent.populations.size());
  if (n < 2) return;
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = incoherent.populations[k][4] - coherent.populations[k][4];
  }
  const double h = coherent.step;
  const std::size_t window = static_cast<std::size_t>(std::llround(1.0 / h));

  for (std::size_t k = 1; k < n; ++k) {
    if (d[k] > 0.0 && d[k - 1] <= 0.0) {
      const std::size_t end = std::min(n, k + window + 1);
      bool persistent = true;
      for (std::size_t j = k; j < end; ++j) {
        if (d[j] <= 0.0) {
          persistent = false;
          break;
        }
      }
      if (persistent) {
        out.crossover_time = coherent.times[k];
        break;
      }
    }
  }

  std::size_t last_nonpos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (d[k] <= 0.0) last_nonpos = k;
  }
  if (last_nonpos + 1 < n) {
    out.persistent_from = coherent.times[last_nonpos];
  }
}

}  // namespace

TransportComparison compare_transport(const Scenario& scenario, double t_max,
                                      double h, bool reoptimize_gamma,
                                      double t_eval) {
  TransportComparison out;
  out.scenario = scenario;
  out.t_eval = t_eval;
  if (reoptimize_gamma) {
    SweepRequest request;
    request.t_eval = t_eval;
    request.h = h;
    out.gamma_incoherent = gamma_sweep(scenario, request).gamma_opt;
  } else {
    out.gamma_incoherent = kReferenceGammaOpt;
  }

  EvolveOptions options;
  options.snapshot_stride = 0;
  options.eigen_check_interval = 100;
  out.coherent = run_scenario(scenario, Configuration::A,
                              NoiseSpec::dephasing(0.0, kCoherentSinkRate),
                              t_max, h, options);
  out.incoherent = run_scenario(
      scenario, Configuration::B,
      NoiseSpec::dephasing(out.gamma_incoherent, 2.0 * out.gamma_incoherent),
      t_max, h, options);

  out.coherent_final = out.coherent.final_sink_population();
  out.incoherent_final = out.incoherent.final_sink_population();
  detect_crossovers(out.coherent, out.incoherent, out);
  return out;
}

}  // namespace qnet
