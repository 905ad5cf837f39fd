#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnet/analysis.hpp"
#include "qnet/dynamics.hpp"

namespace qnet {

inline constexpr const char* kToolVersion = "1.0.0";

/// Locale-independent scientific notation with 12 significant digits.
std::string format_double(double value);

class ManifestError : public std::runtime_error {
 public:
  ManifestError(const std::string& message, int line)
      : std::runtime_error("manifest line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

/// Run parameters, either parsed from a flat key = value document or filled
/// from command-line flags. Keys: scenario, config, gamma, Gamma, a, omega0,
/// phase1, phase2, tmax, h, Teval, gamma_min, gamma_max, n_points,
/// scenarios, reoptimize_gamma. Unknown keys are rejected.
struct RunManifest {
  std::string scenario = "fixed";
  Configuration configuration = Configuration::B;
  std::optional<double> gamma;  // gamma2 = gamma3; default depends on config
  std::optional<double> Gamma;  // sink rate; default 2*gamma (or 2.1 at gamma 0)
  double amplitude = 0.25;
  double omega0 = 1.0;
  std::optional<double> phase1;  // override for the zeta1 pair, radians
  std::optional<double> phase2;  // override for the zeta2 pair
  double t_max = 20.0;
  double h = 1e-3;
  double t_eval = 20.0;
  double gamma_min = 0.2;
  double gamma_max = 3.0;
  int n_points = 29;
  std::vector<std::string> scenarios;  // compare subcommand
  bool reoptimize_gamma = true;

  double effective_gamma() const;
  double effective_sink_rate() const;
  NoiseSpec noise() const;
  Scenario build_scenario() const;  // preset plus phase overrides
};

/// Parses a flat key = value document ('#' starts a comment). Later keys
/// override earlier ones; unknown keys raise ManifestError with the line.
RunManifest parse_manifest(std::istream& in);
RunManifest parse_manifest_file(const std::string& path);

/// Columns: t,p1,p2,p3,p4,psink,total,psink_eq10 (LF line endings).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const NoiseSpec& noise);

/// Columns: gamma,efficiency.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

struct CsvCheck {
  double max_total_deviation = 0.0;
  double min_sink_increment = 0.0;
};

/// Re-parses a trajectory CSV and reports the conservation diagnostics.
/// Throws std::runtime_error on malformed input.
CsvCheck check_trajectory_csv(std::istream& in);

}  // namespace qnet
