#include "qnet/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qnet {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

double parse_number(const std::string& value, int line) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ManifestError("expected a number, got '" + value + "'", line);
  }
  return out;
}

int parse_int(const std::string& value, int line) {
  int out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw ManifestError("expected an integer, got '" + value + "'", line);
  }
  return out;
}

bool parse_bool(const std::string& value, int line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ManifestError("expected a boolean, got '" + value + "'", line);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

double RunManifest::effective_gamma() const {
  if (gamma) return *gamma;
  return configuration == Configuration::B ? kReferenceGammaOpt : 0.0;
}

double RunManifest::effective_sink_rate() const {
  if (Gamma) return *Gamma;
  const double g = effective_gamma();
  return g > 0.0 ? 2.0 * g : kCoherentSinkRate;
}

NoiseSpec RunManifest::noise() const {
  return NoiseSpec::dephasing(effective_gamma(), effective_sink_rate());
}

Scenario RunManifest::build_scenario() const {
  Scenario s = Scenario::preset(scenario_from_string(scenario), amplitude, omega0);
  if (phase1) {
    if (!s.zeta1) s.zeta1 = DeformationSpec{amplitude, omega0, 0.0};
    s.zeta1->phase = *phase1;
  }
  if (phase2) {
    if (!s.zeta2) s.zeta2 = DeformationSpec{amplitude, omega0, 0.0};
    s.zeta2->phase = *phase2;
  }
  return s;
}

RunManifest parse_manifest(std::istream& in) {
  RunManifest m;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) raw.erase(comment);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ManifestError("expected 'key = value', got '" + text + "'", line);
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ManifestError("empty key or value", line);
    }

    if (key == "scenario") {
      scenario_from_string(value);  // reject unknown names here, with the line
      m.scenario = value;
    } else if (key == "config") {
      if (value == "A") m.configuration = Configuration::A;
      else if (value == "B") m.configuration = Configuration::B;
      else throw ManifestError("config must be A or B, got '" + value + "'", line);
    } else if (key == "gamma") {
      m.gamma = parse_number(value, line);
    } else if (key == "Gamma") {
      m.Gamma = parse_number(value, line);
    } else if (key == "a") {
      m.amplitude = parse_number(value, line);
    } else if (key == "omega0") {
      m.omega0 = parse_number(value, line);
    } else if (key == "phase1") {
      m.phase1 = parse_number(value, line);
    } else if (key == "phase2") {
      m.phase2 = parse_number(value, line);
    } else if (key == "tmax") {
      m.t_max = parse_number(value, line);
    } else if (key == "h") {
      m.h = parse_number(value, line);
    } else if (key == "Teval") {
      m.t_eval = parse_number(value, line);
    } else if (key == "gamma_min") {
      m.gamma_min = parse_number(value, line);
    } else if (key == "gamma_max") {
      m.gamma_max = parse_number(value, line);
    } else if (key == "n_points") {
      m.n_points = parse_int(value, line);
    } else if (key == "scenarios") {
      m.scenarios = split_list(value);
    } else if (key == "reoptimize_gamma") {
      m.reoptimize_gamma = parse_bool(value, line);
    } else {
      throw ManifestError("unknown key '" + key + "'", line);
    }
  }
  return m;
}

RunManifest parse_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest file: " + path);
  return parse_manifest(in);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const NoiseSpec& noise) {
  const std::vector<double> eq10 = sink_efficiency(traj, noise);
  out << "t,p1,p2,p3,p4,psink,total,psink_eq10\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& p = traj.populations[k];
    out << format_double(traj.times[k]);
    for (int s = 0; s < 5; ++s) out << ',' << format_double(p[s]);
    out << ',' << format_double(traj.total_population[k]) << ','
        << format_double(eq10[k]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "gamma,efficiency\n";
  for (std::size_t k = 0; k < result.gammas.size(); ++k) {
    out << format_double(result.gammas[k]) << ','
        << format_double(result.efficiencies[k]) << '\n';
  }
}

CsvCheck check_trajectory_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) ||
      trim(header) != "t,p1,p2,p3,p4,psink,total,psink_eq10") {
    throw std::runtime_error("bad trajectory CSV header");
  }
  CsvCheck check;
  std::string row;
  double prev_sink = 0.0;
  bool first = true;
  int line = 1;
  while (std::getline(in, row)) {
    ++line;
    if (trim(row).empty()) continue;
    const auto fields = split_list(row);
    if (fields.size() != 8) {
      throw std::runtime_error("trajectory CSV line " + std::to_string(line) +
                               ": expected 8 fields");
    }
    std::vector<double> v;
    v.reserve(8);
    for (const auto& f : fields) v.push_back(parse_number(f, line));
    check.max_total_deviation =
        std::max(check.max_total_deviation, std::abs(v[6] - 1.0));
    if (!first) {
      check.min_sink_increment =
          std::min(check.min_sink_increment, v[5] - prev_sink);
    }
    prev_sink = v[5];
    first = false;
  }
  if (first) throw std::runtime_error("trajectory CSV has no data rows");
  return check;
}

}  // namespace qnet
