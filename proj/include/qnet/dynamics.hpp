#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnet/netmodel.hpp"

namespace qnet {

/// Dephasing rates on sites 2 and 3 plus the site-4 -> sink decay rate,
/// all in units of J0.
struct NoiseSpec {
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double Gamma = 0.0;

  static NoiseSpec dephasing(double gamma, double sink_rate) {
    return NoiseSpec{gamma, gamma, sink_rate};
  }
  void validate() const;  // throws std::invalid_argument
};

/// Raised when a propagated state drifts outside the density-matrix
/// invariants (trace, positivity). Carries the first offending time.
class InvariantError : public std::runtime_error {
 public:
  InvariantError(const std::string& what, double time)
      : std::runtime_error(what + " at t = " + std::to_string(time)), time_(time) {}
  double time() const { return time_; }

 private:
  double time_ = 0.0;
};

/// Time series produced by a propagator. Populations are tracked at every
/// grid point; full state snapshots every `snapshot_stride` steps (the final
/// state is always kept last).
struct Trajectory {
  double step = 0.0;
  std::vector<double> times;
  std::vector<std::array<double, 5>> populations;  // p1..p4, sink
  std::vector<double> total_population;
  std::vector<double> efficiency;  // running 2*Gamma*int rho44 dt (trapezoid)
  int snapshot_stride = 1;
  std::vector<Mat5> snapshots;

  double max_trace_drift = 0.0;
  double max_hermiticity_drift = 0.0;
  double min_eigenvalue = 0.0;
  double min_sink_increment = 0.0;

  const Mat5& final_state() const { return snapshots.back(); }
  double final_sink_population() const { return populations.back()[4]; }
};

struct EvolveOptions {
  int snapshot_stride = 1;      // 0: keep only the final state
  int eigen_check_interval = 10;  // 0: skip the positivity scan
  double trace_tol = 1e-6;
  double negativity_tol = 1e-6;
};

/// Dephasing dissipator, sum over sites 2 and 3 of
/// gamma_i (2 n_i rho n_i - {n_i, rho}) with n_i = |i><i|.
Mat5 dephasing_dissipator(const Mat5& rho, const NoiseSpec& noise);

/// Sink dissipator Gamma (2 A rho A^dag - {A^dag A, rho}) with A = |sink><4|;
/// drains site 4 into the sink at instantaneous rate 2 Gamma rho44.
Mat5 sink_dissipator(const Mat5& rho, const NoiseSpec& noise);

/// Full Lindblad right-hand side -i[H(t), rho] + dephasing + sink.
Mat5 master_rhs(double t, const Mat5& rho, const NetworkConfig& config,
                const NoiseSpec& noise);

/// rho(0) = |1><1|.
Mat5 initial_excitation_at_site1();

/// Classical fixed-step RK4 with the Hamiltonian sampled at substage times;
/// the state is re-symmetrized after every step. Throws InvariantError on
/// trace or positivity breach beyond the configured tolerances.
Trajectory evolve(const NetworkConfig& config, const NoiseSpec& noise,
                  const Mat5& rho0, double t_max, double h,
                  const EvolveOptions& options = {});

/// P_sink(t) = 2 Gamma int_0^t rho44 dt', trapezoidal rule on the stored
/// population grid. Cross-checks the directly tracked sink population.
std::vector<double> sink_efficiency(const Trajectory& traj, const NoiseSpec& noise);

enum class Subspace { H1, H2 };

/// Population of the configuration-B invariant subspace
/// span{|s1>,|s1+>} (H1) or span{|s1->,|s2>} (H2).
double subspace_population(const Mat5& rho, Subspace which);

}  // namespace qnet
