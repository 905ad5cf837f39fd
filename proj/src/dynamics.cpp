#include "qnet/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace qnet {

void NoiseSpec::validate() const {
  if (gamma2 < 0.0 || gamma3 < 0.0 || Gamma < 0.0) {
    throw std::invalid_argument("noise rates must be nonnegative");
  }
}

Mat5 dephasing_dissipator(const Mat5& rho, const NoiseSpec& noise) {
  Mat5 out = Mat5::Zero();
  const double rates[2] = {noise.gamma2, noise.gamma3};
  const int sites[2] = {1, 2};  // 0-based indices of sites 2 and 3
  for (int s = 0; s < 2; ++s) {
    const double g = rates[s];
    const int i = sites[s];
    if (g == 0.0) continue;
    // gamma (2 n rho n - n rho - rho n) with n = |i><i|
    for (int k = 0; k < kDim; ++k) {
      out(i, k) -= g * rho(i, k);
      out(k, i) -= g * rho(k, i);
    }
    out(i, i) += 2.0 * g * rho(i, i);
  }
  return out;
}

Mat5 sink_dissipator(const Mat5& rho, const NoiseSpec& noise) {
  Mat5 out = Mat5::Zero();
  const double G = noise.Gamma;
  if (G == 0.0) return out;
  constexpr int site4 = 3;
  // Gamma (2 A rho A^dag - {n4, rho}) with A = |sink><4|, A^dag A = |4><4|.
  for (int k = 0; k < kDim; ++k) {
    out(site4, k) -= G * rho(site4, k);
    out(k, site4) -= G * rho(k, site4);
  }
  out(kSinkIndex, kSinkIndex) += 2.0 * G * rho(site4, site4);
  return out;
}

Mat5 master_rhs(double t, const Mat5& rho, const NetworkConfig& config,
                const NoiseSpec& noise) {
  const Mat5 h = hamiltonian_at(config, t);
  Mat5 out = Complex(0.0, -1.0) * (h * rho - rho * h);
  out += dephasing_dissipator(rho, noise);
  out += sink_dissipator(rho, noise);
  return out;
}

Mat5 initial_excitation_at_site1() {
  Mat5 rho = Mat5::Zero();
  rho(0, 0) = 1.0;
  return rho;
}

namespace {

std::array<double, 5> population_row(const Mat5& rho) {
  std::array<double, 5> p{};
  for (int k = 0; k < kDim; ++k) p[k] = rho(k, k).real();
  return p;
}

}  // namespace

Trajectory evolve(const NetworkConfig& config, const NoiseSpec& noise,
                  const Mat5& rho0, double t_max, double h,
                  const EvolveOptions& options) {
  config.validate();
  noise.validate();
  if (h <= 0.0) throw std::invalid_argument("step size must be positive");
  if (t_max < 0.0) throw std::invalid_argument("t_max must be nonnegative");

  const int n_steps = static_cast<int>(std::llround(t_max / h));

  Trajectory traj;
  traj.step = h;
  traj.snapshot_stride = options.snapshot_stride;
  traj.times.reserve(n_steps + 1);
  traj.populations.reserve(n_steps + 1);
  traj.total_population.reserve(n_steps + 1);
  traj.efficiency.reserve(n_steps + 1);

  Mat5 rho = rho0;
  double integral = 0.0;  // int rho44 dt, trapezoidal
  traj.min_eigenvalue = 1.0;
  traj.min_sink_increment = 0.0;

  auto record = [&](int step_index, double t) {
    traj.times.push_back(t);
    const auto p = population_row(rho);
    traj.populations.push_back(p);
    traj.total_population.push_back(p[0] + p[1] + p[2] + p[3] + p[4]);
    traj.efficiency.push_back(2.0 * noise.Gamma * integral);
    const bool keep = (options.snapshot_stride > 0 &&
                       step_index % options.snapshot_stride == 0) ||
                      step_index == n_steps;
    if (keep) traj.snapshots.push_back(rho);
  };

  Eigen::SelfAdjointEigenSolver<Mat5> eig;
  auto check_state = [&](int step_index, double t) {
    const double drift = std::abs(traj.total_population.back() - 1.0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (drift > options.trace_tol) {
      throw InvariantError("trace drift " + std::to_string(drift), t);
    }
    const bool scan = options.eigen_check_interval > 0 &&
                      (step_index % options.eigen_check_interval == 0 ||
                       step_index == n_steps);
    if (scan) {
      eig.compute(rho, Eigen::EigenvaluesOnly);
      const double lam = eig.eigenvalues()(0);
      traj.min_eigenvalue = std::min(traj.min_eigenvalue, lam);
      if (lam < -options.negativity_tol) {
        throw InvariantError("negative eigenvalue " + std::to_string(lam), t);
      }
    }
  };

  record(0, 0.0);
  check_state(0, 0.0);

  Mat5 k1, k2, k3, k4, tmp;
  for (int step = 0; step < n_steps; ++step) {
    const double t = step * h;
    const double prev_sink = rho(kSinkIndex, kSinkIndex).real();
    const double prev_p4 = rho(3, 3).real();

    k1 = master_rhs(t, rho, config, noise);
    tmp = rho + (0.5 * h) * k1;
    k2 = master_rhs(t + 0.5 * h, tmp, config, noise);
    tmp = rho + (0.5 * h) * k2;
    k3 = master_rhs(t + 0.5 * h, tmp, config, noise);
    tmp = rho + h * k3;
    k4 = master_rhs(t + h, tmp, config, noise);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    tmp = rho.adjoint();
    traj.max_hermiticity_drift = std::max(
        traj.max_hermiticity_drift, (rho - tmp).cwiseAbs().maxCoeff());
    rho = 0.5 * (rho + tmp);

    integral += 0.5 * h * (prev_p4 + rho(3, 3).real());
    traj.min_sink_increment =
        std::min(traj.min_sink_increment,
                 rho(kSinkIndex, kSinkIndex).real() - prev_sink);

    record(step + 1, (step + 1) * h);
    check_state(step + 1, (step + 1) * h);
  }
  return traj;
}

std::vector<double> sink_efficiency(const Trajectory& traj, const NoiseSpec& noise) {
  std::vector<double> out(traj.populations.size(), 0.0);
  double integral = 0.0;
  for (std::size_t k = 1; k < traj.populations.size(); ++k) {
    const double dt = traj.times[k] - traj.times[k - 1];
    integral += 0.5 * dt * (traj.populations[k - 1][3] + traj.populations[k][3]);
    out[k] = 2.0 * noise.Gamma * integral;
  }
  return out;
}

double subspace_population(const Mat5& rho, Subspace which) {
  // |s1+/-> = (|2> +/- |3>)/sqrt2; <v|rho|v> summed over the subspace basis.
  const Complex r23 = rho(1, 2);
  const double sym = 0.5 * (rho(1, 1).real() + rho(2, 2).real()) + r23.real();
  const double anti = 0.5 * (rho(1, 1).real() + rho(2, 2).real()) - r23.real();
  if (which == Subspace::H1) return rho(0, 0).real() + sym;
  return anti + rho(3, 3).real();
}

}  // namespace qnet
