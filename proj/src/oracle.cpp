#include "qnet/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace qnet {

namespace {

Mat25 kron5(const Mat5& a, const Mat5& b) {
  Mat25 out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      out.block<5, 5>(i * kDim, j * kDim) = a(i, j) * b;
  return out;
}

void add_dissipator(Mat25& l, const Mat5& jump, double rate) {
  if (rate == 0.0) return;
  const Mat5 id = Mat5::Identity();
  const Mat5 ada = jump.adjoint() * jump;
  l += rate * (2.0 * kron5(jump.conjugate(), jump) - kron5(id, ada) -
               kron5(ada.transpose(), id));
}

}  // namespace

Vec25 vectorize(const Mat5& rho) {
  return Eigen::Map<const Vec25>(rho.data());
}

Mat5 unvectorize(const Vec25& v) {
  return Eigen::Map<const Mat5>(v.data());
}

Mat25 assemble_liouvillian(const NetworkConfig& config, const NoiseSpec& noise,
                           double t) {
  const Mat5 h = hamiltonian_at(config, t);
  const Mat5 id = Mat5::Identity();
  // vec(-i[H, rho]) = -i (I (x) H - H^T (x) I) vec(rho)
  Mat25 l = Complex(0.0, -1.0) * (kron5(id, h) - kron5(h.transpose(), id));

  Mat5 n2 = Mat5::Zero();
  n2(1, 1) = 1.0;
  Mat5 n3 = Mat5::Zero();
  n3(2, 2) = 1.0;
  Mat5 a_sink = Mat5::Zero();
  a_sink(kSinkIndex, 3) = 1.0;

  add_dissipator(l, n2, noise.gamma2);
  add_dissipator(l, n3, noise.gamma3);
  add_dissipator(l, a_sink, noise.Gamma);
  return l;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("expm: matrix must be square");

  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Eigen::MatrixXcd a = m / std::pow(2.0, squarings);

  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 60; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-16 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Trajectory propagate_exponential(const NetworkConfig& config,
                                 const NoiseSpec& noise, const Mat5& rho0,
                                 double t_max, double h,
                                 const EvolveOptions& options) {
  config.validate();
  noise.validate();
  if (h <= 0.0) throw std::invalid_argument("step size must be positive");
  if (t_max < 0.0) throw std::invalid_argument("t_max must be nonnegative");

  const int n_steps = static_cast<int>(std::llround(t_max / h));
  const bool autonomous = !config.edges[0].deformation && !config.edges[2].deformation;

  Trajectory traj;
  traj.step = h;
  traj.snapshot_stride = options.snapshot_stride;
  traj.min_eigenvalue = 1.0;

  Mat5 rho = rho0;
  double integral = 0.0;

  auto record = [&](int step_index, double t) {
    traj.times.push_back(t);
    std::array<double, 5> p{};
    for (int k = 0; k < kDim; ++k) p[k] = rho(k, k).real();
    traj.populations.push_back(p);
    traj.total_population.push_back(p[0] + p[1] + p[2] + p[3] + p[4]);
    traj.efficiency.push_back(2.0 * noise.Gamma * integral);
    const bool keep = (options.snapshot_stride > 0 &&
                       step_index % options.snapshot_stride == 0) ||
                      step_index == n_steps;
    if (keep) traj.snapshots.push_back(rho);
  };

  record(0, 0.0);

  Mat25 propagator;
  if (autonomous && n_steps > 0) {
    propagator = expm(h * assemble_liouvillian(config, noise, 0.5 * h));
  }

  Eigen::SelfAdjointEigenSolver<Mat5> eig;
  for (int step = 0; step < n_steps; ++step) {
    const double prev_sink = rho(kSinkIndex, kSinkIndex).real();
    const double prev_p4 = rho(3, 3).real();
    if (!autonomous) {
      const double t_mid = (step + 0.5) * h;
      propagator = expm(h * assemble_liouvillian(config, noise, t_mid));
    }
    rho = unvectorize(propagator * vectorize(rho));

    const Mat5 adj = rho.adjoint();
    traj.max_hermiticity_drift = std::max(
        traj.max_hermiticity_drift, (rho - adj).cwiseAbs().maxCoeff());
    rho = 0.5 * (rho + adj);

    integral += 0.5 * h * (prev_p4 + rho(3, 3).real());
    traj.min_sink_increment =
        std::min(traj.min_sink_increment,
                 rho(kSinkIndex, kSinkIndex).real() - prev_sink);
    record(step + 1, (step + 1) * h);

    const double drift = std::abs(traj.total_population.back() - 1.0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (options.eigen_check_interval > 0 &&
        (step % options.eigen_check_interval == 0 || step + 1 == n_steps)) {
      eig.compute(rho, Eigen::EigenvaluesOnly);
      traj.min_eigenvalue = std::min(traj.min_eigenvalue, eig.eigenvalues()(0));
    }
  }
  return traj;
}

}  // namespace qnet
