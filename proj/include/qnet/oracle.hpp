#pragma once

#include <Eigen/Dense>

#include "qnet/dynamics.hpp"
#include "qnet/netmodel.hpp"

namespace qnet {

using Mat25 = Eigen::Matrix<Complex, 25, 25>;
using Vec25 = Eigen::Matrix<Complex, 25, 1>;

/// Column-stacking vectorization and its inverse.
Vec25 vectorize(const Mat5& rho);
Mat5 unvectorize(const Vec25& v);

/// Full Liouvillian supermatrix: L vec(rho) = vec(master_rhs(t, rho)).
Mat25 assemble_liouvillian(const NetworkConfig& config, const NoiseSpec& noise,
                           double t);

/// Dense matrix exponential by scaling and squaring with a Taylor kernel,
/// converged to machine precision.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m);

/// Reference propagator: piecewise-constant exponential stepping with the
/// Liouvillian frozen at each step midpoint. Slow by construction; exists
/// to validate the RK4 engine.
Trajectory propagate_exponential(const NetworkConfig& config,
                                 const NoiseSpec& noise, const Mat5& rho0,
                                 double t_max, double h,
                                 const EvolveOptions& options = {});

}  // namespace qnet
