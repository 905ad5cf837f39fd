#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>

#include <Eigen/Dense>

namespace qnet {

using Complex = std::complex<double>;
using Mat5 = Eigen::Matrix<Complex, 5, 5>;
using Mat4 = Eigen::Matrix4d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;

// State ordering: |1>, |2>, |3>, |4>, |sink>.
inline constexpr int kNumSites = 4;
inline constexpr int kSinkIndex = 4;
inline constexpr int kDim = 5;

/// Harmonic modulation of a dipolar coupling:
///   J(t) = J_base / (1 - 2a sin(w0 t + phi))^3.
/// Amplitude must stay below 1/2 so the denominator never vanishes.
struct DeformationSpec {
  double amplitude = 0.0;  // a, dimensionless
  double omega0 = 0.0;     // angular frequency, units of J0/hbar
  double phase = 0.0;      // radians

  void validate() const;  // throws std::invalid_argument
};

/// One undirected network edge with a signed coupling in units of J0.
struct Edge {
  int site_i = 0;  // 1-based site labels, i < j
  int site_j = 0;
  int sign = +1;
  double base_coupling = 1.0;
  std::optional<DeformationSpec> deformation;

  void validate() const;
};

/// Sign pattern of the diamond network. A: all couplings +J (transport is
/// coherent). B: J_{3,4} = -J, which splits the Hamiltonian into two
/// invariant 2x2 blocks and blocks coherent transport to the sink.
enum class Configuration { A, B };

/// The four-site diamond with edges (1,2), (1,3), (2,4), (3,4) and a sink
/// fed irreversibly from site 4. Deformations are constrained pairwise:
/// (1,2) and (1,3) share one spec (zeta1), (2,4) and (3,4) the other (zeta2).
struct NetworkConfig {
  Configuration tag = Configuration::A;
  double omega = 0.0;  // common site transition frequency, units J0/hbar
  std::array<Edge, 4> edges{};  // order: (1,2), (1,3), (2,4), (3,4)

  static NetworkConfig diamond(Configuration tag, double coupling = 1.0,
                               std::optional<DeformationSpec> zeta1 = {},
                               std::optional<DeformationSpec> zeta2 = {},
                               double omega = 0.0);

  void validate() const;
};

/// Instantaneous signed coupling of an edge.
double coupling_at(const Edge& edge, double t);

/// 5x5 single-excitation Hamiltonian at time t. The sink row and column are
/// identically zero; sites carry the common frequency on the diagonal.
Mat5 hamiltonian_at(const NetworkConfig& config, double t);

/// Orthogonal 4x4 change of basis for configuration A. Rows:
/// |1>, (|2>+|3>)/sqrt2, |4>, (|2>-|3>)/sqrt2. The last row spans the
/// antisymmetric state that decouples from the chain.
Mat4 chain_basis_matrix();

/// Orthogonal 4x4 change of basis for configuration B. Rows:
/// |1>, (|2>+|3>)/sqrt2, (|2>-|3>)/sqrt2, |4>.
Mat4 split_basis_matrix();

/// Configuration-A Hamiltonian reduced to the 3-site chain
/// {|s1>, |s2>, |s3>}; tridiagonal with couplings sqrt2*zeta1, sqrt2*zeta2.
/// Throws std::invalid_argument for configuration B.
Mat3 to_chain_basis(const NetworkConfig& config, double t);

/// Configuration-B Hamiltonian as its two invariant 2x2 blocks,
/// H1 over {|s1>, |s1+>} and H2 over {|s1->, |s2>}.
/// Throws std::invalid_argument for configuration A.
std::pair<Mat2, Mat2> to_split_basis(const NetworkConfig& config, double t);

}  // namespace qnet
