#include "qnet/netmodel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnet {

namespace {

bool same_deformation(const std::optional<DeformationSpec>& a,
                      const std::optional<DeformationSpec>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->amplitude == b->amplitude && a->omega0 == b->omega0 &&
         a->phase == b->phase;
}

}  // namespace

void DeformationSpec::validate() const {
  if (!(amplitude >= 0.0 && amplitude < 0.5)) {
    throw std::invalid_argument("deformation amplitude must satisfy 0 <= a < 0.5, got " +
                                std::to_string(amplitude));
  }
  if (omega0 < 0.0) {
    throw std::invalid_argument("deformation omega0 must be nonnegative");
  }
}

void Edge::validate() const {
  if (site_i == site_j || site_i < 1 || site_i > kNumSites || site_j < 1 ||
      site_j > kNumSites) {
    throw std::invalid_argument("edge sites must be distinct labels in 1..4");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("edge sign must be +1 or -1");
  }
  if (base_coupling <= 0.0) {
    throw std::invalid_argument("edge base coupling must be positive");
  }
  if (deformation) deformation->validate();
}

NetworkConfig NetworkConfig::diamond(Configuration tag, double coupling,
                                     std::optional<DeformationSpec> zeta1,
                                     std::optional<DeformationSpec> zeta2,
                                     double omega) {
  NetworkConfig config;
  config.tag = tag;
  config.omega = omega;
  const int s34 = (tag == Configuration::B) ? -1 : +1;
  config.edges = {Edge{1, 2, +1, coupling, zeta1},
                  Edge{1, 3, +1, coupling, zeta1},
                  Edge{2, 4, +1, coupling, zeta2},
                  Edge{3, 4, s34, coupling, zeta2}};
  config.validate();
  return config;
}

void NetworkConfig::validate() const {
  static constexpr std::array<std::pair<int, int>, 4> expected = {
      {{1, 2}, {1, 3}, {2, 4}, {3, 4}}};
  for (std::size_t k = 0; k < edges.size(); ++k) {
    edges[k].validate();
    if (edges[k].site_i != expected[k].first ||
        edges[k].site_j != expected[k].second) {
      throw std::invalid_argument("diamond edges must be (1,2),(1,3),(2,4),(3,4) in order");
    }
  }
  const int s34 = (tag == Configuration::B) ? -1 : +1;
  if (edges[0].sign != +1 || edges[1].sign != +1 || edges[2].sign != +1 ||
      edges[3].sign != s34) {
    throw std::invalid_argument("edge signs do not match the configuration tag");
  }
  if (!same_deformation(edges[0].deformation, edges[1].deformation)) {
    throw std::invalid_argument("edges (1,2) and (1,3) must share one deformation (zeta1)");
  }
  if (!same_deformation(edges[2].deformation, edges[3].deformation)) {
    throw std::invalid_argument("edges (2,4) and (3,4) must share one deformation (zeta2)");
  }
}

double coupling_at(const Edge& edge, double t) {
  if (!edge.deformation) return edge.sign * edge.base_coupling;
  const DeformationSpec& d = *edge.deformation;
  const double den = 1.0 - 2.0 * d.amplitude * std::sin(d.omega0 * t + d.phase);
  return edge.sign * edge.base_coupling / (den * den * den);
}

Mat5 hamiltonian_at(const NetworkConfig& config, double t) {
  Mat5 h = Mat5::Zero();
  for (int s = 0; s < kNumSites; ++s) h(s, s) = config.omega;
  for (const Edge& e : config.edges) {
    const double j = coupling_at(e, t);
    h(e.site_i - 1, e.site_j - 1) = j;
    h(e.site_j - 1, e.site_i - 1) = j;
  }
  return h;
}

Mat4 chain_basis_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat4 u;
  u << 1, 0, 0, 0,   // |s1> = |1>
       0, r, r, 0,   // |s2> = (|2>+|3>)/sqrt2
       0, 0, 0, 1,   // |s3> = |4>
       0, r, -r, 0;  // antisymmetric remainder
  return u;
}

Mat4 split_basis_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat4 u;
  u << 1, 0, 0, 0,   // |s1> = |1>
       0, r, r, 0,   // |s1+>
       0, r, -r, 0,  // |s1->
       0, 0, 0, 1;   // |s2> = |4>
  return u;
}

namespace {

Mat4 transformed_site_block(const NetworkConfig& config, double t, const Mat4& u) {
  const Mat5 h = hamiltonian_at(config, t);
  const Mat4 block = h.topLeftCorner<4, 4>().real();
  return u * block * u.transpose();
}

}  // namespace

Mat3 to_chain_basis(const NetworkConfig& config, double t) {
  if (config.tag != Configuration::A) {
    throw std::invalid_argument("chain reduction requires configuration A");
  }
  const Mat4 b = transformed_site_block(config, t, chain_basis_matrix());
  return b.topLeftCorner<3, 3>();
}

std::pair<Mat2, Mat2> to_split_basis(const NetworkConfig& config, double t) {
  if (config.tag != Configuration::B) {
    throw std::invalid_argument("invariant-subspace split requires configuration B");
  }
  const Mat4 b = transformed_site_block(config, t, split_basis_matrix());
  return {b.topLeftCorner<2, 2>(), b.bottomRightCorner<2, 2>()};
}

}  // namespace qnet
