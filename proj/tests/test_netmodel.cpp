#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qnet/netmodel.hpp"

using namespace qnet;
using std::numbers::pi;

namespace {

DeformationSpec quarter_amp(double phase = 0.0) {
  return DeformationSpec{0.25, 1.0, phase};
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  std::vector<double> v(eig.eigenvalues().data(),
                        eig.eigenvalues().data() + m.rows());
  std::sort(v.begin(), v.end());
  return v;
}

NetworkConfig random_deformed(Configuration tag, std::mt19937& rng) {
  std::uniform_real_distribution<double> amp(0.0, 0.45);
  std::uniform_real_distribution<double> freq(0.0, 3.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * pi);
  const DeformationSpec z1{amp(rng), freq(rng), ph(rng)};
  const DeformationSpec z2{amp(rng), freq(rng), ph(rng)};
  return NetworkConfig::diamond(tag, 1.0, z1, z2);
}

}  // namespace

TEST_CASE("deformation and edge validation") {
  CHECK_THROWS(DeformationSpec{0.5, 1.0, 0.0}.validate());
  CHECK_THROWS(DeformationSpec{-0.1, 1.0, 0.0}.validate());
  CHECK_THROWS(DeformationSpec{0.2, -1.0, 0.0}.validate());
  CHECK_NOTHROW(DeformationSpec{0.49, 0.0, -3.0}.validate());

  CHECK_THROWS(Edge{1, 1, +1, 1.0, {}}.validate());
  CHECK_THROWS(Edge{1, 2, 0, 1.0, {}}.validate());
  CHECK_THROWS(Edge{1, 2, +1, 0.0, {}}.validate());
}

TEST_CASE("network config invariants") {
  CHECK_NOTHROW(NetworkConfig::diamond(Configuration::A));
  CHECK_NOTHROW(NetworkConfig::diamond(Configuration::B));

  // sign pattern must match the tag
  NetworkConfig bad = NetworkConfig::diamond(Configuration::A);
  bad.edges[3].sign = -1;
  CHECK_THROWS(bad.validate());

  // paired-edge deformation constraint
  NetworkConfig unpaired = NetworkConfig::diamond(Configuration::A);
  unpaired.edges[0].deformation = quarter_amp();
  CHECK_THROWS(unpaired.validate());
}

TEST_CASE("coupling_at matches the dipolar modulation law") {
  Edge plain{1, 2, +1, 1.0, {}};
  CHECK(coupling_at(plain, 0.0) == doctest::Approx(1.0));
  CHECK(coupling_at(plain, 17.3) == doctest::Approx(1.0));

  Edge deformed{1, 2, +1, 1.0, quarter_amp()};
  CHECK(coupling_at(deformed, 0.0) == doctest::Approx(1.0));
  CHECK(coupling_at(deformed, pi / 2) == doctest::Approx(8.0));

  Edge negative{3, 4, -1, 1.0, quarter_amp()};
  CHECK(coupling_at(negative, 3 * pi / 2) ==
        doctest::Approx(-1.0 / (1.5 * 1.5 * 1.5)));
}

TEST_CASE("coupling periodicity and sign constancy") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> times(0.0, 40.0);
  Edge e{2, 4, -1, 0.7, DeformationSpec{0.3, 1.7, 0.4}};
  const double period = 2.0 * pi / e.deformation->omega0;
  for (int k = 0; k < 200; ++k) {
    const double t = times(rng);
    CHECK(coupling_at(e, t) == doctest::Approx(coupling_at(e, t + period)).epsilon(1e-12));
    CHECK(coupling_at(e, t) < 0.0);
  }
}

TEST_CASE("hamiltonian_at structure") {
  SUBCASE("config A eigenvalues {-2, 0, 0, 2}") {
    const NetworkConfig config = NetworkConfig::diamond(Configuration::A);
    const Mat5 h = hamiltonian_at(config, 0.0);
    const Eigen::Matrix4d block = h.topLeftCorner<4, 4>().real();
    const auto ev = sorted_eigenvalues(block);
    CHECK(ev[0] == doctest::Approx(-2.0));
    CHECK(ev[1] == doctest::Approx(0.0));
    CHECK(ev[2] == doctest::Approx(0.0));
    CHECK(ev[3] == doctest::Approx(2.0));
  }
  SUBCASE("config B eigenvalues {-sqrt2, -sqrt2, sqrt2, sqrt2}") {
    const NetworkConfig config = NetworkConfig::diamond(Configuration::B);
    const Mat5 h = hamiltonian_at(config, 0.0);
    const auto ev = sorted_eigenvalues(h.topLeftCorner<4, 4>().real());
    const double r2 = std::sqrt(2.0);
    CHECK(ev[0] == doctest::Approx(-r2));
    CHECK(ev[1] == doctest::Approx(-r2));
    CHECK(ev[2] == doctest::Approx(r2));
    CHECK(ev[3] == doctest::Approx(r2));
  }
  SUBCASE("site frequency fills the diagonal, sink stays at zero") {
    const NetworkConfig config =
        NetworkConfig::diamond(Configuration::A, 1.0, {}, {}, 5.0);
    const Mat5 h = hamiltonian_at(config, 0.0);
    for (int s = 0; s < 4; ++s) CHECK(h(s, s).real() == doctest::Approx(5.0));
    CHECK(h(kSinkIndex, kSinkIndex) == Complex(0.0));
  }
}

TEST_CASE("hamiltonian is Hermitian with a decoupled sink at all times") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> times(0.0, 30.0);
  for (Configuration tag : {Configuration::A, Configuration::B}) {
    const NetworkConfig config = random_deformed(tag, rng);
    for (int k = 0; k < 25; ++k) {
      const double t = times(rng);
      const Mat5 h = hamiltonian_at(config, t);
      CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
      for (int s = 0; s < kDim; ++s) {
        CHECK(h(kSinkIndex, s) == Complex(0.0));
        CHECK(h(s, kSinkIndex) == Complex(0.0));
      }
    }
  }
}

TEST_CASE("paired edges keep equal coupling magnitude") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> times(0.0, 30.0);
  const NetworkConfig config = random_deformed(Configuration::B, rng);
  for (int k = 0; k < 50; ++k) {
    const double t = times(rng);
    CHECK(std::abs(coupling_at(config.edges[0], t)) ==
          doctest::Approx(std::abs(coupling_at(config.edges[1], t))));
    CHECK(std::abs(coupling_at(config.edges[2], t)) ==
          doctest::Approx(std::abs(coupling_at(config.edges[3], t))));
  }
}

TEST_CASE("chain reduction of configuration A") {
  const NetworkConfig fixed = NetworkConfig::diamond(Configuration::A);
  const double r2 = std::sqrt(2.0);

  SUBCASE("fixed couplings give sqrt2 off-diagonals") {
    const Mat3 chain = to_chain_basis(fixed, 0.3);
    CHECK(chain(0, 1) == doctest::Approx(r2));
    CHECK(chain(1, 2) == doctest::Approx(r2));
    CHECK(chain(0, 2) == doctest::Approx(0.0));
  }
  SUBCASE("site-1 deformation scales the first chain coupling") {
    const NetworkConfig config =
        NetworkConfig::diamond(Configuration::A, 1.0, quarter_amp(), {});
    const Mat3 chain = to_chain_basis(config, pi / 2);
    CHECK(chain(0, 1) == doctest::Approx(r2 * 8.0));
    CHECK(chain(1, 2) == doctest::Approx(r2));
  }
  SUBCASE("zero-amplitude deformation matches the fixed case") {
    const NetworkConfig config = NetworkConfig::diamond(
        Configuration::A, 1.0, DeformationSpec{0.0, 1.0, 0.0}, {});
    CHECK((to_chain_basis(config, 1.7) - to_chain_basis(fixed, 1.7))
              .cwiseAbs()
              .maxCoeff() == doctest::Approx(0.0));
  }
  SUBCASE("configuration B is rejected") {
    CHECK_THROWS(to_chain_basis(NetworkConfig::diamond(Configuration::B), 0.0));
  }
}

TEST_CASE("invariant-subspace split of configuration B") {
  const double r2 = std::sqrt(2.0);

  SUBCASE("fixed couplings give sqrt2 in both blocks") {
    const auto [h1, h2] = to_split_basis(NetworkConfig::diamond(Configuration::B), 0.0);
    CHECK(h1(0, 1) == doctest::Approx(r2));
    CHECK(h2(0, 1) == doctest::Approx(r2));
  }
  SUBCASE("antiphase deformation splits the block couplings") {
    const NetworkConfig config = NetworkConfig::diamond(
        Configuration::B, 1.0, quarter_amp(0.0), quarter_amp(pi));
    const auto [h1, h2] = to_split_basis(config, pi / 2);
    CHECK(h1(0, 1) == doctest::Approx(r2 * 8.0));
    CHECK(h2(0, 1) == doctest::Approx(r2 * 8.0 / 27.0));
  }
  SUBCASE("cross-block entries vanish at random times") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> times(0.0, 50.0);
    const NetworkConfig config = random_deformed(Configuration::B, rng);
    const Mat4 u = split_basis_matrix();
    for (int k = 0; k < 20; ++k) {
      const double t = times(rng);
      const Mat4 block =
          u * hamiltonian_at(config, t).topLeftCorner<4, 4>().real() * u.transpose();
      CHECK(std::abs(block(0, 2)) < 1e-12);
      CHECK(std::abs(block(0, 3)) < 1e-12);
      CHECK(std::abs(block(1, 2)) < 1e-12);
      CHECK(std::abs(block(1, 3)) < 1e-12);
    }
  }
  SUBCASE("configuration A is rejected") {
    CHECK_THROWS(to_split_basis(NetworkConfig::diamond(Configuration::A), 0.0));
  }
}

TEST_CASE("transformed representations are unitarily equivalent to the site block") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> times(0.0, 20.0);
  for (int k = 0; k < 50; ++k) {
    const Configuration tag = (k % 2 == 0) ? Configuration::A : Configuration::B;
    const NetworkConfig config = random_deformed(tag, rng);
    const double t = times(rng);
    const Eigen::Matrix4d block =
        hamiltonian_at(config, t).topLeftCorner<4, 4>().real();
    const auto direct = sorted_eigenvalues(block);

    std::vector<double> transformed;
    if (tag == Configuration::A) {
      const auto chain = sorted_eigenvalues(to_chain_basis(config, t));
      transformed = chain;
      transformed.push_back(config.omega);  // decoupled antisymmetric state
    } else {
      const auto [h1, h2] = to_split_basis(config, t);
      for (const auto& b : {h1, h2}) {
        const auto ev = sorted_eigenvalues(b);
        transformed.insert(transformed.end(), ev.begin(), ev.end());
      }
    }
    std::sort(transformed.begin(), transformed.end());
    REQUIRE(transformed.size() == 4);
    for (int j = 0; j < 4; ++j) {
      CHECK(direct[j] == doctest::Approx(transformed[j]).epsilon(1e-10));
    }
  }
}
