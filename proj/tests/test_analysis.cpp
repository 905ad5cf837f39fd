#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qnet/analysis.hpp"

using namespace qnet;
using std::numbers::pi;

TEST_CASE("scenario names round-trip") {
  for (ScenarioName name : all_scenarios()) {
    CHECK(scenario_from_string(to_string(name)) == name);
  }
  CHECK_THROWS(scenario_from_string("wiggle"));
}

TEST_CASE("scenario presets deform the right edge pairs") {
  const Scenario fixed = Scenario::preset(ScenarioName::Fixed);
  CHECK_FALSE(fixed.zeta1.has_value());
  CHECK_FALSE(fixed.zeta2.has_value());

  const Scenario s1 = Scenario::preset(ScenarioName::Site1Osc);
  REQUIRE(s1.zeta1.has_value());
  CHECK_FALSE(s1.zeta2.has_value());
  CHECK(s1.zeta1->amplitude == doctest::Approx(0.25));
  CHECK(s1.zeta1->omega0 == doctest::Approx(1.0));
  CHECK(s1.zeta1->phase == doctest::Approx(0.0));

  const Scenario s4 = Scenario::preset(ScenarioName::Site4Osc);
  CHECK_FALSE(s4.zeta1.has_value());
  REQUIRE(s4.zeta2.has_value());

  const Scenario anti = Scenario::preset(ScenarioName::Antiphase);
  REQUIRE(anti.zeta1.has_value());
  REQUIRE(anti.zeta2.has_value());
  CHECK(anti.zeta2->phase == doctest::Approx(pi));

  const Scenario in = Scenario::preset(ScenarioName::Inphase);
  REQUIRE(in.zeta1.has_value());
  REQUIRE(in.zeta2.has_value());
  CHECK(in.zeta1->phase == doctest::Approx(in.zeta2->phase));
}

TEST_CASE("inphase networks keep zeta1 equal to zeta2") {
  const NetworkConfig config =
      make_network(Scenario::preset(ScenarioName::Inphase), Configuration::A);
  for (double t : {0.0, 0.7, 1.9, 4.4, 11.0}) {
    CHECK(coupling_at(config.edges[0], t) ==
          doctest::Approx(coupling_at(config.edges[2], t)));
  }
}

TEST_CASE("dark subspace survives deformation") {
  EvolveOptions fast;
  fast.snapshot_stride = 0;
  const Trajectory traj =
      run_scenario(Scenario::preset(ScenarioName::Site1Osc), Configuration::B,
                   NoiseSpec{0.0, 0.0, 2.1}, 10.0, 1e-3, fast);
  CHECK(traj.final_sink_population() < 1e-9);
}

TEST_CASE("gamma sweep finds the fixed-geometry optimum near 1.05") {
  // Coarse grid keeps this test quick; the acceptance suite runs the full
  // 29-point protocol.
  SweepRequest request;
  request.n_points = 8;
  request.h = 2e-3;
  const SweepResult result =
      gamma_sweep(Scenario::preset(ScenarioName::Fixed), request);
  CHECK(result.gamma_opt > 0.85);
  CHECK(result.gamma_opt < 1.25);
  CHECK(result.efficiency_opt > 0.98);
  CHECK(result.gammas.size() == 8);
  CHECK(result.t_eval == doctest::Approx(20.0));
  // refined optimum can only improve on the grid maximum
  for (double e : result.efficiencies) CHECK(result.efficiency_opt >= e);
}

TEST_CASE("gamma sweep rejects degenerate grids") {
  SweepRequest bad;
  bad.n_points = 1;
  CHECK_THROWS(gamma_sweep(Scenario::preset(ScenarioName::Fixed), bad));
  SweepRequest inverted;
  inverted.gamma_min = 2.0;
  inverted.gamma_max = 1.0;
  CHECK_THROWS(gamma_sweep(Scenario::preset(ScenarioName::Fixed), inverted));
}

TEST_CASE("two-point sweep refines toward the better endpoint") {
  SweepRequest request;
  request.gamma_min = 0.2;   // weak dephasing: low efficiency
  request.gamma_max = 1.05;  // near-optimal
  request.n_points = 2;
  request.h = 2e-3;
  const SweepResult result =
      gamma_sweep(Scenario::preset(ScenarioName::Fixed), request);
  CHECK(result.efficiencies[1] > result.efficiencies[0]);
  CHECK(result.gamma_opt > 0.6);
}

TEST_CASE("sweep is deterministic") {
  SweepRequest request;
  request.n_points = 4;
  request.t_eval = 8.0;
  request.h = 2e-3;
  const Scenario scenario = Scenario::preset(ScenarioName::Antiphase);
  const SweepResult a = gamma_sweep(scenario, request);
  const SweepResult b = gamma_sweep(scenario, request);
  CHECK(a.gamma_opt == b.gamma_opt);
  CHECK(a.efficiency_opt == b.efficiency_opt);
}

TEST_CASE("efficiency varies smoothly along the sweep grid") {
  SweepRequest request;
  request.gamma_min = 0.2;
  request.gamma_max = 3.0;
  request.n_points = 29;  // spacing 0.1
  request.h = 2e-3;
  const SweepResult result =
      gamma_sweep(Scenario::preset(ScenarioName::Fixed), request);
  for (std::size_t k = 1; k < result.efficiencies.size(); ++k) {
    CHECK(std::abs(result.efficiencies[k] - result.efficiencies[k - 1]) < 0.2);
  }
}

TEST_CASE("fixed-geometry comparison: coherent transport wins") {
  const TransportComparison cmp = compare_transport(
      Scenario::preset(ScenarioName::Fixed), 20.0, 2e-3, /*reoptimize=*/false);
  CHECK(cmp.gamma_incoherent == doctest::Approx(kReferenceGammaOpt));
  CHECK(cmp.coherent_final > cmp.incoherent_final);
  CHECK_FALSE(cmp.crossover_time.has_value());
  CHECK(cmp.incoherent_final > 0.1);
}

TEST_CASE("antiphase comparison: persistent crossover to incoherent") {
  const TransportComparison cmp = compare_transport(
      Scenario::preset(ScenarioName::Antiphase), 20.0, 2e-3, /*reoptimize=*/false);
  CHECK(cmp.incoherent_final > cmp.coherent_final);
  REQUIRE(cmp.crossover_time.has_value());
  CHECK(*cmp.crossover_time < 20.0);
  REQUIRE(cmp.persistent_from.has_value());
  CHECK(*cmp.persistent_from < 20.0);
}
