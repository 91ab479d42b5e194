#include <doctest.h>

#include <cmath>

#include "entdyn/events.hpp"
#include "entdyn/scenarios.hpp"

using namespace entdyn;

TEST_CASE("scenario names round-trip and aliases resolve") {
  for (const std::string& name : scenario_names()) {
    auto id = scenario_from_name(name);
    REQUIRE(id.has_value());
    CHECK(scenario_name(*id) == name);
  }
  CHECK(scenario_from_name("hybrid") == ScenarioId::Case2bHybrid);
  CHECK(scenario_from_name("case2b_collective_zero_t") == ScenarioId::CollectiveZeroT);
  CHECK(!scenario_from_name("case9z").has_value());
}

TEST_CASE("overrides are validated") {
  CHECK_NOTHROW(make_scenario(ScenarioId::Case1a, {{"gamma_up", 0.5}}));
  CHECK_THROWS_AS(make_scenario(ScenarioId::Case1a, {{"gamma_sideways", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_scenario(ScenarioId::Case1a, {{"gamma_up", -0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_scenario(ScenarioId::Case3a, {{"g", 0.5}}), std::invalid_argument);
}

TEST_CASE("named states parse and enforce their constraints") {
  CHECK(max_abs(parse_named_state("mix").state.mat() - 0.25 * eye(4)) == 0.0);
  CHECK(parse_named_state("werner:0.1").params[0] == 0.1);
  CHECK(parse_named_state("eq2:0.3,0.2,0.2").kind == NamedStateKind::XState);
  CHECK(parse_named_state("xstate:0.3,0.2,0.2").kind == NamedStateKind::XState);
  CHECK_THROWS_AS(parse_named_state("werner:1.4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_named_state("werner"), std::invalid_argument);
  CHECK_THROWS_AS(parse_named_state("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(make_named_state(NamedStateKind::XState, {0.4, 0.2, 0.1}),
                  std::invalid_argument);

  CHECK(localize(parse_named_state("mix_triplet").state).d ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("decaying-coupling scenarios keep their asymptotes in the expected region") {
  RngStream rng(61, 0);
  MeasureSpec hs = MeasureSpec::hilbert_schmidt();

  GeneratorSpec slow_off = make_scenario(ScenarioId::Case1b).spec;
  for (int i = 0; i < 64; ++i) {
    DensityMatrix limit = asymptotic_state(sample(hs, rng), slow_off);
    CHECK(localize(limit).region == Region::I);
  }

  GeneratorSpec engineered_off = make_scenario(ScenarioId::Case3b).spec;
  for (int i = 0; i < 64; ++i) {
    DensityMatrix limit = asymptotic_state(sample(hs, rng), engineered_off);
    CHECK(localize(limit).verdict == Verdict::Entangled);
  }
}

TEST_CASE("zero-temperature collective asymptotes satisfy the quartic determinant law") {
  RngStream rng(62, 0);
  GeneratorSpec spec = make_scenario(ScenarioId::CollectiveZeroT).spec;
  Vec singlet = states::bell_psi_minus();
  for (int i = 0; i < 16; ++i) {
    DensityMatrix rho0 = sample(MeasureSpec::hilbert_schmidt(), rng);
    double p = (singlet.adjoint() * rho0.mat() * singlet)(0).real();
    DensityMatrix limit = asymptotic_state(rho0, spec);
    CHECK(det_pt(limit) == doctest::Approx(-std::pow(0.5 * p, 4)).epsilon(1e-8));
  }
}

TEST_CASE("hybrid stationary family is the advertised two-parameter diagonal") {
  GeneratorSpec spec = make_scenario(ScenarioId::Case2bHybrid).spec;
  RngStream rng(63, 0);
  DensityMatrix rho0 = sample(MeasureSpec::hilbert_schmidt(), rng);
  DensityMatrix limit = asymptotic_state(rho0, spec);
  // Decayed qubit in its ground state, dephased qubit diagonal.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!((i == 0 && j == 0) || (i == 1 && j == 1)))
        CHECK(std::abs(limit(i, j)) <= 1e-8);
  CHECK(localize(limit).verdict == Verdict::Boundary);
}

TEST_CASE("engineered reservoir pins the entangled ground state") {
  GeneratorSpec spec = make_scenario(ScenarioId::Case3a).spec;
  RngStream rng(64, 0);
  DensityMatrix limit = asymptotic_state(sample(MeasureSpec::hilbert_schmidt(), rng), spec);
  CHECK(max_abs(limit.mat() - states::singlet().mat()) <= 1e-8);
}
