#include <doctest.h>

#include <cmath>

#include "entdyn/scenarios.hpp"
#include "entdyn/stationary.hpp"
#include "entdyn/sampling.hpp"

using namespace entdyn;

namespace {

GeneratorSpec spec_of(ScenarioId id) { return make_scenario(id).spec; }

}  // namespace

TEST_CASE("kernel dimensions of the shipped generators") {
  auto dim = [](ScenarioId id) {
    GeneratorSpec spec = spec_of(id);
    spec.schedule = CouplingSchedule::constant();
    return kernel(build_superoperator(spec)).dimension;
  };
  CHECK(dim(ScenarioId::Case1a) == 1);
  CHECK(dim(ScenarioId::Case2a) == 1);
  CHECK(dim(ScenarioId::Case2bPhase) == 4);
  CHECK(dim(ScenarioId::CollectiveZeroT) == 4);
  CHECK(dim(ScenarioId::CollectiveInfT) == 2);
  CHECK(dim(ScenarioId::Case2bHybrid) == 2);
  CHECK(dim(ScenarioId::Case3a) == 1);
}

TEST_CASE("kernel basis elements are Hermitian, orthonormal and annihilated") {
  for (ScenarioId id : {ScenarioId::Case1a, ScenarioId::Case2bPhase, ScenarioId::CollectiveZeroT,
                        ScenarioId::CollectiveInfT, ScenarioId::Case3a}) {
    Superoperator op = build_superoperator(spec_of(id));
    StationarySet set = kernel(op);
    REQUIRE(set.dimension >= 1);
    for (std::size_t i = 0; i < set.kernel_basis.size(); ++i) {
      const Mat& b = set.kernel_basis[i];
      CHECK(is_hermitian(b, 1e-10));
      CHECK(max_abs(op.apply(b)) <= 1e-9 * max_abs(op.mat) * std::max(max_abs(b), 1e-30));
      for (std::size_t j = 0; j < i; ++j) {
        double inner = (set.kernel_basis[j].adjoint() * b).trace().real();
        CHECK(std::abs(inner) <= 1e-9);
      }
    }
  }
}

TEST_CASE("phase kernel is the diagonal subspace") {
  StationarySet set = kernel(build_superoperator(spec_of(ScenarioId::Case2bPhase)));
  REQUIRE(set.dimension == 4);
  for (const Mat& b : set.kernel_basis) {
    Mat off = b;
    off.diagonal().setZero();
    CHECK(max_abs(off) <= 1e-10);
  }
}

TEST_CASE("hybrid kernel is supported on the decayed qubit ground sector") {
  StationarySet set = kernel(build_superoperator(spec_of(ScenarioId::Case2bHybrid)));
  REQUIRE(set.dimension == 2);
  for (const Mat& b : set.kernel_basis) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!((i == 0 && j == 0) || (i == 1 && j == 1))) CHECK(std::abs(b(i, j)) <= 1e-10);
  }
}

TEST_CASE("asymptotic states of the shipped generators") {
  RngStream rng(41, 0);
  MeasureSpec hs = MeasureSpec::hilbert_schmidt();

  GeneratorSpec zero_t = spec_of(ScenarioId::Case2a);
  for (int i = 0; i < 5; ++i) {
    DensityMatrix limit = asymptotic_state(sample(hs, rng), zero_t);
    CHECK(max_abs(limit.mat() - projector(ket2(0, 0))) <= 1e-8);
  }

  // Common reservoir at infinite temperature: the singlet weight survives
  // and everything else flattens.
  GeneratorSpec inf_t = spec_of(ScenarioId::CollectiveInfT);
  Vec singlet = states::bell_psi_minus();
  for (int i = 0; i < 5; ++i) {
    DensityMatrix rho0 = sample(hs, rng);
    double q = (singlet.adjoint() * rho0.mat() * singlet)(0).real();
    Mat expected = q * projector(singlet) + (1.0 - q) / 3.0 * (eye(4) - projector(singlet));
    DensityMatrix limit = asymptotic_state(rho0, inf_t);
    CHECK(max_abs(limit.mat() - expected) <= 1e-8);
  }

  GeneratorSpec engineered = spec_of(ScenarioId::Case3a);
  DensityMatrix limit = asymptotic_state(sample(hs, rng), engineered);
  CHECK(max_abs(limit.mat() - states::singlet().mat()) <= 1e-8);
}

TEST_CASE("decaying-coupling asymptote equals the constant run at time 1/kappa") {
  RngStream rng(42, 0);
  GeneratorSpec decaying = spec_of(ScenarioId::Case1b);
  GeneratorSpec constant = decaying;
  constant.schedule = CouplingSchedule::constant();
  const double kappa = decaying.schedule.kappa;
  for (int i = 0; i < 3; ++i) {
    DensityMatrix rho0 = sample(MeasureSpec::hilbert_schmidt(), rng);
    DensityMatrix via_limit = asymptotic_state(rho0, decaying);
    DensityMatrix via_clock = propagate(rho0, constant, 1.0 / kappa);
    CHECK(max_abs(via_limit.mat() - via_clock.mat()) <= 1e-12);
    // Independent route: integrate the time-dependent equation far out.
    DensityMatrix integrated = propagate_nonautonomous(rho0, decaying, 12.0 / kappa);
    CHECK(max_abs(integrated.mat() - via_limit.mat()) <= 1e-8);
  }
}

TEST_CASE("representative stationary states stay fixed under propagation") {
  RngStream rng(43, 0);
  for (ScenarioId id : {ScenarioId::Case1a, ScenarioId::Case2bPhase, ScenarioId::CollectiveZeroT}) {
    GeneratorSpec spec = spec_of(id);
    double horizon = 10.0 / min_positive_channel_rate(spec);
    DynamicsClass cls = classify_dynamics(spec, 64, rng);
    for (std::size_t i = 0; i < 3 && i < cls.representatives.size(); ++i) {
      const DensityMatrix& rep = cls.representatives[i];
      DensityMatrix moved = propagate(rep, spec, horizon);
      CHECK(max_abs(moved.mat() - rep.mat()) <= 1e-8);
    }
  }
}

TEST_CASE("classification of all shipped scenarios") {
  RngStream rng(44, 0);
  for (ScenarioId id :
       {ScenarioId::Case1a, ScenarioId::Case1b, ScenarioId::Case2a, ScenarioId::Case2bPhase,
        ScenarioId::CollectiveZeroT, ScenarioId::CollectiveInfT, ScenarioId::Case2bHybrid,
        ScenarioId::Case3a, ScenarioId::Case3b}) {
    Scenario scenario = make_scenario(id);
    DynamicsClass cls = classify_dynamics(scenario.spec, 64, rng);
    CHECK(cls.label == scenario.expected_class);
  }
}

TEST_CASE("classify_dynamics rejects undersized probe sets") {
  RngStream rng(45, 0);
  CHECK_THROWS_AS(classify_dynamics(spec_of(ScenarioId::Case1a), 16, rng), std::invalid_argument);
}
