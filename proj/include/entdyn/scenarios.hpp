// scenarios.hpp - the shipped reservoir catalog and named initial states

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "entdyn/lindblad.hpp"
#include "entdyn/states.hpp"
#include "entdyn/stationary.hpp"

namespace entdyn {

enum class ScenarioId {
  Case1a,            // independent thermal reservoirs, positive temperature
  Case1b,            // same with exponentially decaying coupling
  Case2a,            // independent thermal reservoirs at zero temperature
  Case2bPhase,       // independent phase reservoirs
  CollectiveZeroT,   // common reservoir, zero temperature
  CollectiveInfT,    // common reservoir, infinite temperature
  Case2bHybrid,      // decay on qubit A, dephasing on qubit B
  Case3a,            // exchange-coupled pair relaxing to its entangled ground state
  Case3b,            // same with exponentially decaying coupling
};

struct Scenario {
  ScenarioId id;
  std::string name;  // CLI token
  GeneratorSpec spec;
  ClassLabel expected_class;
  std::vector<std::pair<std::string, double>> params;  // resolved rates, stable order
};

// Builds a scenario at its default rates with optional per-key overrides.
// Unknown keys, negative rates, or g <= omega are rejected.
Scenario make_scenario(ScenarioId id, const std::map<std::string, double>& overrides = {});

const char* scenario_name(ScenarioId id);
std::vector<std::string> scenario_names();

// Accepts canonical names and a few aliases; returns nullopt when unknown.
std::optional<ScenarioId> scenario_from_name(std::string_view name);

enum class NamedStateKind { Mix, Singlet, Werner, XState, BoundaryMix, SeparablePure, MixTriplet };

struct NamedState {
  NamedStateKind kind;
  std::vector<double> params;
  DensityMatrix state;
};

NamedState make_named_state(NamedStateKind kind, const std::vector<double>& params = {});

// Parses tokens like "mix", "singlet", "werner:0.1", "xstate:0.3,0.2,0.2"
// (alias "eq2:..."), "boundary_mix", "separable_pure", "mix_triplet".
NamedState parse_named_state(std::string_view token);

}  // namespace entdyn
