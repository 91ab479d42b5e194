// stationary.hpp - kernel computation, asymptotic states and the six-class
// geometric classification of relaxing dynamics

#pragma once

#include <optional>
#include <vector>

#include "entdyn/entanglement.hpp"
#include "entdyn/lindblad.hpp"
#include "entdyn/rng.hpp"

namespace entdyn {

enum class Geometry { AllIntS, TouchesBoundary, AllE };
enum class Cardinality { Singleton, Family };

// Singleton/Family crossed with the location of the asymptotic set relative
// to the separable set: 1 = interior of S, 2 = touching its boundary,
// 3 = entirely entangled.
enum class ClassLabel { C1a, C1b, C2a, C2b, C3a, C3b };

const char* class_label_name(ClassLabel label);  // "1a", "1b", ...
ClassLabel class_label_from(Cardinality card, Geometry geom);

struct StationarySet {
  std::vector<Mat> kernel_basis;  // Hermitian, orthonormal in the HS inner product
  int dimension = 0;
  std::vector<DensityMatrix> representative_states;
  std::optional<Geometry> geometry;
  std::optional<Cardinality> cardinality;
};

struct DynamicsClass {
  ClassLabel label;
  Cardinality cardinality;
  Geometry geometry;
  std::vector<LocalizationReport> evidence;       // per probed asymptotic state
  std::vector<DensityMatrix> representatives;     // the probed asymptotic states
};

// Null space of the generator via SVD (threshold tol * sigma_max), reshaped,
// Hermitized and orthonormalized. Trace preservation guarantees dimension
// >= 1; an empty kernel is reported as an error.
StationarySet kernel(const Superoperator& op, double tol = 1e-9);

// Autonomous dynamics: propagate with doubling horizon from T0 = 10/max-rate
// until ||rho(2T) - rho(T)||_max <= 1e-10, giving up at 2^15 T0. Decaying
// coupling: the trajectory freezes at integrated coupling 1/kappa, so the
// constant-coupling solution at that time is returned (pure dissipator only).
DensityMatrix asymptotic_state(const DensityMatrix& rho0, const GeneratorSpec& spec);

// Cardinality from the kernel dimension (constant coupling) or structurally
// for a decaying coupling, where the asymptotic map is an invertible linear
// deformation of the state set and therefore never a single point. Geometry
// from localizing the asymptotic states of `probes` random initial states
// plus a fixed set of extreme seeds (basis projectors, Bell projectors,
// maximal mixtures): every probe in region I -> AllIntS, every probe
// entangled -> AllE, anything else -> TouchesBoundary.
DynamicsClass classify_dynamics(const GeneratorSpec& spec, int probes, RngStream& rng);

}  // namespace entdyn
