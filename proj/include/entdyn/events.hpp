// events.hpp - per-trajectory event classification (sudden/asymptotic death,
// asymptotic entanglement, sudden birth) and Monte Carlo event probabilities

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entdyn/entanglement.hpp"
#include "entdyn/lindblad.hpp"
#include "entdyn/sampling.hpp"
#include "entdyn/stationary.hpp"

namespace entdyn {

struct EventFlags {
  bool sde = false;  // entanglement vanishes at finite time and stays zero
  bool ade = false;  // entanglement decays to zero only asymptotically
  bool ae = false;   // entanglement bounded away from zero asymptotically
  bool sbe = false;  // initially separable state with persistent asymptotic entanglement
};

struct EventRecord {
  bool initial_entangled = false;
  bool ever_entangled = false;  // entangled at t=0 or at any checkpoint
  EventFlags flags;
  std::optional<double> death_time;  // present iff sde
  double asymptotic_negativity = 0.0;
  LocalizationReport asymptotic_region{};
};

struct ClassifyOptions {
  double eps = kEps;
  double t_max = 0.0;      // <= 0: use 30 / (smallest positive channel rate)
  int n_checkpoints = 256;  // geometrically spaced, t=0 prepended
  // A checkpoint carries tail-sign information only while the state is
  // measurably away from its limit and det_pt sits above the determinant
  // noise plateau (entry noise to the fourth power, observed near 1e-50;
  // the floor keeps a six-order margin). A sudden per-step magnitude crash
  // marks the entry into that plateau and truncates the usable prefix.
  double settle_tol = 1e-9;
  double det_floor = 1e-44;
  double crash_ratio = 1e-10;
  int min_tail_run = 3;  // same-sign checkpoints needed to certify a tail sign
  bool locate_death_time = true;
};

// Raised when the late-time sign of det_pt cannot be certified; carries the
// horizon so callers can retry with a larger t_max.
class IndeterminateTail : public std::runtime_error {
 public:
  IndeterminateTail(const std::string& what, double t_max) : std::runtime_error(what), t_max_(t_max) {}
  double t_max() const { return t_max_; }

 private:
  double t_max_;
};

// Precomputes the checkpoint grid and its propagators for one generator so
// many trajectories can be classified cheaply. Immutable and safe to share
// across threads. Decaying-coupling dynamics are evaluated through the
// integrated-coupling clock change.
class TrajectoryOracle {
 public:
  TrajectoryOracle(const GeneratorSpec& spec, const ClassifyOptions& opts = {});

  const std::vector<double>& times() const { return times_; }  // size n_checkpoints + 1
  const ClassifyOptions& options() const { return opts_; }

  DensityMatrix state_at(const DensityMatrix& rho0, int checkpoint) const;
  DensityMatrix state_at_time(const DensityMatrix& rho0, double t) const;
  DensityMatrix asymptote(const DensityMatrix& rho0) const;

  EventRecord classify(const DensityMatrix& rho0) const;

 private:
  double effective_time(double t) const;

  GeneratorSpec spec_;
  ClassifyOptions opts_;
  Superoperator generator_;           // constant-coupling part
  std::vector<double> times_;
  std::vector<Mat> propagators_;      // one per checkpoint
};

// One-shot convenience around TrajectoryOracle.
EventRecord classify_trajectory(const DensityMatrix& rho0, const GeneratorSpec& spec,
                                const ClassifyOptions& opts = {});

// Coefficient of the slowest mode of det_pt along a trajectory under two
// independent zero-temperature decay reservoirs with equal rates. When it is
// nonzero its sign is the asymptotic sign of det_pt: positive predicts
// sudden death for an entangled initial state, negative asymptotic death.
double tail_coefficient_double_decay(const DensityMatrix& rho0);

// Same role for decay on qubit A combined with dephasing on qubit B: the
// product of two 2x2 block determinants, strictly positive whenever the
// initial state has full rank.
double tail_coefficient_decay_dephase(const DensityMatrix& rho0);

struct EventStats {
  long hits = 0;
  double estimate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

struct ProbabilityReport {
  std::string scenario;  // id tag chosen by the caller; empty for ad-hoc generators
  MeasureSpec measure;
  long n_samples = 0;
  long n_initial_entangled = 0;
  long n_indeterminate = 0;
  EventStats sde, ade, sde_prime, ade_prime, ae, sbe;  // primed = intersected with E
  ClassifyOptions opts;
};

// Wilson 95% score interval for `hits` successes out of `n`.
std::pair<double, double> wilson_interval(long hits, long n);

// Classifies n independent draws from the measure (per-sample substreams of
// measure.seed, so the result is independent of thread count). Indeterminate
// trajectories are counted separately; more than 5% of them is an error
// advising a larger horizon.
ProbabilityReport estimate_probabilities(const GeneratorSpec& spec, const MeasureSpec& measure,
                                         long n, const ClassifyOptions& opts = {},
                                         int threads = 1);

}  // namespace entdyn
