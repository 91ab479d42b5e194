#include "entdyn/events.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

namespace entdyn {

TrajectoryOracle::TrajectoryOracle(const GeneratorSpec& spec, const ClassifyOptions& opts)
    : spec_(spec), opts_(opts) {
  if (opts_.n_checkpoints < 2)
    throw std::invalid_argument("TrajectoryOracle: at least 2 checkpoints required");
  if (spec_.schedule.kind == ScheduleKind::ExpDecay && spec_.has_hamiltonian())
    throw std::invalid_argument("TrajectoryOracle: decaying coupling requires a pure dissipator");

  if (opts_.t_max <= 0.0) {
    double rate = min_positive_channel_rate(spec_);
    opts_.t_max = rate > 0.0 ? 30.0 / rate : 30.0;
  }

  GeneratorSpec constant = spec_;
  constant.schedule = CouplingSchedule::constant();
  generator_ = build_superoperator(constant);

  const int n = opts_.n_checkpoints;
  times_.reserve(n + 1);
  times_.push_back(0.0);
  const double t1 = opts_.t_max / 1024.0;
  const double ratio = std::pow(opts_.t_max / t1, 1.0 / (n - 1));
  double t = t1;
  for (int k = 1; k <= n; ++k) {
    times_.push_back(std::min(t, opts_.t_max));
    t *= ratio;
  }
  times_.back() = opts_.t_max;

  propagators_.reserve(times_.size());
  for (double tk : times_) propagators_.push_back((generator_.mat * effective_time(tk)).exp());
}

double TrajectoryOracle::effective_time(double t) const {
  return spec_.schedule.kind == ScheduleKind::ExpDecay ? reparam_g(spec_.schedule.kappa, t) : t;
}

DensityMatrix TrajectoryOracle::state_at(const DensityMatrix& rho0, int checkpoint) const {
  return validate_density(unvec(propagators_[checkpoint] * vec(rho0.mat()), 4));
}

DensityMatrix TrajectoryOracle::state_at_time(const DensityMatrix& rho0, double t) const {
  Mat p = (generator_.mat * effective_time(t)).exp();
  return validate_density(unvec(p * vec(rho0.mat()), 4));
}

DensityMatrix TrajectoryOracle::asymptote(const DensityMatrix& rho0) const {
  return asymptotic_state(rho0, spec_);
}

namespace {

// Trailing run of same-sign det values over the given checkpoint indices
// (exact zeros are skipped).
struct TailRun {
  int sign = 0;
  int length = 0;
};

TailRun trailing_sign_run(const std::vector<double>& dets, const std::vector<int>& included) {
  TailRun run;
  for (auto it = included.rbegin(); it != included.rend(); ++it) {
    double v = dets[static_cast<std::size_t>(*it)];
    if (v == 0.0) continue;
    int s = v > 0.0 ? 1 : -1;
    if (run.sign == 0) {
      run.sign = s;
      run.length = 1;
    } else if (s == run.sign) {
      ++run.length;
    } else {
      break;
    }
  }
  return run;
}

}  // namespace

EventRecord TrajectoryOracle::classify(const DensityMatrix& rho0) const {
  const double eps = opts_.eps;
  EventRecord rec;
  rec.initial_entangled = localize(rho0, eps).verdict == Verdict::Entangled;

  DensityMatrix limit = asymptote(rho0);
  rec.asymptotic_region = localize(limit, eps);
  rec.asymptotic_negativity = negativity(limit);

  if (rec.asymptotic_negativity > eps) {
    rec.flags.ae = true;
    rec.flags.sbe = !rec.initial_entangled;
    rec.ever_entangled = true;
    return rec;
  }

  std::vector<double> dets(times_.size());
  std::vector<int> included;  // checkpoints with trustworthy sign data
  included.reserve(times_.size());
  bool ever = rec.initial_entangled;
  for (std::size_t k = 0; k < times_.size(); ++k) {
    DensityMatrix s = state_at(rho0, static_cast<int>(k));
    dets[k] = det_pt(s);
    if (!ever && negativity(s) > eps) ever = true;
    if (max_abs(s.mat() - limit.mat()) > opts_.settle_tol &&
        std::abs(dets[k]) > opts_.det_floor)
      included.push_back(static_cast<int>(k));
  }
  // A per-step collapse of |det_pt| by more than crash_ratio marks the point
  // where the determinant hits its numerical noise plateau; nothing after it
  // is usable.
  for (std::size_t pos = 1; pos < included.size(); ++pos) {
    double prev = std::abs(dets[static_cast<std::size_t>(included[pos - 1])]);
    double next = std::abs(dets[static_cast<std::size_t>(included[pos])]);
    if (prev > 0.0 && next < opts_.crash_ratio * prev) {
      included.resize(pos);
      break;
    }
  }
  rec.ever_entangled = ever;
  if (!ever) return rec;  // never visibly entangled: no death event

  if (rec.asymptotic_region.region == Region::I) {
    // The limit has an open separable neighborhood that absorbs the tail.
    rec.flags.sde = true;
  } else {
    TailRun run = trailing_sign_run(dets, included);
    if (run.sign > 0 && run.length >= opts_.min_tail_run) {
      rec.flags.sde = true;
    } else if (run.sign < 0 && run.length >= opts_.min_tail_run &&
               rec.asymptotic_region.verdict == Verdict::Boundary) {
      rec.flags.ade = true;
    } else {
      throw IndeterminateTail(
          "classify: det_pt tail not certifiable at t_max=" + std::to_string(opts_.t_max) +
              " (sign run " + std::to_string(run.sign * run.length) + "); extend t_max",
          opts_.t_max);
    }
  }

  if (rec.flags.sde && opts_.locate_death_time) {
    // Bracket the last negative-to-positive crossing of det_pt among the
    // informative checkpoints.
    int lo_idx = -1, hi_idx = -1;
    for (std::size_t pos = included.size(); pos-- > 1;) {
      int k_prev = included[pos - 1];
      int k_next = included[pos];
      if (dets[k_prev] < 0.0 && dets[k_next] > 0.0) {
        lo_idx = k_prev;
        hi_idx = k_next;
        break;
      }
    }
    if (lo_idx >= 0) {
      double lo = times_[lo_idx];
      double hi = times_[hi_idx];
      while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        (det_pt(state_at_time(rho0, mid)) < 0.0 ? lo : hi) = mid;
      }
      rec.death_time = 0.5 * (lo + hi);
    } else {
      // Entanglement was only visible through negativity at noise-level
      // det_pt; fall back to the negativity threshold crossing.
      int last_alive = -1;
      for (int k = static_cast<int>(dets.size()) - 1; k >= 0; --k) {
        if (negativity(state_at(rho0, k)) > eps) {
          last_alive = k;
          break;
        }
      }
      double lo = last_alive >= 0 ? times_[last_alive] : 0.0;
      double hi = last_alive + 1 < static_cast<int>(times_.size()) ? times_[last_alive + 1]
                                                                   : opts_.t_max;
      while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        (negativity(state_at_time(rho0, mid)) > eps ? lo : hi) = mid;
      }
      rec.death_time = 0.5 * (lo + hi);
    }
  }
  return rec;
}

EventRecord classify_trajectory(const DensityMatrix& rho0, const GeneratorSpec& spec,
                                const ClassifyOptions& opts) {
  return TrajectoryOracle(spec, opts).classify(rho0);
}

double tail_coefficient_double_decay(const DensityMatrix& rho0) {
  if (rho0.dim() != 4) throw std::invalid_argument("tail_coefficient: two-qubit state required");
  const Mat& r = rho0.mat();
  Mat m(4, 4);
  m(0, 0) = 1.0;
  m(0, 1) = std::conj(r(0, 1) + r(2, 3));
  m(0, 2) = r(0, 2) + r(1, 3);
  m(0, 3) = r(1, 2);
  m(1, 1) = r(1, 1) + r(3, 3);
  m(1, 2) = r(0, 3);
  m(1, 3) = r(1, 3);
  m(2, 2) = r(2, 2) + r(3, 3);
  m(2, 3) = std::conj(r(2, 3));
  m(3, 3) = r(3, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  return determinant(m).real();
}

double tail_coefficient_decay_dephase(const DensityMatrix& rho0) {
  if (rho0.dim() != 4) throw std::invalid_argument("tail_coefficient: two-qubit state required");
  const Mat& r = rho0.mat();
  double block_b0 = (r(2, 2) * (r(0, 0) + r(2, 2))).real() - std::norm(r(0, 2));
  double block_b1 = (r(3, 3) * (r(1, 1) + r(3, 3))).real() - std::norm(r(1, 3));
  return block_b0 * block_b1;
}

std::pair<double, double> wilson_interval(long hits, long n) {
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The score interval is exact at empty and full counts.
  double lo = hits == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = hits == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace {

void finalize(EventStats& stats, long n) {
  stats.estimate = static_cast<double>(stats.hits) / static_cast<double>(n);
  auto [lo, hi] = wilson_interval(stats.hits, n);
  stats.wilson_lo = lo;
  stats.wilson_hi = hi;
}

}  // namespace

ProbabilityReport estimate_probabilities(const GeneratorSpec& spec, const MeasureSpec& measure,
                                         long n, const ClassifyOptions& opts, int threads) {
  if (n < 100) throw std::invalid_argument("estimate_probabilities: n >= 100 required");
  if (threads < 1) threads = 1;

  TrajectoryOracle oracle(spec, opts);

  std::vector<std::optional<EventRecord>> records(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> worker_errors(static_cast<std::size_t>(threads));
  auto worker = [&](int slot, long begin, long end) {
    try {
      for (long i = begin; i < end; ++i) {
        RngStream stream(measure.seed, static_cast<std::uint64_t>(i));
        DensityMatrix rho0 = sample(measure, stream);
        try {
          records[static_cast<std::size_t>(i)] = oracle.classify(rho0);
        } catch (const IndeterminateTail&) {
          records[static_cast<std::size_t>(i)] = std::nullopt;
        }
      }
    } catch (...) {
      worker_errors[static_cast<std::size_t>(slot)] = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0, 0, n);
  } else {
    std::vector<std::thread> pool;
    long chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      long begin = w * chunk;
      long end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, w, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  for (const std::exception_ptr& err : worker_errors)
    if (err) std::rethrow_exception(err);

  ProbabilityReport report;
  report.measure = measure;
  report.n_samples = n;
  report.opts = oracle.options();
  for (const auto& maybe : records) {
    if (!maybe) {
      ++report.n_indeterminate;
      continue;
    }
    const EventRecord& rec = *maybe;
    if (rec.initial_entangled) ++report.n_initial_entangled;
    if (rec.flags.sde) {
      ++report.sde.hits;
      if (rec.initial_entangled) ++report.sde_prime.hits;
    }
    if (rec.flags.ade) {
      ++report.ade.hits;
      if (rec.initial_entangled) ++report.ade_prime.hits;
    }
    if (rec.flags.ae) ++report.ae.hits;
    if (rec.flags.sbe) ++report.sbe.hits;
  }

  if (20 * report.n_indeterminate > n)
    throw std::runtime_error(
        "estimate_probabilities: more than 5% indeterminate trajectories; increase t_max");

  for (EventStats* stats :
       {&report.sde, &report.ade, &report.sde_prime, &report.ade_prime, &report.ae, &report.sbe})
    finalize(*stats, n);
  return report;
}

}  // namespace entdyn
