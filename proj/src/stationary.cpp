#include "entdyn/stationary.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "entdyn/sampling.hpp"
#include "entdyn/states.hpp"

namespace entdyn {

const char* class_label_name(ClassLabel label) {
  switch (label) {
    case ClassLabel::C1a: return "1a";
    case ClassLabel::C1b: return "1b";
    case ClassLabel::C2a: return "2a";
    case ClassLabel::C2b: return "2b";
    case ClassLabel::C3a: return "3a";
    case ClassLabel::C3b: return "3b";
  }
  return "?";
}

ClassLabel class_label_from(Cardinality card, Geometry geom) {
  bool single = card == Cardinality::Singleton;
  switch (geom) {
    case Geometry::AllIntS: return single ? ClassLabel::C1a : ClassLabel::C1b;
    case Geometry::TouchesBoundary: return single ? ClassLabel::C2a : ClassLabel::C2b;
    case Geometry::AllE: return single ? ClassLabel::C3a : ClassLabel::C3b;
  }
  throw std::logic_error("class_label_from: bad geometry");
}

StationarySet kernel(const Superoperator& op, double tol) {
  Eigen::JacobiSVD<Mat> svd(op.mat, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();  // descending
  const double threshold = tol * sigma(0);

  std::vector<Vec> null_vectors;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) <= threshold) null_vectors.push_back(svd.matrixV().col(i));
  if (null_vectors.empty())
    throw std::runtime_error("kernel: no null space found (generator not trace-preserving?)");

  // The kernel is closed under conjugate transpose, so its Hermitian slice
  // has the same real dimension; Gram-Schmidt over the Hermitian candidates
  // recovers it.
  std::vector<Mat> basis;
  auto hs_inner = [](const Mat& a, const Mat& b) { return (a.adjoint() * b).trace().real(); };
  for (const Vec& v : null_vectors) {
    Mat m = unvec(v, 4);
    for (Mat cand : {Mat(0.5 * (m + m.adjoint())), Mat(cd(0, 0.5) * (m - m.adjoint()))}) {
      for (const Mat& b : basis) cand -= hs_inner(b, cand) * b;
      double norm = std::sqrt(hs_inner(cand, cand));
      if (norm > 1e-8) basis.push_back(cand / norm);
    }
  }
  if (static_cast<int>(basis.size()) != static_cast<int>(null_vectors.size()))
    throw std::runtime_error("kernel: Hermitian basis extraction mismatch");

  StationarySet set;
  set.kernel_basis = std::move(basis);
  set.dimension = static_cast<int>(null_vectors.size());
  return set;
}

DensityMatrix asymptotic_state(const DensityMatrix& rho0, const GeneratorSpec& spec) {
  if (spec.schedule.kind == ScheduleKind::ExpDecay) {
    if (spec.has_hamiltonian())
      throw std::invalid_argument(
          "asymptotic_state: decaying coupling requires a pure dissipator");
    GeneratorSpec constant = spec;
    constant.schedule = CouplingSchedule::constant();
    return propagate(rho0, constant, 1.0 / spec.schedule.kappa);
  }

  Superoperator op = build_superoperator(spec);
  double rate = max_channel_rate(spec);
  double t0 = rate > 0.0 ? 10.0 / rate : 10.0;
  Mat p = (op.mat * t0).exp();
  Vec x = p * vec(rho0.mat());
  for (int k = 0; k < 15; ++k) {
    p = p * p;
    Vec x2 = p * vec(rho0.mat());
    if (max_abs(unvec(x2 - x, 4)) <= 1e-10) return validate_density(unvec(x2, 4));
    x = std::move(x2);
  }
  throw std::runtime_error("asymptotic_state: no convergence within the doubling horizon");
}

namespace {

std::vector<DensityMatrix> extreme_seeds() {
  std::vector<DensityMatrix> seeds;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) seeds.push_back(validate_density(projector(ket2(a, b))));
  seeds.push_back(states::singlet());
  seeds.push_back(states::psi_plus());
  Vec phi_plus = (ket2(0, 0) + ket2(1, 1)) / std::sqrt(2.0);
  Vec phi_minus = (ket2(0, 0) - ket2(1, 1)) / std::sqrt(2.0);
  seeds.push_back(validate_density(projector(phi_plus)));
  seeds.push_back(validate_density(projector(phi_minus)));
  seeds.push_back(states::mix());
  seeds.push_back(states::mix_triplet());
  return seeds;
}

}  // namespace

DynamicsClass classify_dynamics(const GeneratorSpec& spec, int probes, RngStream& rng) {
  if (probes < 64) throw std::invalid_argument("classify_dynamics: probes >= 64 required");

  Cardinality card;
  if (spec.schedule.kind == ScheduleKind::Constant) {
    card = kernel(build_superoperator(spec)).dimension == 1 ? Cardinality::Singleton
                                                            : Cardinality::Family;
  } else {
    // exp(L/kappa) is invertible, so distinct initial states keep distinct
    // asymptotes: the asymptotic set is a deformed copy of the state set.
    card = Cardinality::Family;
  }

  std::vector<DensityMatrix> inputs = extreme_seeds();
  MeasureSpec hs = MeasureSpec::hilbert_schmidt();
  for (int i = 0; i < probes; ++i) inputs.push_back(sample(hs, rng));

  DynamicsClass result{ClassLabel::C1a, card, Geometry::TouchesBoundary, {}, {}};
  bool all_interior = true;
  bool all_entangled = true;
  for (const DensityMatrix& rho0 : inputs) {
    DensityMatrix limit = asymptotic_state(rho0, spec);
    LocalizationReport report = localize(limit);
    all_interior = all_interior && report.region == Region::I;
    all_entangled = all_entangled && report.verdict == Verdict::Entangled;
    result.evidence.push_back(report);
    result.representatives.push_back(std::move(limit));
  }

  result.geometry = all_interior ? Geometry::AllIntS
                                 : (all_entangled ? Geometry::AllE : Geometry::TouchesBoundary);
  result.label = class_label_from(card, result.geometry);
  return result;
}

}  // namespace entdyn
