#include "entdyn/lindblad.hpp"

#include <array>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace entdyn {

CouplingSchedule CouplingSchedule::exp_decay(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("exp_decay: kappa must be positive");
  return {ScheduleKind::ExpDecay, kappa};
}

Vec vec(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvec(const Vec& v, int dim) {
  if (v.size() != dim * dim) throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Mat>(v.data(), dim, dim);
}

Mat Superoperator::apply(const Mat& rho) const {
  return unvec(mat * vec(rho), static_cast<int>(rho.rows()));
}

namespace {

void require_rate(double rate, const char* who) {
  if (rate < 0.0 || !std::isfinite(rate))
    throw std::invalid_argument(std::string(who) + ": rates must be finite and >= 0");
}

Mat on_qubit(Qubit q, const Mat& op) {
  return q == Qubit::A ? kron(op, eye(2)) : kron(eye(2), op);
}

}  // namespace

std::vector<Channel> dissipator_thermal_local(Qubit q, double gamma_down, double gamma_up) {
  require_rate(gamma_down, "dissipator_thermal_local");
  require_rate(gamma_up, "dissipator_thermal_local");
  return {{on_qubit(q, sigma_minus()), gamma_down},
          {on_qubit(q, sigma_plus()), gamma_up}};
}

std::vector<Channel> dissipator_phase_local(Qubit q, double gamma) {
  require_rate(gamma, "dissipator_phase_local");
  return {{on_qubit(q, sigma_z()), 0.5 * gamma}};
}

std::vector<Channel> dissipator_collective(double gamma_down, double gamma_up) {
  require_rate(gamma_down, "dissipator_collective");
  require_rate(gamma_up, "dissipator_collective");
  Mat j_minus = kron(sigma_minus(), eye(2)) + kron(eye(2), sigma_minus());
  Mat j_plus = j_minus.adjoint();
  return {{j_minus, 0.5 * gamma_down}, {j_plus, 0.5 * gamma_up}};
}

std::vector<Channel> dissipator_eigenbasis(const std::array<Vec, 4>& eigvecs,
                                           const Eigen::Matrix4d& rates) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cd overlap = eigvecs[i].adjoint() * eigvecs[j];
      double expected = i == j ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > 1e-10)
        throw std::invalid_argument("dissipator_eigenbasis: basis is not orthonormal");
    }
  std::vector<Channel> channels;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      require_rate(rates(i, j), "dissipator_eigenbasis");
      channels.push_back({eigvecs[i] * eigvecs[j].adjoint(), rates(i, j)});
    }
  return channels;
}

Mat hamiltonian_exchange(double omega, double g) {
  if (!(omega > 0.0) || !(g > 0.0))
    throw std::invalid_argument("hamiltonian_exchange: omega and g must be positive");
  if (g <= omega)
    throw std::invalid_argument(
        "hamiltonian_exchange: g > omega required for an entangled ground state");
  Mat h = Mat::Zero(4, 4);
  h(0, 0) = -omega;
  h(3, 3) = omega;
  h(1, 2) = g;
  h(2, 1) = g;
  return h;
}

Superoperator build_superoperator(const GeneratorSpec& spec) {
  const Mat& h = spec.hamiltonian;
  if (h.rows() != 4 || h.cols() != 4 || !is_hermitian(h, 1e-10 * std::max(1.0, max_abs(h))))
    throw std::invalid_argument("build_superoperator: Hamiltonian must be 4x4 Hermitian");

  Mat id = eye(4);
  Mat ham_part = Eigen::kroneckerProduct(id, h) - Eigen::kroneckerProduct(h.transpose(), id);
  Mat l = cd(0, -1) * ham_part;
  for (const Channel& ch : spec.channels) {
    require_rate(ch.rate, "build_superoperator");
    if (ch.jump.rows() != 4 || ch.jump.cols() != 4 || !ch.jump.allFinite())
      throw std::invalid_argument("build_superoperator: jump operators must be finite 4x4");
    Mat ada = ch.jump.adjoint() * ch.jump;
    Mat gain = Eigen::kroneckerProduct(ch.jump.conjugate(), ch.jump);
    Mat loss = Eigen::kroneckerProduct(id, ada) + Eigen::kroneckerProduct(ada.transpose(), id);
    l += ch.rate * (2.0 * gain - loss);
  }

  // tr(L[rho]) = 0 for all rho <=> vec(I)^dag L = 0.
  double scale = std::max(1.0, max_abs(l));
  double trace_residual = (vec(id).adjoint() * l).cwiseAbs().maxCoeff();
  if (trace_residual > 1e-12 * scale)
    throw std::runtime_error("build_superoperator: trace functional does not vanish on image");
  return {l};
}

namespace {

DensityMatrix revalidate(const Mat& rho, const Mat& reference, const char* who) {
  double trace_drift = std::abs(rho.trace() - reference.trace());
  if (trace_drift > 1e-10)
    throw std::runtime_error(std::string(who) + ": trace drift above 1e-10");
  ValidationOutcome out = try_validate_density(rho, kDensityTol);
  if (!out.ok())
    throw std::runtime_error(std::string(who) + ": propagated state failed validation");
  return *out.state;
}

}  // namespace

DensityMatrix propagate(const DensityMatrix& rho0, const Superoperator& op, double t) {
  if (t < 0.0) throw std::invalid_argument("propagate: t >= 0 required");
  Mat p = (op.mat * t).exp();
  Mat rho = unvec(p * vec(rho0.mat()), rho0.dim());
  return revalidate(rho, rho0.mat(), "propagate");
}

DensityMatrix propagate(const DensityMatrix& rho0, const GeneratorSpec& spec, double t) {
  if (spec.schedule.kind != ScheduleKind::Constant)
    throw std::invalid_argument("propagate: constant-coupling schedule required");
  return propagate(rho0, build_superoperator(spec), t);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

}  // namespace

DensityMatrix propagate_nonautonomous(const DensityMatrix& rho0, const GeneratorSpec& spec,
                                      double t_end) {
  if (spec.schedule.kind != ScheduleKind::ExpDecay)
    throw std::invalid_argument("propagate_nonautonomous: ExpDecay schedule required");
  if (t_end < 0.0) throw std::invalid_argument("propagate_nonautonomous: t >= 0 required");
  const double kappa = spec.schedule.kappa;

  GeneratorSpec dissipator_only = spec;
  dissipator_only.hamiltonian = Mat::Zero(4, 4);
  dissipator_only.schedule = CouplingSchedule::constant();
  Mat l_diss = build_superoperator(dissipator_only).mat;

  GeneratorSpec hamiltonian_only;
  hamiltonian_only.hamiltonian = spec.hamiltonian;
  Mat l_ham = build_superoperator(hamiltonian_only).mat;

  auto rhs = [&](double t, const Vec& y) -> Vec {
    return l_ham * y + std::exp(-kappa * t) * (l_diss * y);
  };

  const double tol = 1e-10;
  Vec y = vec(rho0.mat());
  if (t_end == 0.0) return revalidate(unvec(y, 4), rho0.mat(), "propagate_nonautonomous");

  double t = 0.0;
  double h = std::min(t_end, 1.0 / (10.0 * kappa + 10.0 * std::max(max_channel_rate(spec), 1e-3)));
  Vec k1 = rhs(t, y);
  const double h_floor = 1e-14 * std::max(1.0, t_end);
  long steps = 0;

  while (t < t_end) {
    if (h < h_floor)
      throw std::runtime_error("propagate_nonautonomous: step size underflow");
    if (++steps > 5'000'000)
      throw std::runtime_error("propagate_nonautonomous: step budget exhausted");
    h = std::min(h, t_end - t);

    Vec k2 = rhs(t + kC2 * h, y + h * (kA21 * k1));
    Vec k3 = rhs(t + kC3 * h, y + h * (kA31 * k1 + kA32 * k2));
    Vec k4 = rhs(t + kC4 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    Vec k5 = rhs(t + kC5 * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    Vec k6 = rhs(t + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
    Vec y5 = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    Vec k7 = rhs(t + h, y5);

    Vec err = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
    double norm = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
      double scale = tol + tol * std::max(std::abs(y(i)), std::abs(y5(i)));
      norm = std::max(norm, std::abs(err(i)) / scale);
    }

    if (norm <= 1.0) {
      t += h;
      y = std::move(y5);
      k1 = std::move(k7);  // first-same-as-last
    }
    double factor = norm > 0.0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, factor));
  }

  return revalidate(unvec(y, 4), rho0.mat(), "propagate_nonautonomous");
}

double reparam_g(double kappa, double t) {
  if (!(kappa > 0.0)) throw std::invalid_argument("reparam_g: kappa must be positive");
  if (t < 0.0) throw std::invalid_argument("reparam_g: t >= 0 required");
  return -std::expm1(-kappa * t) / kappa;
}

double max_channel_rate(const GeneratorSpec& spec) {
  double rate = 0.0;
  for (const Channel& ch : spec.channels) rate = std::max(rate, ch.rate);
  return rate;
}

double min_positive_channel_rate(const GeneratorSpec& spec) {
  double rate = 0.0;
  for (const Channel& ch : spec.channels)
    if (ch.rate > 0.0) rate = rate == 0.0 ? ch.rate : std::min(rate, ch.rate);
  return rate;
}

}  // namespace entdyn
