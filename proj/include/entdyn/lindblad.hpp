// lindblad.hpp - generator construction and propagation for two-qubit
// open-system dynamics

#pragma once

#include <array>
#include <vector>

#include "entdyn/qmat.hpp"

namespace entdyn {

// One dissipation channel contributing
//   rate * (2 A rho A^dag - A^dag A rho - rho A^dag A)
// to the generator.
struct Channel {
  Mat jump;     // 4x4 operator A
  double rate;  // >= 0, units 1/time
};

enum class ScheduleKind { Constant, ExpDecay };

// Time profile multiplying the whole dissipator. ExpDecay scales it by
// exp(-kappa t); the Hamiltonian part is not rescaled.
struct CouplingSchedule {
  ScheduleKind kind = ScheduleKind::Constant;
  double kappa = 0.0;

  static CouplingSchedule constant() { return {ScheduleKind::Constant, 0.0}; }
  static CouplingSchedule exp_decay(double kappa);
};

struct GeneratorSpec {
  Mat hamiltonian = Mat::Zero(4, 4);  // Hermitian, hbar = 1
  std::vector<Channel> channels;
  CouplingSchedule schedule = CouplingSchedule::constant();

  bool has_hamiltonian() const { return max_abs(hamiltonian) > 0.0; }
};

// 16x16 matrix L with vec(generator[rho]) = L * vec(rho), vec column-stacked.
struct Superoperator {
  Mat mat;

  Mat apply(const Mat& rho) const;
};

Vec vec(const Mat& m);
Mat unvec(const Vec& v, int dim);

enum class Qubit { A, B };

// --------------------------------------------------------- channel builders

// Independent thermal reservoir on one qubit: decay jump |0><1| at
// gamma_down, excitation jump |1><0| at gamma_up (tensored with identity on
// the other qubit). Stationary one-qubit populations satisfy
// p1 * gamma_down = p0 * gamma_up; at gamma_up = 0 the qubit relaxes to |0>.
std::vector<Channel> dissipator_thermal_local(Qubit q, double gamma_down, double gamma_up);

// Phase reservoir on one qubit, generator gamma * (sz rho sz - rho). The
// stored channel rate is gamma/2 so the shared factor-2 channel form above
// reproduces exactly that normalization; a one-qubit coherence decays as
// exp(-2 gamma t).
std::vector<Channel> dissipator_phase_local(Qubit q, double gamma);

// Common reservoir coupling both qubits through J- = s-(A) + s-(B) at
// gamma_down and J+ = J-^dag at gamma_up. Rates are quoted in the
// matrix-element convention where, at gamma_up = 0, the doubly excited
// population decays as exp(-2 gamma_down t) and the symmetric one-excitation
// population obeys d/dt p = 2 gamma_down (p11 - p); the stored channel rates
// absorb the resulting factor of two. The singlet population is conserved at
// any temperature.
std::vector<Channel> dissipator_collective(double gamma_down, double gamma_up);

// Decay channels |i><j| (i < j) between the levels of an orthonormal basis,
// with per-pair rates in the upper triangle of `rates`.
std::vector<Channel> dissipator_eigenbasis(const std::array<Vec, 4>& eigvecs,
                                           const Eigen::Matrix4d& rates);

// Exchange-coupled pair, H = (omega/2)(sz_A + sz_B) + g (s+ s- + s- s+), in
// the convention where |00> is the low free state. Requires g > omega > 0 so
// the spectrum is (-g, -omega, omega, g) with eigenvectors
// (|Psi->, |00>, |11>, |Psi+>) and an entangled ground state.
Mat hamiltonian_exchange(double omega, double g);

// ------------------------------------------------------------- propagation

// Assemble the constant-coupling generator
//   -i[H, rho] + sum_j rate_j (2 A_j rho A_j^dag - A_j^dag A_j rho - rho A_j^dag A_j).
// The trace functional annihilates the image; checked at 1e-12 * ||L||.
Superoperator build_superoperator(const GeneratorSpec& spec);

// rho(t) = exp(L t) applied to vec(rho0) by scaling-and-squaring; the result
// is revalidated (clamp tolerance 1e-9) and trace drift must stay <= 1e-10.
DensityMatrix propagate(const DensityMatrix& rho0, const GeneratorSpec& spec, double t);
DensityMatrix propagate(const DensityMatrix& rho0, const Superoperator& op, double t);

// Integrates d/dt rho = -i[H, rho] + exp(-kappa t) D[rho] with an embedded
// Dormand-Prince 5(4) stepper at combined tolerance 1e-10. For a pure
// dissipator this matches the constant-coupling solution through the clock
// change g(t) = (1 - exp(-kappa t))/kappa.
DensityMatrix propagate_nonautonomous(const DensityMatrix& rho0, const GeneratorSpec& spec,
                                      double t);

// g(t) = (1 - exp(-kappa t))/kappa: integrated coupling, monotone, -> 1/kappa.
double reparam_g(double kappa, double t);

double max_channel_rate(const GeneratorSpec& spec);
double min_positive_channel_rate(const GeneratorSpec& spec);

}  // namespace entdyn
