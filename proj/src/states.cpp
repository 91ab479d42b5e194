#include "entdyn/states.hpp"

#include <cmath>

namespace entdyn::states {

Vec bell_psi_plus() {
  Vec v = Vec::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return v;
}

Vec bell_psi_minus() {
  Vec v = Vec::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

DensityMatrix mix() { return validate_density(0.25 * eye(4)); }

DensityMatrix singlet() {
  Mat m = Mat::Zero(4, 4);
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = -0.5;
  return validate_density(m);
}

DensityMatrix psi_plus() {
  Mat m = Mat::Zero(4, 4);
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = 0.5;
  return validate_density(m);
}

DensityMatrix werner(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner: p must lie in [0, 1]");
  return validate_density(p * 0.25 * eye(4) + (1.0 - p) * singlet().mat());
}

DensityMatrix boundary_mix() { return werner(2.0 / 3.0); }

DensityMatrix separable_pure() { return validate_density(projector(ket2(0, 0))); }

DensityMatrix mix_triplet() {
  Mat m = projector(ket2(1, 1)) + projector(bell_psi_plus()) + projector(ket2(0, 0));
  return validate_density(m / 3.0);
}

DensityMatrix x_state(double a, double b, double c) {
  if (a < 0.0 || b < 0.0) throw std::invalid_argument("x_state: populations must be nonnegative");
  if (std::abs(2.0 * a + 2.0 * b - 1.0) > 1e-12)
    throw std::invalid_argument("x_state: trace constraint 2a + 2b = 1 violated");
  if (std::abs(c) > b + 1e-12)
    throw std::invalid_argument("x_state: |c| <= b required for positivity");
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = b;
  m(3, 3) = a;
  m(1, 2) = c;
  m(2, 1) = c;
  return validate_density(m);
}

}  // namespace entdyn::states
