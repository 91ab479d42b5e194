#include "entdyn/entanglement.hpp"

#include <cmath>

namespace entdyn {

const char* region_name(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::VI: return "VI";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Entangled: return "entangled";
    case Verdict::Separable: return "separable";
    case Verdict::Boundary: return "boundary";
  }
  return "?";
}

double det_pt(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("det_pt: expects a two-qubit state");
  cd det = determinant(partial_transpose(rho.mat()));
  double scale = std::max(1.0, std::abs(det));
  if (std::abs(det.imag()) > 1e-12 * scale)
    throw std::runtime_error("det_pt: imaginary residue above tolerance");
  return det.real();
}

LocalizationReport localize(const DensityMatrix& rho, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("localize: eps must be positive");
  double d = determinant(rho.mat()).real();
  double dg = det_pt(rho);
  if (d < -eps) throw std::invalid_argument("localize: det rho < -eps, not a state");

  const int sd = d > eps ? 1 : 0;               // d >= -eps enforced above
  const int sg = dg > eps ? 1 : (dg < -eps ? -1 : 0);

  Region region;
  if (sd == 1)
    region = sg == 1 ? Region::I : (sg == 0 ? Region::II : Region::III);
  else
    region = sg == 1 ? Region::IV : (sg == 0 ? Region::V : Region::VI);

  Verdict verdict = sg == -1 ? Verdict::Entangled
                             : (sg == 0 ? Verdict::Boundary : Verdict::Separable);
  return {d, dg, region, verdict};
}

double negativity(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("negativity: expects a two-qubit state");
  std::vector<double> eigs = eig_hermitian(partial_transpose(rho.mat()));
  double total = 0.0;
  for (double v : eigs)
    if (v < 0.0) total -= v;
  return total;
}

}  // namespace entdyn
