// entanglement.hpp - determinant-based separability localizer and negativity

#pragma once

#include "entdyn/qmat.hpp"

namespace entdyn {

// Position of a state relative to the interior/boundary of the state set D
// and of the separable set S, read off the sign pattern of
// (d, dG) = (det rho, det of the partial transpose):
//   I   (+,+)  interior of D, interior of S
//   II  (+,0)  interior of D, on the separable boundary
//   III (+,-)  interior of D, entangled
//   IV  (0,+)  boundary of D, interior of S
//   V   (0,0)  boundary of D, on the separable boundary
//   VI  (0,-)  boundary of D, entangled
enum class Region { I, II, III, IV, V, VI };

enum class Verdict { Entangled, Separable, Boundary };

struct LocalizationReport {
  double d;      // det rho
  double d_pt;   // det of the partial transpose
  Region region;
  Verdict verdict;
};

const char* region_name(Region r);
const char* verdict_name(Verdict v);

// Real part of det(partial_transpose(rho)). The imaginary residue is
// asserted to be below 1e-12 * scale. Strictly negative iff rho is entangled.
double det_pt(const DensityMatrix& rho);

// Sign-pattern localization with |.| <= eps treated as zero.
// Throws if d < -eps (not a state).
LocalizationReport localize(const DensityMatrix& rho, double eps = kEps);

// Sum of |negative eigenvalues| of the partial transpose; zero exactly on
// separable two-qubit states, strictly positive on entangled ones.
double negativity(const DensityMatrix& rho);

}  // namespace entdyn
