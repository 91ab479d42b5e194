// states.hpp - named two-qubit state fixtures

#pragma once

#include "entdyn/qmat.hpp"

namespace entdyn::states {

Vec bell_psi_plus();   // (|01> + |10>)/sqrt(2)
Vec bell_psi_minus();  // (|01> - |10>)/sqrt(2), the singlet

DensityMatrix mix();       // I/4
DensityMatrix singlet();   // |Psi-><Psi-|
DensityMatrix psi_plus();  // |Psi+><Psi+|

// p * I/4 + (1-p) * singlet; entangled iff p < 2/3.
DensityMatrix werner(double p);

// (2/3) mix + (1/3) singlet; sits exactly on the separable boundary.
DensityMatrix boundary_mix();

DensityMatrix separable_pure();  // |00><00|

// (|11><11| + |Psi+><Psi+| + |00><00|) / 3
DensityMatrix mix_triplet();

// X-state with populations (a, b, b, a) and one-excitation coherence c:
//   [ a  .  .  . ]
//   [ .  b  c  . ]
//   [ .  c  b  . ]
//   [ .  .  .  a ]
// Requires a, b >= 0, 2a + 2b = 1 and |c| <= b; rank-deficient when |c| = b.
DensityMatrix x_state(double a, double b, double c);

}  // namespace entdyn::states
