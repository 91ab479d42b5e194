// sampling.hpp - random states under non-singular measures

#pragma once

#include <cstdint>

#include "entdyn/entanglement.hpp"
#include "entdyn/qmat.hpp"
#include "entdyn/rng.hpp"

namespace entdyn {

enum class MeasureKind { HilbertSchmidt, HaarPure, RankK };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::HilbertSchmidt;
  int k = 4;                 // rank for RankK, in {1, 2, 3, 4}
  std::uint64_t seed = 0;

  static MeasureSpec hilbert_schmidt(std::uint64_t seed = 0) {
    return {MeasureKind::HilbertSchmidt, 4, seed};
  }
  static MeasureSpec haar_pure(std::uint64_t seed = 0) {
    return {MeasureKind::HaarPure, 1, seed};
  }
  static MeasureSpec rank_k(int k, std::uint64_t seed = 0) {
    return {MeasureKind::RankK, k, seed};
  }
};

const char* measure_name(MeasureKind k);

// One draw from the measure:
//   HilbertSchmidt : G G^dag / tr(G G^dag), G a 4x4 matrix of standard
//                    complex Gaussians (full rank almost surely)
//   HaarPure       : normalized Gaussian 4-vector outer product
//   RankK          : 4xk Gaussian factor
DensityMatrix sample(const MeasureSpec& measure, RngStream& rng);

// Rejection-sample until the localization verdict matches the predicate
// (Boundary draws are rejected). Throws std::runtime_error after max_tries.
DensityMatrix sample_conditioned(const MeasureSpec& measure, Verdict predicate,
                                 RngStream& rng, int max_tries);

// Haar-distributed unitary (QR of a Ginibre matrix with phase fixing).
Mat haar_unitary(int dim, RngStream& rng);

}  // namespace entdyn
