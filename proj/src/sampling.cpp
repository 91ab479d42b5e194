#include "entdyn/sampling.hpp"

#include <cmath>

namespace entdyn {

namespace {

Mat ginibre(int rows, int cols, RngStream& rng) {
  Mat g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      g(i, j) = cd(rng.normal(), rng.normal());
  return g;
}

}  // namespace

const char* measure_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::HilbertSchmidt: return "hilbert_schmidt";
    case MeasureKind::HaarPure: return "haar_pure";
    case MeasureKind::RankK: return "rank_k";
  }
  return "?";
}

DensityMatrix sample(const MeasureSpec& measure, RngStream& rng) {
  switch (measure.kind) {
    case MeasureKind::HilbertSchmidt: {
      Mat g = ginibre(4, 4, rng);
      Mat rho = g * g.adjoint();
      rho /= rho.trace().real();
      return validate_density(rho, 1e-12);
    }
    case MeasureKind::HaarPure: {
      Vec v = ginibre(4, 1, rng).col(0);
      v.normalize();
      return validate_density(projector(v), 1e-12);
    }
    case MeasureKind::RankK: {
      if (measure.k < 1 || measure.k > 4)
        throw std::invalid_argument("sample: RankK needs k in {1,..,4}");
      Mat g = ginibre(4, measure.k, rng);
      Mat rho = g * g.adjoint();
      rho /= rho.trace().real();
      return validate_density(rho, 1e-12);
    }
  }
  throw std::logic_error("sample: unknown measure");
}

DensityMatrix sample_conditioned(const MeasureSpec& measure, Verdict predicate,
                                 RngStream& rng, int max_tries) {
  if (predicate == Verdict::Boundary)
    throw std::invalid_argument("sample_conditioned: predicate must be Entangled or Separable");
  if (max_tries < 1) throw std::invalid_argument("sample_conditioned: max_tries >= 1 required");
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    DensityMatrix rho = sample(measure, rng);
    if (localize(rho).verdict == predicate) return rho;
  }
  throw std::runtime_error("sample_conditioned: no matching draw within max_tries");
}

Mat haar_unitary(int dim, RngStream& rng) {
  Mat g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    cd rjj = r(j, j);
    cd phase = rjj == cd(0.0) ? cd(1.0) : rjj / std::abs(rjj);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace entdyn
