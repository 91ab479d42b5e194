#include "entdyn/qmat.hpp"

#include <cmath>
#include <sstream>

namespace entdyn {

Mat eye(int n) { return Mat::Identity(n, n); }

Mat sigma_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat sigma_y() {
  Mat m(2, 2);
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}

Mat sigma_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat sigma_plus() {
  Mat m = Mat::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

Mat sigma_minus() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

Vec qubit_ket(int b) {
  if (b != 0 && b != 1) throw std::invalid_argument("qubit_ket: label must be 0 or 1");
  Vec v = Vec::Zero(2);
  v(b) = 1;
  return v;
}

Vec ket2(int a, int b) {
  if ((a != 0 && a != 1) || (b != 0 && b != 1))
    throw std::invalid_argument("ket2: labels must be 0 or 1");
  Vec v = Vec::Zero(4);
  v(2 * a + b) = 1;
  return v;
}

Mat projector(const Vec& v) { return v * v.adjoint(); }

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

double fro_norm(const Mat& m) { return m.norm(); }

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

Mat kron(const Mat& a, const Mat& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
    throw std::invalid_argument("kron: expects two 2x2 factors");
  Mat out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return out;
}

Mat partial_transpose(const Mat& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw std::invalid_argument("partial_transpose: expects a 4x4 matrix");
  Mat out(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          out(2 * a + d, 2 * c + b) = m(2 * a + b, 2 * c + d);
  return out;
}

cd determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square input required");
  return Eigen::PartialPivLU<Mat>(m).determinant();
}

std::vector<double> eig_hermitian(const Mat& m) {
  HermitianEigen e = eig_hermitian_full(m);
  return {e.values.data(), e.values.data() + e.values.size()};
}

HermitianEigen eig_hermitian_full(const Mat& m) {
  double scale = std::max(max_abs(m), 1.0);
  if (!is_hermitian(m, 1e-10 * scale))
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ValidationError::ValidationError(std::string what, std::vector<ValidationIssue> issues)
    : std::runtime_error(std::move(what)), issues_(std::move(issues)) {}

ValidationOutcome try_validate_density(const Mat& m, double tol) {
  std::vector<ValidationIssue> issues;
  const int n = static_cast<int>(m.rows());

  if (m.rows() != m.cols() || (n != 2 && n != 4)) {
    issues.push_back({"dimension", static_cast<double>(n)});
    return ValidationOutcome::rejected(issues);
  }
  if (!m.allFinite()) {
    issues.push_back({"finite", std::numeric_limits<double>::quiet_NaN()});
    return ValidationOutcome::rejected(issues);
  }

  double herm_err = max_abs(m - m.adjoint());
  if (herm_err > tol) issues.push_back({"hermitian", herm_err});

  double trace_err = std::abs(m.trace() - cd(1.0));
  if (trace_err > tol) issues.push_back({"trace", trace_err});

  Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol) issues.push_back({"positivity", -min_eig});

  if (!issues.empty()) return ValidationOutcome::rejected(issues);

  if (min_eig < 0.0 || trace_err > 0.0 || herm_err > 0.0) {
    Eigen::VectorXd clamped = solver.eigenvalues().cwiseMax(0.0);
    Mat cleaned = solver.eigenvectors() * clamped.asDiagonal() *
                  solver.eigenvectors().adjoint();
    cleaned /= cleaned.trace().real();
    cleaned = 0.5 * (cleaned + cleaned.adjoint());
    return ValidationOutcome::accepted(std::move(cleaned));
  }
  return ValidationOutcome::accepted(h);
}

DensityMatrix validate_density(const Mat& m, double tol) {
  ValidationOutcome out = try_validate_density(m, tol);
  if (!out.ok()) {
    std::ostringstream msg;
    msg << "density validation failed:";
    for (const auto& issue : out.issues)
      msg << " " << issue.invariant << " (" << issue.magnitude << ")";
    throw ValidationError(msg.str(), out.issues);
  }
  return *out.state;
}

}  // namespace entdyn
