// qmat.hpp - dense complex matrix core for two-qubit operators

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entdyn {

using cd  = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Shared sign/zero threshold for entanglement and localization verdicts.
inline constexpr double kEps = 1e-9;

// Default tolerance for density-matrix validation (an order above the
// integrator tolerance).
inline constexpr double kDensityTol = 1e-9;

// ------------------------------------------------------------ elementary ops

Mat eye(int n);
Mat sigma_x();
Mat sigma_y();
Mat sigma_z();
Mat sigma_plus();   // |1><0|, raises the qubit
Mat sigma_minus();  // |0><1|, lowers the qubit

// Single-qubit ket |b>, b in {0,1}; |0> is the low (decay target) state.
Vec qubit_ket(int b);

// Two-qubit ket |ab>; basis order |00>,|01>,|10>,|11>, first label = qubit A.
Vec ket2(int a, int b);

Mat projector(const Vec& v);  // |v><v|

double max_abs(const Mat& m);
double fro_norm(const Mat& m);
bool is_hermitian(const Mat& m, double tol);

// Kronecker product of two one-qubit operators, qubit-A factor leftmost:
// (i,j) x (k,l) -> (2i+k, 2j+l). Throws if either input is not 2x2.
Mat kron(const Mat& a, const Mat& b);

// Transpose on qubit B: entry (2a+b, 2c+d) -> (2a+d, 2c+b). 4x4 only.
// An involution; preserves trace and Hermiticity.
Mat partial_transpose(const Mat& m);

// Determinant via LU with partial pivoting. For Hermitian input the
// imaginary part is numerical residue and is discarded by callers.
cd determinant(const Mat& m);

// Eigenvalues of a Hermitian matrix, ascending. Throws std::invalid_argument
// if the input fails the Hermiticity check at 1e-10 * max|entry|.
std::vector<double> eig_hermitian(const Mat& m);

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  Mat vectors;             // columns, satisfy ||m - V diag V^dag|| <= 1e-10 ||m||
};
HermitianEigen eig_hermitian_full(const Mat& m);

// ------------------------------------------------------------- density type

struct ValidationIssue {
  std::string invariant;  // "hermitian", "trace", "positivity", "dimension", "finite"
  double magnitude;       // size of the violation
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string what, std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// A 4x4 (or 2x2) state: Hermitian, unit trace, positive semidefinite within
// the validation tolerance. Immutable after construction; eigenvalues in
// [-tol, 0) are clamped to zero and the matrix renormalized on admission.
class DensityMatrix {
 public:
  const Mat& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  cd operator()(int i, int j) const { return m_(i, j); }

  friend DensityMatrix validate_density(const Mat& m, double tol);
  friend struct ValidationOutcome;

 private:
  explicit DensityMatrix(Mat m) : m_(std::move(m)) {}
  Mat m_;
};

struct ValidationOutcome {
  std::optional<DensityMatrix> state;
  std::vector<ValidationIssue> issues;
  bool ok() const { return state.has_value(); }

  static ValidationOutcome accepted(Mat m) { return {DensityMatrix(std::move(m)), {}}; }
  static ValidationOutcome rejected(std::vector<ValidationIssue> issues) {
    return {std::nullopt, std::move(issues)};
  }
};

// Non-throwing validation; lists every violated invariant with its magnitude.
ValidationOutcome try_validate_density(const Mat& m, double tol = kDensityTol);

// Throwing form of the above.
DensityMatrix validate_density(const Mat& m, double tol = kDensityTol);

}  // namespace entdyn
