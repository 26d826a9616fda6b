#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace circle_colim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// SU(n), n >= 2.
struct GroupDescriptor {
  int n = 2;

  std::string name() const { return "SU(" + std::to_string(n) + ")"; }
  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// Parses "SU(3)", "su3", "su(3)" and the like.
GroupDescriptor parse_group(const std::string& text);

/// Largest spectral radius of a chart-domain Lie algebra element.
inline constexpr double kChartRadius = 3.141592653589793 - 0.1;

/// ‖U*U - 1‖ and |det U - 1| both below tol.
bool is_special_unitary(const Matrix& u, double tol = 1e-10);
double unitarity_defect(const Matrix& u);

/// Nearest unitary matrix (polar factor), rephased to determinant 1.
Matrix project_to_group(const Matrix& u);

/// (X - X*)/2 with the trace removed.
Matrix project_to_algebra(const Matrix& x);

/// Eigendecomposition X = V·diag(iθ)·V* of an anti-Hermitian matrix.
struct AlgebraSpectrum {
  Matrix vectors;
  Eigen::VectorXd theta;

  /// V·diag(exp(i s θ))·V*.
  Matrix exp_scaled(double s) const;
  double radius() const { return theta.cwiseAbs().maxCoeff(); }
};

AlgebraSpectrum algebra_spectrum(const Matrix& x);

/// exp of an anti-Hermitian matrix.
Matrix exp_algebra(const Matrix& x);

/// Principal logarithm of a special unitary matrix as a traceless
/// anti-Hermitian matrix. Throws PreconditionError if an eigenvalue is within
/// `margin` of -1 or the principal logarithm is not traceless.
Matrix log_group(const Matrix& u, double margin = 1e-6);

/// Largest |entry| of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// ⟨X, Y⟩ = -tr(XY), extended complex-bilinearly.
Complex basic_inner_product(const Matrix& x, const Matrix& y);

/// Haar-random element of SU(n) from a QR factorization of a complex
/// Gaussian matrix; `gauss` returns standard normal draws.
template <class Gauss>
Matrix random_special_unitary(int n, Gauss&& gauss) {
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Complex(gauss(), gauss());
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return project_to_group(q);
}

/// Random traceless anti-Hermitian matrix with Gaussian entries.
template <class Gauss>
Matrix random_algebra(int n, Gauss&& gauss) {
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Complex(gauss(), gauss());
  return project_to_algebra(z);
}

}  // namespace circle_colim
