#include "circle_colim/su_n.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "circle_colim/errors.hpp"

namespace circle_colim {

GroupDescriptor parse_group(const std::string& text) {
  std::string digits;
  std::string letters;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      digits += c;
    else if (std::isalpha(static_cast<unsigned char>(c)))
      letters += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (letters != "su" || digits.empty()) throw PreconditionError("unsupported group descriptor '" + text + "'");
  const int n = std::stoi(digits);
  if (n < 2 || n > 16) throw PreconditionError("unsupported group descriptor '" + text + "'");
  return GroupDescriptor{n};
}

double unitarity_defect(const Matrix& u) {
  const Matrix e = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return e.cwiseAbs().maxCoeff();
}

bool is_special_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return unitarity_defect(u) < tol && std::abs(u.determinant() - Complex(1.0, 0.0)) < tol;
}

Matrix project_to_group(const Matrix& u) {
  Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix q = svd.matrixU() * svd.matrixV().adjoint();
  const Complex det = q.determinant();
  const double n = static_cast<double>(u.rows());
  q *= std::polar(1.0, -std::arg(det) / n);
  return q;
}

Matrix project_to_algebra(const Matrix& x) {
  Matrix a = 0.5 * (x - x.adjoint());
  const Complex tr = a.trace() / static_cast<double>(a.rows());
  a.diagonal().array() -= tr;
  return a;
}

AlgebraSpectrum algebra_spectrum(const Matrix& x) {
  // X = iH with H Hermitian.
  const Matrix h = Complex(0.0, -1.0) * x;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  return {es.eigenvectors(), es.eigenvalues()};
}

Matrix AlgebraSpectrum::exp_scaled(double s) const {
  Eigen::VectorXcd d(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) d(i) = std::polar(1.0, s * theta(i));
  return vectors * d.asDiagonal() * vectors.adjoint();
}

Matrix exp_algebra(const Matrix& x) { return algebra_spectrum(x).exp_scaled(1.0); }

Matrix log_group(const Matrix& u, double margin) {
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();
  const Eigen::Index n = u.rows();
  Eigen::VectorXcd logs(n);
  double angle_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lambda = t(i, i);
    if (std::abs(lambda + 1.0) < margin) throw PreconditionError("eigenvalue within chart margin of -1");
    const double a = std::arg(lambda);
    angle_sum += a;
    logs(i) = Complex(0.0, a);
  }
  if (std::abs(angle_sum) > 1e-6)
    throw PreconditionError("principal logarithm is not traceless (element outside the chart)");
  return project_to_algebra(q * logs.asDiagonal() * q.adjoint());
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

Complex basic_inner_product(const Matrix& x, const Matrix& y) { return -(x * y).trace(); }

}  // namespace circle_colim
