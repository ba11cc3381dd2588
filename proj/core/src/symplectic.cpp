#include "gsteer/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "gsteer/error.hpp"

namespace gsteer {

Matrix symplectic_form(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Matrix omega = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; i += 2) {
    omega(i, i + 1) = 1.0;
    omega(i + 1, i) = -1.0;
  }
  return omega;
}

namespace {

// Omega * sigma without forming Omega: row 2i takes row 2i+1 of sigma,
// row 2i+1 takes minus row 2i.
Matrix omega_times(const Matrix& sigma) {
  Matrix out(sigma.rows(), sigma.cols());
  for (Eigen::Index i = 0; i < sigma.rows(); i += 2) {
    out.row(i) = sigma.row(i + 1);
    out.row(i + 1) = -sigma.row(i);
  }
  return out;
}

}  // namespace

std::vector<double> symplectic_eigenvalues(const Matrix& sigma, const Tolerances& tol) {
  const std::size_t n = mode_count(sigma);

  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("symplectic eigenvalues need a positive-definite matrix");
  }

  const Matrix os = omega_times(sigma);
  Eigen::VectorXcd eigenvalues;
  Eigen::EigenSolver<Matrix> solver(os, /*computeEigenvectors=*/false);
  if (solver.info() == Eigen::Success) {
    eigenvalues = solver.eigenvalues();
  } else {
    // Real QR can stall when several pairs coincide exactly (flat, pure
    // modes); the complex Schur iteration on i*Omega*sigma does not.
    const std::complex<double> i_unit(0.0, 1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> complex_solver(
        i_unit * os.cast<std::complex<double>>(), /*computeEigenvectors=*/false);
    if (complex_solver.info() != Eigen::Success) {
      throw NumericalDegeneracyError("eigenvalue iteration for i*Omega*sigma did not converge");
    }
    eigenvalues = -i_unit * complex_solver.eigenvalues();
  }

  // Eigenvalues of Omega*sigma are +/- i nu; those of i*Omega*sigma are -/+ nu,
  // so the real part here is the imaginary residue of i*Omega*sigma.
  std::vector<double> upper;
  std::vector<double> lower;
  upper.reserve(n);
  lower.reserve(n);
  for (const std::complex<double>& lambda : eigenvalues) {
    const double modulus = std::abs(lambda);
    if (std::abs(lambda.real()) > tol.pairing * std::max(1.0, modulus)) {
      throw NumericalDegeneracyError(fmt::format(
          "eigenvalue of i*Omega*sigma has imaginary residue {:.3g}", lambda.real()));
    }
    (lambda.imag() >= 0.0 ? upper : lower).push_back(modulus);
  }
  if (upper.size() != n || lower.size() != n) {
    throw NumericalDegeneracyError("eigenvalues of i*Omega*sigma do not form +/- pairs");
  }
  std::sort(upper.begin(), upper.end());
  std::sort(lower.begin(), lower.end());

  std::vector<double> nu(n);
  for (std::size_t i = 0; i < n; ++i) {
    nu[i] = 0.5 * (upper[i] + lower[i]);
    if (std::abs(upper[i] - lower[i]) > tol.pairing * std::max(1.0, nu[i])) {
      throw NumericalDegeneracyError(
          fmt::format("symplectic pair mismatch {:.3g} vs {:.3g}", upper[i], lower[i]));
    }
  }
  return nu;
}

}  // namespace gsteer
