#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>

namespace gsteer::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Eigen::MatrixXd random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
  }
  return m;
}

/// Real orthogonal matrix from QR of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(std::size_t n, Rng& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_gaussian_matrix(n, n, rng));
  return qr.householderQ();
}

/// Haar unitary via QR of a complex Ginibre matrix with the phase fix.
inline Eigen::MatrixXcd random_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Passive (orthogonal symplectic) transformation in xpxp order.
inline Eigen::MatrixXd random_passive(std::size_t n, Rng& rng) {
  const Eigen::MatrixXcd u = random_unitary(n, rng);
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd o(2 * dim, 2 * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double re = u(i, j).real();
      const double im = u(i, j).imag();
      o(2 * i, 2 * j) = re;
      o(2 * i, 2 * j + 1) = -im;
      o(2 * i + 1, 2 * j) = im;
      o(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return o;
}

/// O1 * squeezers * O2 with squeezing parameters in [-max_r, max_r].
inline Eigen::MatrixXd random_symplectic(std::size_t n, Rng& rng, double max_r = 1.0) {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::VectorXd d(2 * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double r = uniform(rng, -max_r, max_r);
    d(2 * i) = std::exp(-r);
    d(2 * i + 1) = std::exp(r);
  }
  return random_passive(n, rng) * d.asDiagonal() * random_passive(n, rng);
}

/// S diag(nu_i, nu_i) S^T with nu_i in [1, max_nu].
inline Eigen::MatrixXd random_physical_cm(std::size_t n, Rng& rng, double max_nu = 3.0,
                                          double max_r = 1.0) {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::VectorXd d(2 * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double nu = uniform(rng, 1.0, max_nu);
    d(2 * i) = nu;
    d(2 * i + 1) = nu;
  }
  const Eigen::MatrixXd s = random_symplectic(n, rng, max_r);
  Eigen::MatrixXd sigma = s * d.asDiagonal() * s.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

inline Eigen::MatrixXd random_pure_cm(std::size_t n, Rng& rng, double max_r = 1.0) {
  const Eigen::MatrixXd s = random_symplectic(n, rng, max_r);
  Eigen::MatrixXd sigma = s * s.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

}  // namespace gsteer::testing
