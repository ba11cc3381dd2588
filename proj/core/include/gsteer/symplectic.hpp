#pragma once

#include <cstddef>
#include <vector>

#include "gsteer/covariance.hpp"

namespace gsteer {

/// Block-diagonal Omega with N blocks [[0, 1], [-1, 0]].
Matrix symplectic_form(std::size_t n_modes);

/// Symplectic spectrum of a positive-definite 2N x 2N matrix: the N moduli of
/// the eigenvalues of i*Omega*sigma, each +/- pair reported once, ascending.
///
/// Throws NotPositiveDefiniteError for non-PD input and
/// NumericalDegeneracyError when the eigenvalues do not pair up within
/// tol.pairing.
std::vector<double> symplectic_eigenvalues(const Matrix& sigma, const Tolerances& tol = {});

}  // namespace gsteer
