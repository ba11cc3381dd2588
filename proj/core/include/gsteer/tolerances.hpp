#pragma once

namespace gsteer {

/// Numerical thresholds shared by every module. One instance is threaded
/// through the API; the CLI can replace it from a tolerance file.
struct Tolerances {
  double symmetry = 1e-10;        // relative to the largest entry magnitude
  double orthonormality = 1e-10;  // mode-map rows, eigenmode overlaps
  double physicality = 1e-9;      // symplectic eigenvalues >= 1 - this
  double pairing = 1e-8;          // residue allowed when pairing +/- nu
  double steer_epsilon = 1e-9;    // G above this counts as steerable
  double max_condition = 1e12;    // steering-party block in the Schur complement
};

}  // namespace gsteer
