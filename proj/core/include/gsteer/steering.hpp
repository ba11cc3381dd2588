#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "gsteer/partition.hpp"

namespace gsteer {

struct SteeringResult {
  double value = 0.0;             // G^{m->n} in nats
  std::vector<double> spectrum;   // symplectic eigenvalues of the Schur complement, ascending
  Bipartition partition;
  bool steerable = false;         // value > steer_epsilon
};

/// max{0, -sum_{nu_i < 1} ln nu_i}
double steering_value(std::span<const double> spectrum);

/// Gaussian steerability from part.steering to part.steered. cm is assumed
/// valid; scans validate once up front instead of per partition.
SteeringResult steering(const CovarianceMatrix& cm, const Bipartition& part,
                        const Tolerances& tol = {});

enum class Direction { kNoSteering, kOneWayForward, kOneWayBackward, kTwoWay };

/// Throws InvalidArgument on negative input.
Direction classify_direction(double forward, double backward, const Tolerances& tol = {});

std::string_view to_string(Direction direction);

}  // namespace gsteer
