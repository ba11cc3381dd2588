#include "gsteer/steering.hpp"

#include <cmath>

#include "gsteer/error.hpp"
#include "gsteer/symplectic.hpp"

namespace gsteer {

double steering_value(std::span<const double> spectrum) {
  double sum = 0.0;
  for (double nu : spectrum) {
    if (nu < 1.0) sum -= std::log(nu);
  }
  return std::max(0.0, sum);
}

SteeringResult steering(const CovarianceMatrix& cm, const Bipartition& part,
                        const Tolerances& tol) {
  const auto blocks = split_blocks(cm, part);
  const Matrix conditional = schur_complement(blocks, tol);
  SteeringResult result;
  result.spectrum = symplectic_eigenvalues(conditional, tol);
  result.value = steering_value(result.spectrum);
  result.partition = part;
  result.steerable = result.value > tol.steer_epsilon;
  return result;
}

Direction classify_direction(double forward, double backward, const Tolerances& tol) {
  if (!(forward >= 0.0) || !(backward >= 0.0)) {
    throw InvalidArgument("steering values must be nonnegative");
  }
  const bool f = forward > tol.steer_epsilon;
  const bool b = backward > tol.steer_epsilon;
  if (f && b) return Direction::kTwoWay;
  if (f) return Direction::kOneWayForward;
  if (b) return Direction::kOneWayBackward;
  return Direction::kNoSteering;
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::kNoSteering: return "no-steering";
    case Direction::kOneWayForward: return "one-way-forward";
    case Direction::kOneWayBackward: return "one-way-backward";
    case Direction::kTwoWay: return "two-way";
  }
  return "unknown";
}

}  // namespace gsteer
