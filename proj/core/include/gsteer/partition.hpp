#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gsteer/covariance.hpp"

namespace gsteer {

/// Ordered pair of disjoint, nonempty mode groups: the steering party m and
/// the steered party n.
struct Bipartition {
  ModeGroup steering;
  ModeGroup steered;

  /// Throws PartitionError unless both parties are nonempty, duplicate-free,
  /// disjoint and below n_modes.
  void check(std::size_t n_modes) const;
  Bipartition reversed() const { return {steered, steering}; }

  bool operator==(const Bipartition&) const = default;
};

/// [[M, C], [C^T, N]] after gathering the steering modes then the steered
/// modes in the order they appear in the Bipartition.
struct BipartiteBlocks {
  Matrix steering_block;  // M, 2m x 2m
  Matrix steered_block;   // N, 2n x 2n
  Matrix correlation;     // C, 2m x 2n

  Matrix assemble() const;
};

/// Row/column indices (2i, 2i+1) for each mode, in order.
std::vector<Eigen::Index> quadrature_indices(std::span<const std::size_t> modes);

BipartiteBlocks split_blocks(const CovarianceMatrix& cm, const Bipartition& part);

/// N - C^T M^{-1} C, symmetrized. Throws IllConditionedError when M is not
/// positive definite or its condition number exceeds tol.max_condition.
Matrix schur_complement(const BipartiteBlocks& blocks, const Tolerances& tol = {});

}  // namespace gsteer
