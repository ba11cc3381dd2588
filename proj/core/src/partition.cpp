#include "gsteer/partition.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "gsteer/error.hpp"

namespace gsteer {

namespace {

void check_group(const ModeGroup& group, std::size_t n_modes, const char* name,
                 std::vector<bool>& seen) {
  if (group.empty()) throw PartitionError(fmt::format("{} party is empty", name));
  for (std::size_t mode : group) {
    if (mode >= n_modes) {
      throw PartitionError(
          fmt::format("{} party mode {} out of range for {} modes", name, mode, n_modes));
    }
    if (seen[mode]) throw PartitionError(fmt::format("mode {} appears twice", mode));
    seen[mode] = true;
  }
}

}  // namespace

void Bipartition::check(std::size_t n_modes) const {
  std::vector<bool> seen(n_modes, false);
  check_group(steering, n_modes, "steering", seen);
  check_group(steered, n_modes, "steered", seen);
}

Matrix BipartiteBlocks::assemble() const {
  const auto m = steering_block.rows();
  const auto n = steered_block.rows();
  Matrix out(m + n, m + n);
  out.topLeftCorner(m, m) = steering_block;
  out.topRightCorner(m, n) = correlation;
  out.bottomLeftCorner(n, m) = correlation.transpose();
  out.bottomRightCorner(n, n) = steered_block;
  return out;
}

std::vector<Eigen::Index> quadrature_indices(std::span<const std::size_t> modes) {
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * modes.size());
  for (std::size_t mode : modes) {
    idx.push_back(static_cast<Eigen::Index>(2 * mode));
    idx.push_back(static_cast<Eigen::Index>(2 * mode + 1));
  }
  return idx;
}

BipartiteBlocks split_blocks(const CovarianceMatrix& cm, const Bipartition& part) {
  part.check(cm.n_modes());
  const auto m = quadrature_indices(part.steering);
  const auto n = quadrature_indices(part.steered);
  const Matrix& s = cm.entries();
  return {s(m, m), s(n, n), s(m, n)};
}

Matrix schur_complement(const BipartiteBlocks& blocks, const Tolerances& tol) {
  Eigen::LLT<Matrix> llt(blocks.steering_block);
  if (llt.info() != Eigen::Success) {
    throw IllConditionedError("steering-party block is not positive definite");
  }
  const double rcond = llt.rcond();
  if (!(rcond * tol.max_condition > 1.0)) {
    throw IllConditionedError(
        fmt::format("steering-party block condition number ~{:.3g} exceeds {:.3g}", 1.0 / rcond,
                    tol.max_condition));
  }
  Matrix out = blocks.steered_block - blocks.correlation.transpose() * llt.solve(blocks.correlation);
  return 0.5 * (out + out.transpose());
}

}  // namespace gsteer
