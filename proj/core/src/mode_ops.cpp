#include "gsteer/mode_ops.hpp"

#include <cmath>

#include <fmt/format.h>

#include "gsteer/error.hpp"
#include "gsteer/partition.hpp"

namespace gsteer {

CovarianceMatrix select_modes(const CovarianceMatrix& cm, std::span<const std::size_t> keep) {
  if (keep.empty()) throw PartitionError("select_modes needs at least one mode to keep");
  std::vector<bool> seen(cm.n_modes(), false);
  std::vector<std::string> labels;
  for (std::size_t mode : keep) {
    if (mode >= cm.n_modes()) throw PartitionError(fmt::format("mode {} out of range", mode));
    if (seen[mode]) throw PartitionError(fmt::format("mode {} kept twice", mode));
    seen[mode] = true;
    if (cm.has_labels()) labels.push_back(cm.labels()[mode]);
  }
  const auto idx = quadrature_indices(keep);
  return CovarianceMatrix(cm.entries()(idx, idx), std::move(labels));
}

ModeMap::ModeMap(Matrix coefficients, std::vector<std::string> labels, const Tolerances& tol)
    : coefficients_(std::move(coefficients)), labels_(std::move(labels)) {
  if (coefficients_.rows() == 0 || coefficients_.cols() == 0) {
    throw DimensionError("mode map needs at least one input and one output mode");
  }
  if (!labels_.empty() && labels_.size() != output_modes()) {
    throw DimensionError(
        fmt::format("{} labels given for {} output modes", labels_.size(), output_modes()));
  }
  const Matrix gram = coefficients_ * coefficients_.transpose();
  const double err =
      (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > tol.orthonormality) {
    throw InvalidArgument(
        fmt::format("mode map rows are not orthonormal (max deviation {:.3g})", err));
  }
}

ModeMap ModeMap::identity(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  return ModeMap(Matrix::Identity(n, n));
}

ModeMap ModeMap::band_merge(std::size_t n_modes, const std::vector<ModeGroup>& groups,
                            std::vector<std::string> labels) {
  Matrix coefficients =
      Matrix::Zero(static_cast<Eigen::Index>(groups.size()), static_cast<Eigen::Index>(n_modes));
  std::vector<bool> used(n_modes, false);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw PartitionError("empty merge group");
    const double weight = 1.0 / std::sqrt(static_cast<double>(groups[g].size()));
    for (std::size_t mode : groups[g]) {
      if (mode >= n_modes) throw PartitionError(fmt::format("mode {} out of range", mode));
      if (used[mode]) throw PartitionError(fmt::format("mode {} merged twice", mode));
      used[mode] = true;
      coefficients(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(mode)) = weight;
    }
  }
  return ModeMap(std::move(coefficients), std::move(labels));
}

Matrix ModeMap::quadrature_matrix() const {
  Matrix q = Matrix::Zero(2 * coefficients_.rows(), 2 * coefficients_.cols());
  for (Eigen::Index r = 0; r < coefficients_.rows(); ++r) {
    for (Eigen::Index c = 0; c < coefficients_.cols(); ++c) {
      q(2 * r, 2 * c) = coefficients_(r, c);
      q(2 * r + 1, 2 * c + 1) = coefficients_(r, c);
    }
  }
  return q;
}

CovarianceMatrix apply_mode_map(const CovarianceMatrix& cm, const ModeMap& map) {
  if (map.input_modes() != cm.n_modes()) {
    throw DimensionError(fmt::format("mode map expects {} modes, state has {}",
                                     map.input_modes(), cm.n_modes()));
  }
  const Matrix l = map.quadrature_matrix();
  Matrix out = l * cm.entries() * l.transpose();
  out = 0.5 * (out + out.transpose());
  return CovarianceMatrix(std::move(out), map.labels());
}

}  // namespace gsteer
