#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gsteer/tolerances.hpp"

namespace gsteer {

using Matrix = Eigen::MatrixXd;
using ModeGroup = std::vector<std::size_t>;

/// Second-moment matrix of N bosonic modes in mode-major quadrature order
/// (x1, p1, x2, p2, ...), vacuum variance normalized to 1.
///
/// Construction only checks the shape; physicality is reported by validate().
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries, std::vector<std::string> labels = {});

  static CovarianceMatrix vacuum(std::size_t n_modes);

  std::size_t n_modes() const { return n_modes_; }
  const Matrix& entries() const { return entries_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Label of a mode, or its decimal index when the matrix is unlabeled.
  std::string label(std::size_t mode) const;
  std::vector<std::string> labels_or_indices() const;

  /// Accepts a label, or a decimal index when no label matches.
  std::size_t resolve(std::string_view label_or_index) const;
  ModeGroup resolve(const std::vector<std::string>& tokens) const;

 private:
  Matrix entries_;
  std::vector<std::string> labels_;
  std::size_t n_modes_ = 0;
};

struct Violation {
  enum class Kind { kAsymmetric, kNotPositiveDefinite, kUnphysical };

  Kind kind;
  double value;  // asymmetry, smallest eigenvalue, or smallest symplectic eigenvalue

  std::string describe() const;
};

struct ValidationVerdict {
  std::vector<Violation> failures;
  double asymmetry = 0.0;
  double min_eigenvalue = 0.0;
  std::optional<double> min_symplectic_eigenvalue;

  bool valid() const { return failures.empty(); }
};

/// Throws DimensionError unless the matrix is 2N x 2N.
ValidationVerdict validate(const Matrix& entries, const Tolerances& tol = {});
ValidationVerdict validate(const CovarianceMatrix& cm, const Tolerances& tol = {});

/// Throws StateError carrying the verdict text when cm is not a valid state.
void require_valid(const CovarianceMatrix& cm, const Tolerances& tol = {});

/// Throws DimensionError unless m is square with even dimension.
std::size_t mode_count(const Matrix& m);

}  // namespace gsteer
