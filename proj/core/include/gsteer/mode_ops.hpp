#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gsteer/covariance.hpp"

namespace gsteer {

/// Partial trace: keeps the listed modes in the listed order.
CovarianceMatrix select_modes(const CovarianceMatrix& cm, std::span<const std::size_t> keep);

/// Linear change of mode basis N -> M acting identically on x and p. Rows of
/// the mode-coefficient matrix must be orthonormal.
class ModeMap {
 public:
  explicit ModeMap(Matrix coefficients, std::vector<std::string> labels = {},
                   const Tolerances& tol = {});

  static ModeMap identity(std::size_t n_modes);

  /// One output mode per group: equal weights 1/sqrt(k) over its k members.
  static ModeMap band_merge(std::size_t n_modes, const std::vector<ModeGroup>& groups,
                            std::vector<std::string> labels = {});

  std::size_t input_modes() const { return static_cast<std::size_t>(coefficients_.cols()); }
  std::size_t output_modes() const { return static_cast<std::size_t>(coefficients_.rows()); }
  const Matrix& coefficients() const { return coefficients_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// The 2M x 2N quadrature matrix.
  Matrix quadrature_matrix() const;

 private:
  Matrix coefficients_;
  std::vector<std::string> labels_;
};

/// sigma' = L sigma L^T. Output labels come from the map when it has them.
CovarianceMatrix apply_mode_map(const CovarianceMatrix& cm, const ModeMap& map);

}  // namespace gsteer
