#include "gsteer/covariance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "gsteer/error.hpp"
#include "gsteer/symplectic.hpp"

namespace gsteer {

std::size_t mode_count(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw DimensionError(fmt::format("expected a nonempty 2N x 2N matrix, got {} x {}", m.rows(),
                                     m.cols()));
  }
  return static_cast<std::size_t>(m.rows() / 2);
}

CovarianceMatrix::CovarianceMatrix(Matrix entries, std::vector<std::string> labels)
    : entries_(std::move(entries)), labels_(std::move(labels)) {
  n_modes_ = mode_count(entries_);
  if (!labels_.empty() && labels_.size() != n_modes_) {
    throw DimensionError(
        fmt::format("{} labels given for {} modes", labels_.size(), n_modes_));
  }
}

CovarianceMatrix CovarianceMatrix::vacuum(std::size_t n_modes) {
  if (n_modes == 0) throw DimensionError("vacuum state needs at least one mode");
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return CovarianceMatrix(Matrix::Identity(dim, dim));
}

std::string CovarianceMatrix::label(std::size_t mode) const {
  if (mode >= n_modes_) throw PartitionError(fmt::format("mode {} out of range", mode));
  return labels_.empty() ? std::to_string(mode) : labels_[mode];
}

std::vector<std::string> CovarianceMatrix::labels_or_indices() const {
  std::vector<std::string> out;
  out.reserve(n_modes_);
  for (std::size_t i = 0; i < n_modes_; ++i) out.push_back(label(i));
  return out;
}

std::size_t CovarianceMatrix::resolve(std::string_view token) const {
  const auto it = std::find(labels_.begin(), labels_.end(), token);
  if (it != labels_.end()) return static_cast<std::size_t>(it - labels_.begin());
  std::size_t index = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, index);
  if (ec == std::errc() && ptr == end && !token.empty() && index < n_modes_) return index;
  throw PartitionError(fmt::format("unknown mode label '{}'", token));
}

ModeGroup CovarianceMatrix::resolve(const std::vector<std::string>& tokens) const {
  ModeGroup out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(resolve(t));
  return out;
}

std::string Violation::describe() const {
  switch (kind) {
    case Kind::kAsymmetric:
      return fmt::format("asymmetric: relative asymmetry {:.3g}", value);
    case Kind::kNotPositiveDefinite:
      return fmt::format("not positive definite: min eigenvalue {:.6g}", value);
    case Kind::kUnphysical:
      return fmt::format("unphysical: min symplectic eigenvalue {:.6g}", value);
  }
  return "unknown violation";
}

ValidationVerdict validate(const Matrix& entries, const Tolerances& tol) {
  mode_count(entries);
  ValidationVerdict verdict;

  const double scale = entries.cwiseAbs().maxCoeff();
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  verdict.asymmetry = scale > 0.0 ? asym / scale : asym;
  if (verdict.asymmetry > tol.symmetry) {
    verdict.failures.push_back({Violation::Kind::kAsymmetric, verdict.asymmetry});
  }

  const Matrix sym = 0.5 * (entries + entries.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  verdict.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (!(verdict.min_eigenvalue > 0.0)) {
    verdict.failures.push_back({Violation::Kind::kNotPositiveDefinite, verdict.min_eigenvalue});
    return verdict;
  }

  try {
    const auto nu = symplectic_eigenvalues(sym, tol);
    verdict.min_symplectic_eigenvalue = nu.front();
    if (nu.front() < 1.0 - tol.physicality) {
      verdict.failures.push_back({Violation::Kind::kUnphysical, nu.front()});
    }
  } catch (const NotPositiveDefiniteError&) {
    verdict.failures.push_back({Violation::Kind::kNotPositiveDefinite, verdict.min_eigenvalue});
  }
  return verdict;
}

ValidationVerdict validate(const CovarianceMatrix& cm, const Tolerances& tol) {
  return validate(cm.entries(), tol);
}

void require_valid(const CovarianceMatrix& cm, const Tolerances& tol) {
  const auto verdict = validate(cm, tol);
  if (verdict.valid()) return;
  std::string text = "invalid covariance matrix:";
  for (const auto& f : verdict.failures) text += " " + f.describe() + ";";
  text.pop_back();
  throw StateError(text);
}

}  // namespace gsteer
