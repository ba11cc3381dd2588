#include "gsteer/comb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "gsteer/error.hpp"

namespace gsteer {

namespace {

bool is_resolution(std::size_t p) {
  return std::find(kResolutions.begin(), kResolutions.end(), p) != kResolutions.end();
}

void check_resolution(std::size_t p) {
  if (!is_resolution(p)) {
    throw ModelError(fmt::format("pixel count must be 4, 8 or 16 (got {})", p));
  }
}

void check_eigenmode(const EigenmodeSpec& e, std::size_t index, const SpectralGrid& grid) {
  if (!std::isfinite(e.squeezing_db) || std::abs(e.squeezing_db) > kMaxSqueezingDb) {
    throw ModelError(fmt::format("eigenmode {}: |squeezing_db| must be at most {} dB", index,
                                 kMaxSqueezingDb));
  }
  if (!std::isfinite(e.antisqueezing_excess_db) || e.antisqueezing_excess_db < 0.0) {
    throw ModelError(fmt::format("eigenmode {}: anti-squeezing excess must be nonnegative", index));
  }
  if (e.shape == ProfileShape::kHermiteGauss) {
    if (!(e.width > 0.0) || !std::isfinite(e.width)) {
      throw ModelError(fmt::format("eigenmode {}: width must be positive", index));
    }
    if (e.order > 64) throw ModelError(fmt::format("eigenmode {}: order above 64", index));
    return;
  }
  if (e.levels.empty()) throw ModelError(fmt::format("eigenmode {}: no profile levels", index));
  if (grid.samples % e.levels.size() != 0) {
    throw ModelError(fmt::format("eigenmode {}: {} levels do not divide {} grid samples", index,
                                 e.levels.size(), grid.samples));
  }
  bool nonzero = false;
  for (double v : e.levels) {
    if (!std::isfinite(v)) throw ModelError(fmt::format("eigenmode {}: non-finite level", index));
    nonzero = nonzero || v != 0.0;
  }
  if (!nonzero) throw ModelError(fmt::format("eigenmode {}: profile is zero", index));
}

// Normalized Hermite functions psi_0..psi_order at t, by the stable recurrence.
double hermite_function(std::size_t order, double t) {
  double prev = 0.0;
  double cur = std::exp(-0.5 * t * t) / std::sqrt(std::sqrt(std::numbers::pi));
  for (std::size_t n = 0; n < order; ++n) {
    const double dn = static_cast<double>(n);
    const double next = std::sqrt(2.0 / (dn + 1.0)) * t * cur - std::sqrt(dn / (dn + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<std::string> band_letters_upper() { return {"A", "B", "C", "D"}; }

}  // namespace

void CombModel::check() const {
  check_resolution(n_pixels);
  if (!std::isfinite(grid.lower) || !std::isfinite(grid.upper) || !(grid.lower < grid.upper)) {
    throw ModelError("spectral support must be a finite interval with lower < upper");
  }
  if (grid.samples < 16 * n_pixels || grid.samples % 16 != 0) {
    throw ModelError(fmt::format(
        "grid needs a multiple of 16 samples and at least {} for {} pixels (got {})",
        16 * n_pixels, n_pixels, grid.samples));
  }
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw ModelError(fmt::format("efficiency must lie in (0, 1] (got {})", efficiency));
  }
  std::set<std::size_t> orders;
  for (std::size_t k = 0; k < eigenmodes.size(); ++k) {
    const auto& e = eigenmodes[k];
    check_eigenmode(e, k, grid);
    if (e.shape == ProfileShape::kHermiteGauss && !orders.insert(e.order).second) {
      throw ModelError(fmt::format("Hermite-Gauss order {} appears twice", e.order));
    }
  }
}

CombModel CombModel::at_resolution(std::size_t pixels) const {
  CombModel out = *this;
  out.n_pixels = pixels;
  out.check();
  return out;
}

std::vector<std::string> pixel_labels(std::size_t n_pixels) {
  check_resolution(n_pixels);
  std::vector<std::string> out;
  out.reserve(n_pixels);
  for (std::size_t p = 0; p < n_pixels; ++p) {
    if (n_pixels == 4) {
      out.push_back(band_letters_upper()[p]);
    } else if (n_pixels == 8) {
      out.push_back(fmt::format("{}{}", static_cast<char>('a' + p / 2), p % 2 + 1));
    } else {
      out.push_back(fmt::format("{}{}{}", static_cast<char>('a' + p / 4), (p % 4) / 2 + 1, p % 2 + 1));
    }
  }
  return out;
}

ModeGroup fine_pixels(std::string_view label) {
  const auto bad = [&] { return InvalidArgument(fmt::format("'{}' is not a band label", label)); };
  const auto digit = [&](char c) -> std::size_t {
    if (c != '1' && c != '2') throw bad();
    return static_cast<std::size_t>(c - '1');
  };
  if (label.size() == 1) {
    if (label[0] < 'A' || label[0] > 'D') throw bad();
    return band_pixels(static_cast<std::size_t>(label[0] - 'A'), 16);
  }
  if (label.empty() || label.size() > 3 || label[0] < 'a' || label[0] > 'd') throw bad();
  const auto band = static_cast<std::size_t>(label[0] - 'a');
  const std::size_t first = 4 * band + 2 * digit(label[1]);
  if (label.size() == 2) return {first, first + 1};
  return {first + digit(label[2])};
}

ModeGroup band_pixels(std::size_t band, std::size_t n_pixels) {
  check_resolution(n_pixels);
  if (band >= 4) throw InvalidArgument(fmt::format("band index {} out of range", band));
  const std::size_t width = n_pixels / 4;
  ModeGroup out(width);
  for (std::size_t i = 0; i < width; ++i) out[i] = band * width + i;
  return out;
}

ModeMap coarsening_map(std::size_t from_pixels, std::size_t to_pixels) {
  check_resolution(from_pixels);
  check_resolution(to_pixels);
  if (to_pixels > from_pixels) {
    throw InvalidArgument(fmt::format("cannot coarsen {} pixels to {}", from_pixels, to_pixels));
  }
  const std::size_t k = from_pixels / to_pixels;
  std::vector<ModeGroup> groups(to_pixels);
  for (std::size_t b = 0; b < to_pixels; ++b) {
    for (std::size_t i = 0; i < k; ++i) groups[b].push_back(b * k + i);
  }
  return ModeMap::band_merge(from_pixels, groups, pixel_labels(to_pixels));
}

Matrix eigenmode_profiles(const CombModel& model, const Tolerances& tol) {
  model.check();
  const auto n = static_cast<Eigen::Index>(model.grid.samples);
  const double dx = model.grid.step();
  const double center = 0.5 * (model.grid.lower + model.grid.upper);
  Matrix rows(static_cast<Eigen::Index>(model.eigenmodes.size()), n);
  for (std::size_t k = 0; k < model.eigenmodes.size(); ++k) {
    const auto& e = model.eigenmodes[k];
    const auto r = static_cast<Eigen::Index>(k);
    if (e.shape == ProfileShape::kHermiteGauss) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double x = model.grid.lower + (static_cast<double>(i) + 0.5) * dx;
        rows(r, i) = hermite_function(e.order, (x - center) / e.width);
      }
      const double outside = 1.0 - rows.row(r).squaredNorm() * dx / e.width;
      if (outside > kMaxMassOutsideSupport) {
        throw ModelError(fmt::format(
            "eigenmode {} (order {}, width {}) leaves {:.3g} of its mass outside the support", k,
            e.order, e.width, outside));
      }
    } else {
      const auto seg = n / static_cast<Eigen::Index>(e.levels.size());
      for (Eigen::Index i = 0; i < n; ++i) rows(r, i) = e.levels[static_cast<std::size_t>(i / seg)];
    }
  }
  // Modified Gram-Schmidt, two passes, in the grid inner product.
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index k = 0; k < rows.rows(); ++k) {
      for (Eigen::Index j = 0; j < k; ++j) {
        rows.row(k) -= (rows.row(k).dot(rows.row(j)) * dx) * rows.row(j);
      }
      const double norm = std::sqrt(rows.row(k).squaredNorm() * dx);
      if (norm < std::sqrt(tol.orthonormality)) {
        throw ModelError(fmt::format("eigenmode {} is linearly dependent on earlier ones", k));
      }
      rows.row(k) /= norm;
    }
  }
  return rows;
}

Matrix pixel_overlap_matrix(const CombModel& model, const Tolerances& tol) {
  const Matrix profiles = eigenmode_profiles(model, tol);
  const auto per_band = static_cast<Eigen::Index>(model.grid.samples / model.n_pixels);
  const double dx = model.grid.step();
  const double height = 1.0 / std::sqrt(static_cast<double>(per_band) * dx);
  const auto p = static_cast<Eigen::Index>(model.n_pixels);
  Matrix overlaps(profiles.rows(), p);
  for (Eigen::Index k = 0; k < profiles.rows(); ++k) {
    for (Eigen::Index b = 0; b < p; ++b) {
      overlaps(k, b) = profiles.row(k).segment(b * per_band, per_band).sum() * height * dx;
    }
  }
  return overlaps;
}

CovarianceMatrix cm_from_overlaps(const CombModel& model, const Matrix& overlaps) {
  const auto p = static_cast<Eigen::Index>(model.n_pixels);
  const auto k = static_cast<Eigen::Index>(model.eigenmodes.size());
  if (overlaps.rows() != k || overlaps.cols() != p) {
    throw DimensionError(fmt::format("overlap matrix is {}x{}, expected {}x{}", overlaps.rows(),
                                     overlaps.cols(), k, p));
  }
  Eigen::VectorXd dx(k);
  Eigen::VectorXd dp(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& e = model.eigenmodes[static_cast<std::size_t>(i)];
    const double squeezed = std::pow(10.0, e.squeezing_db / 10.0);
    const double other = std::pow(10.0, (-e.squeezing_db + e.antisqueezing_excess_db) / 10.0);
    const bool x_squeezed = e.squeezed == Quadrature::kX;
    dx(i) = (x_squeezed ? squeezed : other) - 1.0;
    dp(i) = (x_squeezed ? other : squeezed) - 1.0;
  }
  const Matrix xx = overlaps.transpose() * dx.asDiagonal() * overlaps;
  const Matrix pp = overlaps.transpose() * dp.asDiagonal() * overlaps;
  const double eta = model.efficiency;
  Matrix sigma = Matrix::Identity(2 * p, 2 * p);
  for (Eigen::Index a = 0; a < p; ++a) {
    for (Eigen::Index b = 0; b < p; ++b) {
      sigma(2 * a, 2 * b) += eta * xx(a, b);
      sigma(2 * a + 1, 2 * b + 1) += eta * pp(a, b);
    }
  }
  sigma = 0.5 * (sigma + sigma.transpose());
  return CovarianceMatrix(std::move(sigma), pixel_labels(model.n_pixels));
}

CovarianceMatrix simulate_cm(const CombModel& model, const Tolerances& tol) {
  CovarianceMatrix cm = cm_from_overlaps(model, pixel_overlap_matrix(model, tol));
  require_valid(cm, tol);
  return cm;
}

CombModel most_squeezed_only(const CombModel& model) {
  if (model.eigenmodes.empty()) throw ModelError("model has no eigenmodes");
  const auto best = std::max_element(
      model.eigenmodes.begin(), model.eigenmodes.end(), [](const auto& a, const auto& b) {
        return std::abs(a.squeezing_db) < std::abs(b.squeezing_db);
      });
  CombModel out = model;
  out.eigenmodes = {*best};
  return out;
}

ModelComparison single_eigenmode_comparison(const CombModel& model, EnumerationMode mode,
                                            const ScanOptions& options) {
  ModelComparison out;
  out.full = steering_spectrum(simulate_cm(model, options.tolerances), mode, options);
  out.single =
      steering_spectrum(simulate_cm(most_squeezed_only(model), options.tolerances), mode, options);
  out.deltas.resize(out.full.outcomes.size());
  for (std::size_t i = 0; i < out.deltas.size(); ++i) {
    const auto& f = out.full.outcomes[i];
    const auto& s = out.single.outcomes[i];
    out.deltas[i] = f.ok() && s.ok() ? f.result->value - s.result->value
                                     : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

Bipartition MixedResolutionState::forward() const { return {coarse, fine}; }

Bipartition MixedResolutionState::backward() const { return {fine, coarse}; }

MixedResolutionState asymmetric_resolution_cm(const CombModel& model,
                                              const std::vector<std::string>& coarse_labels,
                                              const std::vector<std::string>& fine_labels,
                                              const Tolerances& tol) {
  if (coarse_labels.empty() && fine_labels.empty()) {
    throw PartitionError("mixed-resolution state needs at least one label");
  }
  const CovarianceMatrix fine_cm = simulate_cm(model.at_resolution(16), tol);
  std::vector<std::string> labels = coarse_labels;
  labels.insert(labels.end(), fine_labels.begin(), fine_labels.end());
  std::vector<ModeGroup> groups;
  std::vector<int> owner(16, -1);
  for (std::size_t l = 0; l < labels.size(); ++l) {
    groups.push_back(fine_pixels(labels[l]));
    for (std::size_t px : groups.back()) {
      if (owner[px] >= 0) {
        throw PartitionError(fmt::format("'{}' and '{}' share spectral support",
                                         labels[static_cast<std::size_t>(owner[px])], labels[l]));
      }
      owner[px] = static_cast<int>(l);
    }
  }
  MixedResolutionState out{
      apply_mode_map(fine_cm, ModeMap::band_merge(16, groups, labels)), {}, {}};
  for (std::size_t i = 0; i < coarse_labels.size(); ++i) out.coarse.push_back(i);
  for (std::size_t i = 0; i < fine_labels.size(); ++i) out.fine.push_back(coarse_labels.size() + i);
  return out;
}

std::vector<BandPartitionRow> band_resolution_table(const CombModel& model,
                                                    const Tolerances& tol) {
  const auto bands = enumerate_bipartitions(4, EnumerationMode::kDisjointPairs);
  std::vector<BandPartitionRow> rows(bands.size());
  for (std::size_t i = 0; i < bands.size(); ++i) rows[i].bands = bands[i];
  for (std::size_t r = 0; r < kResolutions.size(); ++r) {
    const std::size_t pixels = kResolutions[r];
    const CovarianceMatrix cm = simulate_cm(model.at_resolution(pixels), tol);
    const auto lift = [&](const ModeGroup& g) {
      ModeGroup out;
      for (std::size_t band : g) {
        const auto px = band_pixels(band, pixels);
        out.insert(out.end(), px.begin(), px.end());
      }
      return out;
    };
    for (auto& row : rows) {
      row.values[r] = steering(cm, {lift(row.bands.steering), lift(row.bands.steered)}, tol).value;
    }
  }
  return rows;
}

}  // namespace gsteer
