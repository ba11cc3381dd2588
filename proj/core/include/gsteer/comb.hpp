#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gsteer/mode_ops.hpp"
#include "gsteer/spectrum.hpp"

namespace gsteer {

enum class ProfileShape {
  kHermiteGauss,  // Hermite-Gauss function of the given order and width
  kPiecewise,     // constant on equal-width segments of the support
};

enum class Quadrature { kX, kP };

/// One independently squeezed eigenmode (supermode) of the comb.
struct EigenmodeSpec {
  ProfileShape shape = ProfileShape::kHermiteGauss;
  std::size_t order = 0;
  double width = 0.17;
  std::vector<double> levels;
  double squeezing_db = 0.0;  // negative: below shot noise
  double antisqueezing_excess_db = 0.0;
  Quadrature squeezed = Quadrature::kX;

  bool operator==(const EigenmodeSpec&) const = default;
};

struct SpectralGrid {
  std::size_t samples = 1024;
  double lower = -1.0;
  double upper = 1.0;

  double step() const { return (upper - lower) / static_cast<double>(samples); }
  bool operator==(const SpectralGrid&) const = default;
};

struct CombModel {
  std::vector<EigenmodeSpec> eigenmodes;
  std::size_t n_pixels = 16;
  SpectralGrid grid;
  double efficiency = 1.0;
  std::string provenance;

  /// Throws ModelError for out-of-range parameters.
  void check() const;
  CombModel at_resolution(std::size_t n_pixels) const;

  bool operator==(const CombModel&) const = default;
};

inline constexpr std::array<std::size_t, 3> kResolutions = {4, 8, 16};
inline constexpr double kMaxSqueezingDb = 20.0;
inline constexpr double kMaxMassOutsideSupport = 1e-6;

/// A..D at 4 pixels, a1..d2 at 8, a11..d22 at 16.
std::vector<std::string> pixel_labels(std::size_t n_pixels);

/// 16-pixel indices covered by a band label of any resolution ("B", "b1", "b12").
ModeGroup fine_pixels(std::string_view label);

/// Pixel indices of the four coarse bands at the given resolution.
ModeGroup band_pixels(std::size_t band, std::size_t n_pixels);

/// Merges equal-width neighbouring pixels: from_pixels -> to_pixels.
ModeMap coarsening_map(std::size_t from_pixels, std::size_t to_pixels);

/// K x samples; rows orthonormal under sum(e_k e_l) * dx.
Matrix eigenmode_profiles(const CombModel& model, const Tolerances& tol = {});

/// K x P overlaps of each eigenmode with each L2-normalized flat-top band.
Matrix pixel_overlap_matrix(const CombModel& model, const Tolerances& tol = {});

/// Pixel-basis covariance matrix: I + T^T (Sigma_eig - I) T, then loss.
CovarianceMatrix simulate_cm(const CombModel& model, const Tolerances& tol = {});

/// simulate_cm without re-deriving the overlaps or validating the output.
CovarianceMatrix cm_from_overlaps(const CombModel& model, const Matrix& overlaps);

/// Copy keeping only the eigenmode with the largest |squeezing_db|.
CombModel most_squeezed_only(const CombModel& model);

struct ModelComparison {
  SteeringSpectrumReport full;
  SteeringSpectrumReport single;
  std::vector<double> deltas;  // full - single per partition, NaN where either failed
};

/// Spectrum of the model next to the spectrum of its most-squeezed eigenmode.
ModelComparison single_eigenmode_comparison(const CombModel& model, EnumerationMode mode,
                                            const ScanOptions& options = {});

/// Mixed-resolution state: every label becomes one mode spanning its pixels.
struct MixedResolutionState {
  CovarianceMatrix cm;
  ModeGroup coarse;
  ModeGroup fine;

  Bipartition forward() const;   // coarse -> fine
  Bipartition backward() const;  // fine -> coarse
};

/// Simulates at 16 pixels and merges each label's pixels into one mode.
/// Throws PartitionError when two labels share spectral support.
MixedResolutionState asymmetric_resolution_cm(const CombModel& model,
                                              const std::vector<std::string>& coarse_labels,
                                              const std::vector<std::string>& fine_labels,
                                              const Tolerances& tol = {});

/// One band-aligned partition of ABCD evaluated at 4, 8 and 16 pixels.
struct BandPartitionRow {
  Bipartition bands;  // indices into A..D
  std::array<double, 3> values{};
};

/// All 50 disjoint band pairs, canonical order.
std::vector<BandPartitionRow> band_resolution_table(const CombModel& model,
                                                    const Tolerances& tol = {});

}  // namespace gsteer
