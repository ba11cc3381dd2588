#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsteer/enumerate.hpp"
#include "gsteer/steering.hpp"

namespace gsteer {

struct WhiskerRule {
  enum class Kind { kTukey, kPercentile };

  Kind kind = Kind::kTukey;
  double iqr_factor = 1.5;
  double lower_percentile = 1.5;
  double upper_percentile = 98.5;

  static WhiskerRule tukey(double factor = 1.5) { return {Kind::kTukey, factor, 1.5, 98.5}; }
  static WhiskerRule percentile(double lower, double upper) {
    return {Kind::kPercentile, 1.5, lower, upper};
  }
};

struct BoxStats {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
};

/// Quantiles interpolate linearly between order statistics. Tukey whiskers
/// end at the most extreme data point within factor*IQR of the box.
BoxStats box_stats(std::vector<double> values, const WhiskerRule& rule = {});

struct ScanOptions {
  std::size_t jobs = 1;
  WhiskerRule whiskers;
  Tolerances tolerances;
};

/// A failed partition keeps its error text instead of a result.
struct PartitionOutcome {
  Bipartition partition;
  std::optional<SteeringResult> result;
  std::string error;

  bool ok() const { return result.has_value(); }
};

struct SplitStats {
  std::size_t steering_size = 0;
  std::size_t steered_size = 0;
  std::size_t n_failed = 0;
  std::size_t n_steerable = 0;
  BoxStats box;
};

struct SteeringSpectrumReport {
  EnumerationMode mode = EnumerationMode::kFull;
  std::size_t n_modes = 0;
  std::vector<PartitionOutcome> outcomes;  // canonical enumeration order
  std::vector<SplitStats> stats;           // ascending (|m|, |n|)

  std::size_t steerable_count() const;
  std::size_t failed_count() const;
};

/// Evaluates every enumerated partition. Throws StateError when cm is not
/// valid; per-partition failures are recorded and the scan continues.
SteeringSpectrumReport steering_spectrum(const CovarianceMatrix& cm, EnumerationMode mode,
                                         const ScanOptions& options = {});

/// Same, over an explicit partition list.
SteeringSpectrumReport steering_spectrum(const CovarianceMatrix& cm,
                                         std::vector<Bipartition> partitions,
                                         EnumerationMode mode, const ScanOptions& options = {});

std::vector<SplitStats> split_statistics(std::span<const PartitionOutcome> outcomes,
                                         const WhiskerRule& rule, double steer_epsilon);

struct LossStep {
  std::vector<std::string> removed;
  std::size_t remaining_modes = 0;
  std::size_t n_bipartitions = 0;
  std::size_t n_steerable = 0;
  SteeringSpectrumReport spectrum;
};

struct LossScanReport {
  std::vector<std::string> removal_sequence;
  std::vector<LossStep> steps;
};

/// Step k drops the first k labels and runs a full-mode spectrum on the rest.
/// An empty sequence gives one step with nothing removed.
LossScanReport loss_scan(const CovarianceMatrix& cm, const std::vector<std::string>& removal_sequence,
                         const ScanOptions& options = {});

}  // namespace gsteer
