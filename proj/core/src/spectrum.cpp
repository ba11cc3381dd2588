#include "gsteer/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "gsteer/error.hpp"
#include "gsteer/mode_ops.hpp"
#include "gsteer/parallel.hpp"

namespace gsteer {

namespace {

// Linear interpolation between order statistics of sorted data, p in [0, 1].
double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

BoxStats box_stats(std::vector<double> values, const WhiskerRule& rule) {
  BoxStats out;
  out.count = values.size();
  if (values.empty()) return out;
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("box statistics need finite values");
  }
  std::sort(values.begin(), values.end());
  out.min = values.front();
  out.max = values.back();
  out.q1 = quantile(values, 0.25);
  out.median = quantile(values, 0.5);
  out.q3 = quantile(values, 0.75);
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (rule.kind == WhiskerRule::Kind::kTukey) {
    if (rule.iqr_factor < 0.0) throw InvalidArgument("whisker IQR factor must be nonnegative");
    const double reach = rule.iqr_factor * (out.q3 - out.q1);
    const double lo_fence = out.q1 - reach;
    const double hi_fence = out.q3 + reach;
    out.whisker_low = *std::lower_bound(values.begin(), values.end(), lo_fence);
    out.whisker_high = *(std::upper_bound(values.begin(), values.end(), hi_fence) - 1);
  } else {
    if (!(rule.lower_percentile >= 0.0 && rule.lower_percentile <= rule.upper_percentile &&
          rule.upper_percentile <= 100.0)) {
      throw InvalidArgument("whisker percentiles must satisfy 0 <= lower <= upper <= 100");
    }
    out.whisker_low = quantile(values, rule.lower_percentile / 100.0);
    out.whisker_high = quantile(values, rule.upper_percentile / 100.0);
  }
  return out;
}

std::size_t SteeringSpectrumReport::steerable_count() const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) {
    return o.ok() && o.result->steerable;
  }));
}

std::size_t SteeringSpectrumReport::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return !o.ok(); }));
}

std::vector<SplitStats> split_statistics(std::span<const PartitionOutcome> outcomes,
                                         const WhiskerRule& rule, double steer_epsilon) {
  struct Bucket {
    std::vector<double> values;
    std::size_t failed = 0;
    std::size_t steerable = 0;
  };
  std::map<std::pair<std::size_t, std::size_t>, Bucket> buckets;
  for (const auto& o : outcomes) {
    auto& b = buckets[{o.partition.steering.size(), o.partition.steered.size()}];
    if (!o.ok()) {
      ++b.failed;
      continue;
    }
    b.values.push_back(o.result->value);
    if (o.result->value > steer_epsilon) ++b.steerable;
  }
  std::vector<SplitStats> out;
  out.reserve(buckets.size());
  for (auto& [key, b] : buckets) {
    out.push_back({key.first, key.second, b.failed, b.steerable, box_stats(std::move(b.values), rule)});
  }
  return out;
}

SteeringSpectrumReport steering_spectrum(const CovarianceMatrix& cm,
                                         std::vector<Bipartition> partitions,
                                         EnumerationMode mode, const ScanOptions& options) {
  require_valid(cm, options.tolerances);
  SteeringSpectrumReport report;
  report.mode = mode;
  report.n_modes = cm.n_modes();
  report.outcomes.resize(partitions.size());
  parallel_for(partitions.size(), options.jobs, [&](std::size_t i) {
    auto& outcome = report.outcomes[i];
    outcome.partition = std::move(partitions[i]);
    try {
      outcome.partition.check(cm.n_modes());
      outcome.result = steering(cm, outcome.partition, options.tolerances);
    } catch (const Error& e) {
      outcome.error = e.what();
    }
  });
  report.stats =
      split_statistics(report.outcomes, options.whiskers, options.tolerances.steer_epsilon);
  return report;
}

SteeringSpectrumReport steering_spectrum(const CovarianceMatrix& cm, EnumerationMode mode,
                                         const ScanOptions& options) {
  return steering_spectrum(cm, enumerate_bipartitions(cm.n_modes(), mode), mode, options);
}

LossScanReport loss_scan(const CovarianceMatrix& cm,
                         const std::vector<std::string>& removal_sequence,
                         const ScanOptions& options) {
  require_valid(cm, options.tolerances);
  const ModeGroup removal = cm.resolve(removal_sequence);
  std::vector<bool> seen(cm.n_modes(), false);
  for (std::size_t m : removal) {
    if (seen[m]) throw PartitionError(fmt::format("mode '{}' removed twice", cm.label(m)));
    seen[m] = true;
  }
  if (cm.n_modes() - removal.size() < 2) {
    throw PartitionError("loss scan must leave at least 2 modes");
  }

  LossScanReport report;
  report.removal_sequence = removal_sequence;
  const std::size_t n_steps = std::max<std::size_t>(removal.size(), 1);
  const std::size_t first = removal.empty() ? 0 : 1;
  for (std::size_t k = first; k < first + n_steps; ++k) {
    std::vector<bool> dropped(cm.n_modes(), false);
    LossStep step;
    for (std::size_t r = 0; r < k; ++r) {
      dropped[removal[r]] = true;
      step.removed.push_back(cm.label(removal[r]));
    }
    ModeGroup keep;
    for (std::size_t m = 0; m < cm.n_modes(); ++m) {
      if (!dropped[m]) keep.push_back(m);
    }
    const CovarianceMatrix reduced = select_modes(cm, keep);
    step.remaining_modes = keep.size();
    step.spectrum = steering_spectrum(reduced, EnumerationMode::kFull, options);
    step.n_bipartitions = step.spectrum.outcomes.size();
    step.n_steerable = step.spectrum.steerable_count();
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace gsteer
