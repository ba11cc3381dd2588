#include "gsteer/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include <fmt/format.h>

#include "gsteer/error.hpp"
#include "gsteer/parallel.hpp"

namespace gsteer {

UncertaintyEstimate monte_carlo_uncertainty(const CombModel& model, const Bipartition& part,
                                            std::span<const double> noise_db,
                                            std::size_t n_samples, std::uint64_t seed,
                                            const MonteCarloOptions& options) {
  const std::size_t k = model.eigenmodes.size();
  if (n_samples < 2) throw InvalidArgument("Monte Carlo needs at least 2 samples");
  if (noise_db.size() != k && noise_db.size() != 1) {
    throw InvalidArgument(
        fmt::format("{} noise values given for {} eigenmodes", noise_db.size(), k));
  }
  for (double s : noise_db) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("noise s.d. must be nonnegative");
  }
  part.check(model.n_pixels);
  const Matrix overlaps = pixel_overlap_matrix(model, options.tolerances);

  std::vector<std::optional<double>> draws(n_samples);
  parallel_for(n_samples, options.jobs, [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    CombModel perturbed = model;
    for (std::size_t e = 0; e < k; ++e) {
      const double sd = noise_db.size() == 1 ? noise_db[0] : noise_db[e];
      perturbed.eigenmodes[e].squeezing_db += sd * normal(rng);
      if (std::abs(perturbed.eigenmodes[e].squeezing_db) > kMaxSqueezingDb) return;
    }
    const CovarianceMatrix cm = cm_from_overlaps(perturbed, overlaps);
    if (!validate(cm, options.tolerances).valid()) return;
    try {
      draws[i] = steering(cm, part, options.tolerances).value;
    } catch (const Error&) {
      // Ill-conditioned draws count as rejected.
    }
  });

  UncertaintyEstimate out;
  out.n_samples = n_samples;
  out.seed = seed;
  // Shifted sums: identical draws give an exact zero spread.
  std::optional<double> shift;
  std::size_t accepted = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& d : draws) {
    if (!d) continue;
    if (!shift) shift = *d;
    const double dev = *d - *shift;
    ++accepted;
    sum += dev;
    sum_sq += dev * dev;
  }
  out.n_unphysical_rejected = n_samples - accepted;
  if (accepted == 0) throw StateError("every Monte Carlo draw was rejected");
  const auto n = static_cast<double>(accepted);
  out.mean = *shift + sum / n;
  out.std = accepted > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0))) : 0.0;
  return out;
}

}  // namespace gsteer
