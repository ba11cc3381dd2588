#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "gsteer/comb.hpp"

namespace gsteer {

struct UncertaintyEstimate {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation of the accepted draws
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::size_t n_unphysical_rejected = 0;

  bool operator==(const UncertaintyEstimate&) const = default;
};

struct MonteCarloOptions {
  std::size_t jobs = 1;
  Tolerances tolerances;
};

/// Perturbs each eigenmode's squeezing (dB) with an independent Gaussian draw,
/// rebuilds the pixel CM and evaluates steering for part. Sample i uses its
/// own generator seeded from (seed, i), so the result does not depend on jobs.
///
/// noise_db holds one s.d. per eigenmode, or a single value for all.
/// Throws StateError when every draw is rejected.
UncertaintyEstimate monte_carlo_uncertainty(const CombModel& model, const Bipartition& part,
                                            std::span<const double> noise_db,
                                            std::size_t n_samples, std::uint64_t seed,
                                            const MonteCarloOptions& options = {});

}  // namespace gsteer
