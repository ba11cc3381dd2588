#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gsteer/partition.hpp"

namespace gsteer {

enum class EnumerationMode {
  kFull,           // m and n cover every mode: 2^N - 2 ordered splits
  kDisjointPairs,  // m, n disjoint and nonempty: 3^N - 2^(N+1) + 1 ordered pairs
};

std::string_view to_string(EnumerationMode mode);
EnumerationMode parse_enumeration_mode(std::string_view text);

using ModeMask = std::uint64_t;

ModeMask mask_of(const ModeGroup& modes);
ModeGroup modes_of(ModeMask mask);

std::uint64_t bipartition_count(std::size_t n_modes, EnumerationMode mode);

/// Canonical order: ascending steering mask, then ascending steered mask
/// (bit i is mode i). Throws InvalidArgument for n_modes < 2 or > 62.
std::vector<Bipartition> enumerate_bipartitions(std::size_t n_modes, EnumerationMode mode);

}  // namespace gsteer
