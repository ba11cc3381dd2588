#include "gsteer/enumerate.hpp"

#include <fmt/format.h>

#include "gsteer/error.hpp"

namespace gsteer {

std::string_view to_string(EnumerationMode mode) {
  return mode == EnumerationMode::kFull ? "full" : "pairs";
}

EnumerationMode parse_enumeration_mode(std::string_view text) {
  if (text == "full") return EnumerationMode::kFull;
  if (text == "pairs" || text == "disjoint_pairs") return EnumerationMode::kDisjointPairs;
  throw InvalidArgument(fmt::format("unknown enumeration mode '{}'", text));
}

ModeMask mask_of(const ModeGroup& modes) {
  ModeMask mask = 0;
  for (std::size_t m : modes) {
    if (m >= 64) throw InvalidArgument("mode index too large for a mask");
    mask |= ModeMask{1} << m;
  }
  return mask;
}

ModeGroup modes_of(ModeMask mask) {
  ModeGroup out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

namespace {

void check_size(std::size_t n_modes) {
  if (n_modes < 2) throw InvalidArgument("bipartitions need at least 2 modes");
  if (n_modes > 62) throw InvalidArgument("bipartition enumeration supports at most 62 modes");
}

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

std::uint64_t bipartition_count(std::size_t n_modes, EnumerationMode mode) {
  check_size(n_modes);
  if (mode == EnumerationMode::kFull) return (std::uint64_t{1} << n_modes) - 2;
  if (n_modes > 40) throw InvalidArgument("disjoint-pair count overflows for more than 40 modes");
  return pow_u64(3, n_modes) - (std::uint64_t{1} << (n_modes + 1)) + 1;
}

std::vector<Bipartition> enumerate_bipartitions(std::size_t n_modes, EnumerationMode mode) {
  check_size(n_modes);
  const ModeMask all = (ModeMask{1} << n_modes) - 1;
  std::vector<Bipartition> out;
  out.reserve(bipartition_count(n_modes, mode));
  for (ModeMask m = 1; m < all; ++m) {
    if (mode == EnumerationMode::kFull) {
      out.push_back({modes_of(m), modes_of(all & ~m)});
      continue;
    }
    const ModeMask rest = all & ~m;
    // Submasks of rest in ascending order.
    for (ModeMask n = rest & (~rest + 1); n != 0; n = rest & (n - rest)) {
      out.push_back({modes_of(m), modes_of(n)});
      if (n == rest) break;
    }
  }
  return out;
}

}  // namespace gsteer
