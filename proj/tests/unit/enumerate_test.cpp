#include <gtest/gtest.h>

#include <set>

#include "gsteer/enumerate.hpp"
#include "gsteer/error.hpp"
#include "oracles.hpp"

namespace gsteer {
namespace {

TEST(BipartitionCount, KnownValues) {
  EXPECT_EQ(bipartition_count(16, EnumerationMode::kFull), 65534u);
  EXPECT_EQ(bipartition_count(4, EnumerationMode::kDisjointPairs), 50u);
  EXPECT_EQ(bipartition_count(2, EnumerationMode::kFull), 2u);
  EXPECT_EQ(bipartition_count(2, EnumerationMode::kDisjointPairs), 2u);
}

TEST(BipartitionCount, MatchesBruteForce) {
  for (std::size_t n = 2; n <= 10; ++n) {
    EXPECT_EQ(bipartition_count(n, EnumerationMode::kFull), testing::brute_force_pair_count(n, true));
    EXPECT_EQ(bipartition_count(n, EnumerationMode::kDisjointPairs),
              testing::brute_force_pair_count(n, false));
  }
}

TEST(Enumerate, ListsMatchCountsAndAreDistinctAndValid) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (auto mode : {EnumerationMode::kFull, EnumerationMode::kDisjointPairs}) {
      const auto parts = enumerate_bipartitions(n, mode);
      ASSERT_EQ(parts.size(), bipartition_count(n, mode));
      std::set<std::pair<ModeMask, ModeMask>> seen;
      for (const auto& p : parts) {
        EXPECT_NO_THROW(p.check(n));
        if (mode == EnumerationMode::kFull) {
          EXPECT_EQ(p.steering.size() + p.steered.size(), n);
        }
        EXPECT_TRUE(seen.insert({mask_of(p.steering), mask_of(p.steered)}).second);
      }
    }
  }
}

TEST(Enumerate, CanonicalOrder) {
  const auto parts = enumerate_bipartitions(4, EnumerationMode::kDisjointPairs);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto a = std::pair{mask_of(parts[i - 1].steering), mask_of(parts[i - 1].steered)};
    const auto b = std::pair{mask_of(parts[i].steering), mask_of(parts[i].steered)};
    EXPECT_LT(a, b);
  }
  EXPECT_EQ(parts.front(), (Bipartition{{0}, {1}}));
  EXPECT_EQ(parts.back(), (Bipartition{{1, 2, 3}, {0}}));
}

TEST(Enumerate, FullModeFirstEntries) {
  const auto parts = enumerate_bipartitions(3, EnumerationMode::kFull);
  ASSERT_EQ(parts.size(), 6u);
  EXPECT_EQ(parts[0], (Bipartition{{0}, {1, 2}}));
  EXPECT_EQ(parts[1], (Bipartition{{1}, {0, 2}}));
  EXPECT_EQ(parts[2], (Bipartition{{0, 1}, {2}}));
}

TEST(Enumerate, RejectsTooFewOrTooManyModes) {
  EXPECT_THROW(enumerate_bipartitions(1, EnumerationMode::kFull), InvalidArgument);
  EXPECT_THROW(enumerate_bipartitions(63, EnumerationMode::kFull), InvalidArgument);
}

TEST(EnumerationMode, ParsesNames) {
  EXPECT_EQ(parse_enumeration_mode("full"), EnumerationMode::kFull);
  EXPECT_EQ(parse_enumeration_mode("pairs"), EnumerationMode::kDisjointPairs);
  EXPECT_THROW(parse_enumeration_mode("some"), InvalidArgument);
}

TEST(ModeMask, RoundTrip) {
  EXPECT_EQ(mask_of({0, 3}), 0b1001u);
  EXPECT_EQ(modes_of(0b1001u), (ModeGroup{0, 3}));
}

}  // namespace
}  // namespace gsteer
