#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "mixfractal/aggregation.hpp"
#include "mixfractal/error.hpp"
#include "mixfractal/synthesis.hpp"

using namespace mixfractal;

namespace {

TraceSeries series_of(std::vector<double> v) { return {std::move(v), SeriesKind::increments, {}}; }

TraceSeries random_integers(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-50, 50);
  TraceSeries s;
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(d(rng));
  return s;
}

}  // namespace

TEST(Aggregate, Examples) {
  EXPECT_EQ(aggregate(series_of({1, 2, 3, 4}), 2).values, (std::vector<double>{3, 7}));
  EXPECT_EQ(aggregate(series_of({1, 2, 3, 4, 5}), 2).values, (std::vector<double>{3, 7}));
  const auto s = series_of({4, -1, 2.5});
  EXPECT_EQ(aggregate(s, 1).values, s.values);
}

TEST(Aggregate, Errors) {
  EXPECT_THROW(aggregate(series_of({1, 2}), 3), SizeError);
  EXPECT_THROW(aggregate(series_of({1, 2}), 0), SizeError);
  TraceSeries cum{{1, 2}, SeriesKind::cumulative, {}};
  EXPECT_THROW(aggregate(cum, 1), KindError);
}

TEST(Aggregate, PreservesSumOfCoveredSamples) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const std::size_t block = 1 + rng() % n;
    const auto s = random_integers(rng, n);
    const auto agg = aggregate(s, block);
    ASSERT_EQ(agg.size(), n / block);
    const double covered = std::accumulate(s.values.begin(), s.values.begin() + agg.size() * block, 0.0);
    EXPECT_EQ(std::accumulate(agg.values.begin(), agg.values.end(), 0.0), covered);
  }
}

TEST(Aggregate, ComposesMultiplicatively) {
  std::mt19937_64 rng(12);
  for (std::size_t a : {1u, 2u, 3u, 4u}) {
    for (std::size_t b : {1u, 2u, 5u}) {
      const auto s = random_integers(rng, a * b * 7);
      EXPECT_EQ(aggregate(aggregate(s, a), b).values, aggregate(s, a * b).values);
    }
  }
}

TEST(Aggregate, WhiteNoiseVarianceGrowsLinearly) {
  const std::size_t length = 1 << 16;
  const auto s = synthesize_fgn(0.5, length, 21);
  for (std::size_t n : {1u, 8u, 64u, 512u}) {
    const auto agg = aggregate(s, n);
    double ms = 0.0;
    for (double v : agg.values) ms += v * v;
    ms /= static_cast<double>(agg.size());
    EXPECT_NEAR(ms / static_cast<double>(n), 1.0, 5.0 / std::sqrt(static_cast<double>(length / n)));
  }
}

TEST(DyadicLadder, Examples) {
  EXPECT_EQ(dyadic_ladder(1024, 16).block_sizes, (std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64}));
  EXPECT_EQ(dyadic_ladder(32, 16).block_sizes, (std::vector<std::size_t>{1, 2}));

  const auto big = dyadic_ladder(1 << 18, 16);
  ASSERT_EQ(big.block_sizes.size(), 15u);
  EXPECT_EQ(big.block_sizes.back(), std::size_t{1} << 14);
}

TEST(DyadicLadder, EveryLevelKeepsMinBlocks) {
  for (std::size_t length : {32u, 33u, 100u, 1000u, 4097u}) {
    const auto ladder = dyadic_ladder(length, 16);
    for (std::size_t b : ladder.block_sizes) EXPECT_GE(length / b, 16u);
    EXPECT_LT(length / (ladder.block_sizes.back() * 2), 16u);
  }
}

TEST(DyadicLadder, TooShortIsInsufficient) {
  EXPECT_THROW(dyadic_ladder(31, 16), InsufficientDataError);
  EXPECT_THROW(dyadic_ladder(10, 16), InsufficientDataError);
}
