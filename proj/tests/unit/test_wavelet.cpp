#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mixfractal/diagram.hpp"
#include "mixfractal/error.hpp"
#include "mixfractal/synthesis.hpp"
#include "mixfractal/wavelet.hpp"

using namespace mixfractal;

namespace {

TraceSeries series_of(std::vector<double> v) { return {std::move(v), SeriesKind::increments, {}}; }

double energy(const std::vector<double>& v) {
  double e = 0.0;
  for (double x : v) e += x * x;
  return e;
}

double slope_of(const ScalingDiagram& d) { return fit_line(d.points).slope; }

}  // namespace

TEST(DetailVariances, ConstantSeriesIsAnnihilated) {
  for (auto w : {Wavelet::haar, Wavelet::d4}) {
    const auto vars = dwt_detail_variances(series_of(std::vector<double>(256, 3.5)), w, 5);
    ASSERT_EQ(vars.size(), 5u);
    for (const auto& ov : vars) {
      EXPECT_EQ(ov.variance, 0.0);
      EXPECT_FALSE(ov.admitted);
      EXPECT_EQ(ov.coefficient_count, 256u >> ov.octave);
    }
    EXPECT_THROW(logscale_diagram(vars), InsufficientDataError);
  }
}

TEST(DetailVariances, WhiteNoiseIsFlat) {
  const auto s = synthesize_fgn(0.5, 1 << 14, 31);
  for (auto w : {Wavelet::haar, Wavelet::d4}) {
    for (const auto& ov : dwt_detail_variances(s, w, default_max_octave(s.size()))) {
      EXPECT_NEAR(ov.variance, 1.0, 5.0 / std::sqrt(static_cast<double>(ov.coefficient_count)))
          << "octave " << ov.octave;
    }
  }
}

// Direct block-sum evaluation of the orthonormal Haar detail at every
// position: d = (sum of first half - sum of second half) / 2^{j/2}.
TEST(DetailVariances, HaarRampMatchesDirectComputation) {
  const std::size_t n = 256;
  std::vector<double> ramp(n);
  for (std::size_t t = 0; t < n; ++t) ramp[t] = static_cast<double>(t);
  const auto vars = dwt_detail_variances(series_of(ramp), Wavelet::haar, 6);

  for (const auto& ov : vars) {
    const std::size_t block = std::size_t{1} << ov.octave;
    double direct = 0.0;
    for (std::size_t k = 0; k < n / block; ++k) {
      double first = 0.0, second = 0.0;
      for (std::size_t i = 0; i < block / 2; ++i) {
        first += ramp[k * block + i];
        second += ramp[k * block + block / 2 + i];
      }
      const double d = (first - second) / std::sqrt(static_cast<double>(block));
      direct += d * d;
    }
    direct /= static_cast<double>(n / block);
    EXPECT_NEAR(ov.variance, direct, 1e-9 * direct);
    EXPECT_NEAR(ov.variance, std::ldexp(1.0, 3 * ov.octave - 4), 1e-9 * direct);
  }
  EXPECT_NEAR(slope_of(logscale_diagram(vars)), 3.0, 1e-9);
}

TEST(PyramidTransform, ConservesEnergy) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal(0.3, 2.0);
  for (auto w : {Wavelet::haar, Wavelet::d4}) {
    std::vector<double> x(1 << 12);
    for (auto& v : x) v = normal(rng);
    const auto dec = pyramid_transform(series_of(x), w, 9);
    double total = energy(dec.approximation);
    for (const auto& d : dec.details) total += energy(d);
    EXPECT_NEAR(total, energy(x), 1e-8 * energy(x));

    double from_variances = energy(dec.approximation);
    for (const auto& ov : dwt_detail_variances(series_of(x), w, 9)) {
      from_variances += ov.variance * static_cast<double>(ov.coefficient_count);
    }
    EXPECT_NEAR(from_variances, energy(x), 1e-8 * energy(x));
  }
}

TEST(PyramidTransform, CountsHalvePerOctave) {
  const auto s = synthesize_fgn(0.6, 1 << 10, 2);
  const auto vars = dwt_detail_variances(s, Wavelet::d4, 7);
  for (const auto& ov : vars) EXPECT_EQ(ov.coefficient_count, 1024u >> ov.octave);
  EXPECT_EQ(vars.back().coefficient_count, 8u);
  EXPECT_TRUE(vars.back().admitted);
}

TEST(PyramidTransform, TooShortSeriesIsRejected) {
  EXPECT_THROW(dwt_detail_variances(series_of(std::vector<double>(15, 1.0)), Wavelet::haar, 2),
               SizeError);
  EXPECT_THROW(dwt_detail_variances(series_of(std::vector<double>(64, 1.0)), Wavelet::haar, 0),
               SizeError);
}

TEST(PyramidTransform, OctavesWithFewCoefficientsAreNotAdmitted) {
  const auto s = synthesize_fgn(0.5, 256, 3);
  const auto vars = dwt_detail_variances(s, Wavelet::haar, 6);  // top octave keeps 4
  EXPECT_TRUE(vars[4].admitted);
  EXPECT_FALSE(vars[5].admitted);
  EXPECT_EQ(logscale_diagram(vars).size(), 5u);
}

TEST(PyramidTransform, Deterministic) {
  const auto s = synthesize_fgn(0.7, 1 << 12, 8);
  const auto a = logscale_diagram(dwt_detail_variances(s, Wavelet::d4, 9));
  const auto b = logscale_diagram(dwt_detail_variances(s, Wavelet::d4, 9));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.points[i].log2_statistic, b.points[i].log2_statistic);
  }
}

TEST(LogscaleDiagram, ExactPowerLawGivesExactSlope) {
  std::vector<OctaveVariance> vars;
  for (int j = 1; j <= 8; ++j) {
    vars.push_back({j, 3.0 * std::pow(2.0, 0.37 * j), std::size_t{1} << (12 - j), true});
  }
  const auto d = logscale_diagram(vars);
  EXPECT_NEAR(slope_of(d), 0.37, 1e-12);
  EXPECT_EQ(d.points.front().weight, 2048.0);
}

TEST(LogscaleDiagram, NeedsThreeOctaves) {
  std::vector<OctaveVariance> vars{{1, 1.0, 64, true}, {2, 1.0, 32, true}, {3, 0.0, 16, false}};
  EXPECT_THROW(logscale_diagram(vars), InsufficientDataError);
}

TEST(LogscaleDiagram, WhiteNoiseSlopeIsZero) {
  const auto s = synthesize_fgn(0.5, 1 << 16, 12);
  const auto d = logscale_diagram(dwt_detail_variances(s, Wavelet::haar, default_max_octave(s.size())));
  EXPECT_NEAR(slope_of(d), 0.0, 0.1);
}

TEST(LogscaleDiagram, RecoversHurstOverReplicas) {
  for (auto w : {Wavelet::haar, Wavelet::d4}) {
    double slope = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = synthesize_fgn(0.7, 1 << 18, 500 + seed);
      slope += slope_of(logscale_diagram(dwt_detail_variances(s, w, default_max_octave(s.size()))));
    }
    slope /= 10.0;
    EXPECT_NEAR(slope, 0.4, 0.1);
    EXPECT_NEAR(hurst_from_slope(slope, SeriesKind::increments).hurst, 0.7, 0.05);
  }
}

TEST(LogscaleDiagram, VariancesOfIndependentComponentsAdd) {
  const int octaves = 8;
  std::vector<double> mixed(octaves, 0.0), summed(octaves, 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = synthesize_fgn(0.5, 1 << 14, 2 * seed + 700);
    const auto b = synthesize_fgn(0.7, 1 << 14, 2 * seed + 701);
    TraceSeries z{std::vector<double>(a.size()), SeriesKind::increments, {}};
    for (std::size_t i = 0; i < a.size(); ++i) z.values[i] = 2.0 * a.values[i] + b.values[i];
    const auto va = dwt_detail_variances(a, Wavelet::haar, octaves);
    const auto vb = dwt_detail_variances(b, Wavelet::haar, octaves);
    const auto vz = dwt_detail_variances(z, Wavelet::haar, octaves);
    for (int j = 0; j < octaves; ++j) {
      mixed[j] += vz[j].variance;
      summed[j] += 4.0 * va[j].variance + vb[j].variance;
    }
  }
  for (int j = 0; j < octaves; ++j) EXPECT_NEAR(mixed[j] / summed[j], 1.0, 0.05) << "octave " << j + 1;
}

TEST(HurstFromSlope, Inversions) {
  EXPECT_NEAR(hurst_from_slope(0.4, SeriesKind::increments).hurst, 0.7, 1e-15);
  EXPECT_NEAR(hurst_from_slope(2.4, SeriesKind::cumulative).hurst, 0.7, 1e-15);
  EXPECT_DOUBLE_EQ(hurst_from_slope(0.0, SeriesKind::increments).hurst, 0.5);
  EXPECT_FALSE(hurst_from_slope(0.0, SeriesKind::increments).out_of_range);
  EXPECT_TRUE(hurst_from_slope(1.5, SeriesKind::increments).out_of_range);
  EXPECT_TRUE(hurst_from_slope(0.5, SeriesKind::cumulative).out_of_range);
}

TEST(FgnOctavePrefactor, HaarMatchesClosedForm) {
  for (double h : {0.3, 0.5, 0.7, 0.9}) {
    const double octave_one = 1.0 - fgn_autocovariance(h, 1);
    EXPECT_NEAR(fgn_octave_prefactor(h, Wavelet::haar) * std::pow(2.0, 2 * h - 1), octave_one, 1e-14);
  }
  EXPECT_NEAR(fgn_octave_prefactor(0.5, Wavelet::d4), 1.0, 1e-14);
}

TEST(FgnOctavePrefactor, MatchesSimulatedOctaveOne) {
  double var = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    var += dwt_detail_variances(synthesize_fgn(0.8, 1 << 14, 40 + seed), Wavelet::d4, 3)[0].variance;
  }
  var /= 5.0;
  EXPECT_NEAR(var, fgn_octave_prefactor(0.8, Wavelet::d4) * std::pow(2.0, 0.6), 0.03);
}
