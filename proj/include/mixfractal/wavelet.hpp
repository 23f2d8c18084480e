#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mixfractal/diagram.hpp"
#include "mixfractal/trace.hpp"

namespace mixfractal {

enum class Wavelet { haar, d4 };

// Octaves keeping fewer detail coefficients than this are not regressed on.
inline constexpr std::size_t kMinOctaveCoefficients = 8;

struct OctaveVariance {
  int octave = 1;
  double variance = 0.0;  // mean squared detail coefficient
  std::size_t coefficient_count = 0;
  bool admitted = true;
};

/// Periodised orthonormal pyramid. details[j-1] holds octave j.
struct WaveletDecomposition {
  std::vector<std::vector<double>> details;
  std::vector<double> approximation;
};

/// Largest octave whose detail count stays >= kMinOctaveCoefficients.
int default_max_octave(std::size_t length);

/// Runs `max_octave` pyramid steps on the first multiple of 2^max_octave
/// samples. Throws SizeError if the series is shorter than 2^(max_octave+2).
WaveletDecomposition pyramid_transform(const TraceSeries& series, Wavelet wavelet,
                                       int max_octave);

std::vector<OctaveVariance> dwt_detail_variances(const TraceSeries& series, Wavelet wavelet,
                                                 int max_octave);

/// Points (j, log2 Var, coefficient count) for admitted octaves. Needs at
/// least three.
ScalingDiagram logscale_diagram(const std::vector<OctaveVariance>& variances);

struct HurstEstimate {
  double hurst = 0.0;
  bool out_of_range = false;
};

/// Increments: slope = 2H - 1. Cumulative paths: slope = 2H + 1.
HurstEstimate hurst_from_slope(double slope, SeriesKind kind);

/// Detail variance of a unit-variance fGn at octave 1, divided by
/// 2^(2H-1): the prefactor c in Var(d_j) ~ c 2^{j(2H-1)}. Exact for Haar.
double fgn_octave_prefactor(double hurst, Wavelet wavelet);

}  // namespace mixfractal
