#pragma once

#include <cstddef>
#include <optional>

#include "mixfractal/diagram.hpp"
#include "mixfractal/trace.hpp"

namespace mixfractal {

struct CrossoverPrediction {
  double log2_break = 0.0;
  double small_scale_slope = 0.0;
  double large_scale_slope = 0.0;
};

/// Solves c1 n^{m+2(H1-1)} = c2 n^{m+2(H2-1)} for n. Requires c1 > c2 > 0 and
/// H1 < H2.
CrossoverPrediction predict_crossover_cumulant(double c1, double c2, double h1, double h2,
                                               int m);

/// Octave where c3 2^{j(2H1+s)} = c4 2^{j(2H2+s)}, s = +1 for cumulative
/// input and -1 for increments.
CrossoverPrediction predict_crossover_wavelet(double c3, double c4, double h1, double h2,
                                              SeriesKind kind = SeriesKind::increments);

struct SegmentedFit {
  std::size_t break_index = 0;  // first point of the high-scale segment
  double log2_break = 0.0;
  double slope_low = 0.0;
  double intercept_low = 0.0;
  double slope_high = 0.0;
  double intercept_high = 0.0;
  double sse = 0.0;
  double single_line_sse = 0.0;
};

/// Exhaustive two-segment weighted least squares over every split leaving at
/// least two points per side. Ties go to the smaller break index.
SegmentedFit fit_segmented(const ScalingDiagram& diagram);

/// Maps a diagram slope to a Hurst exponent.
struct SlopeConvention {
  enum class Domain { cumulant, wavelet } domain = Domain::cumulant;
  int order = 2;
  SeriesKind kind = SeriesKind::increments;

  static SlopeConvention cumulant(int order) { return {Domain::cumulant, order, {}}; }
  static SlopeConvention wavelet(SeriesKind kind) { return {Domain::wavelet, 0, kind}; }

  double hurst(double slope) const;
};

struct CrossoverOptions {
  double significance_ratio = 0.5;  // segmented SSE / single-line SSE
};

struct CrossoverReport {
  SegmentedFit fit;
  double sse_ratio = 1.0;
  bool significant = false;
  double hurst_low = 0.0;
  double hurst_high = 0.0;
  double single_line_hurst = 0.0;
  std::optional<CrossoverPrediction> prediction;
  std::optional<double> break_deviation;  // |empirical - analytic| log2 break
};

CrossoverReport crossover_report(const ScalingDiagram& diagram, const SlopeConvention& convention,
                                 const std::optional<CrossoverPrediction>& prediction = {},
                                 const CrossoverOptions& options = {});

}  // namespace mixfractal
