#include "mixfractal/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "mixfractal/error.hpp"
#include "mixfractal/wavelet.hpp"

namespace mixfractal {
namespace {

void check_prediction_inputs(double large_prefactor, double small_prefactor, double h1,
                             double h2) {
  if (!(small_prefactor > 0.0) || !std::isfinite(large_prefactor)) {
    throw DomainError("crossover prefactors must be positive and finite");
  }
  if (!(h1 < h2)) {
    std::ostringstream msg;
    msg << "crossover needs H1 < H2, got H1=" << h1 << " H2=" << h2;
    throw OrderingError(msg.str());
  }
  if (!(large_prefactor > small_prefactor)) {
    std::ostringstream msg;
    msg << "prefactor of the low-H component (" << large_prefactor
        << ") does not exceed that of the high-H component (" << small_prefactor
        << "); the gentle regime never dominates";
    throw NoCrossoverError(msg.str());
  }
}

}  // namespace

CrossoverPrediction predict_crossover_cumulant(double c1, double c2, double h1, double h2,
                                               int m) {
  check_prediction_inputs(c1, c2, h1, h2);
  CrossoverPrediction p;
  p.log2_break = std::log2(c1 / c2) / (2.0 * (h2 - h1));
  p.small_scale_slope = m + 2.0 * (h1 - 1.0);
  p.large_scale_slope = m + 2.0 * (h2 - 1.0);
  return p;
}

CrossoverPrediction predict_crossover_wavelet(double c3, double c4, double h1, double h2,
                                              SeriesKind kind) {
  check_prediction_inputs(c3, c4, h1, h2);
  const double offset = kind == SeriesKind::cumulative ? 1.0 : -1.0;
  CrossoverPrediction p;
  p.log2_break = std::log2(c3 / c4) / (2.0 * (h2 - h1));
  p.small_scale_slope = 2.0 * h1 + offset;
  p.large_scale_slope = 2.0 * h2 + offset;
  return p;
}

SegmentedFit fit_segmented(const ScalingDiagram& diagram) {
  validate(diagram);
  const std::size_t n = diagram.size();
  if (n < 5) {
    throw InsufficientDataError("segmented fit needs at least 5 admitted points, got " +
                                std::to_string(n));
  }
  const std::span<const DiagramPoint> points(diagram.points);

  SegmentedFit best;
  best.single_line_sse = fit_line(points).sse;
  bool have_best = false;
  LineFit best_low, best_high;
  // Splits whose SSE differs by less than this are ties.
  const double tie = 1e-12 * (1.0 + best.single_line_sse);

  for (std::size_t k = 2; k + 2 <= n; ++k) {
    const LineFit low = fit_line(points.first(k));
    const LineFit high = fit_line(points.subspan(k));
    const double sse = low.sse + high.sse;
    if (!have_best || sse < best.sse - tie) {
      have_best = true;
      best.break_index = k;
      best.sse = sse;
      best_low = low;
      best_high = high;
    }
  }

  best.slope_low = best_low.slope;
  best.intercept_low = best_low.intercept;
  best.slope_high = best_high.slope;
  best.intercept_high = best_high.intercept;

  const double left = points[best.break_index - 1].log2_scale;
  const double right = points[best.break_index].log2_scale;
  const double dslope = best.slope_low - best.slope_high;
  double meet = 0.5 * (left + right);
  if (std::abs(dslope) > 1e-12) meet = (best.intercept_high - best.intercept_low) / dslope;
  best.log2_break = std::clamp(meet, left, right);
  // Keep the invariant sse <= single_line_sse against rounding.
  best.sse = std::min(best.sse, best.single_line_sse);
  return best;
}

double SlopeConvention::hurst(double slope) const {
  if (domain == Domain::cumulant) return (slope - order) / 2.0 + 1.0;
  return hurst_from_slope(slope, kind).hurst;
}

CrossoverReport crossover_report(const ScalingDiagram& diagram, const SlopeConvention& convention,
                                 const std::optional<CrossoverPrediction>& prediction,
                                 const CrossoverOptions& options) {
  CrossoverReport report;
  report.fit = fit_segmented(diagram);
  // A split that gains nothing beyond rounding over one line scores 1.
  const double gain = report.fit.single_line_sse - report.fit.sse;
  report.sse_ratio = gain > 1e-12 * (1.0 + report.fit.single_line_sse)
                         ? report.fit.sse / report.fit.single_line_sse
                         : 1.0;
  report.significant = report.sse_ratio < options.significance_ratio &&
                       report.fit.slope_high > report.fit.slope_low;
  report.hurst_low = convention.hurst(report.fit.slope_low);
  report.hurst_high = convention.hurst(report.fit.slope_high);
  report.single_line_hurst = convention.hurst(fit_line(diagram.points).slope);
  report.prediction = prediction;
  if (prediction) report.break_deviation = std::abs(report.fit.log2_break - prediction->log2_break);
  return report;
}

}  // namespace mixfractal
