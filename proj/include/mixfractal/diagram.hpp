#pragma once

#include <span>
#include <vector>

namespace mixfractal {

struct DiagramPoint {
  double log2_scale = 0.0;
  double log2_statistic = 0.0;
  double weight = 1.0;
};

/// Log-log scaling diagram for one statistic. `order` is the cumulant order
/// for cumulant diagrams and 0 for wavelet logscale diagrams.
struct ScalingDiagram {
  int order = 0;
  std::vector<DiagramPoint> points;  // strictly increasing log2_scale

  std::size_t size() const noexcept { return points.size(); }
};

/// Throws DomainError unless points are finite, weights positive and
/// abscissae strictly increasing.
void validate(const ScalingDiagram& diagram);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double sse = 0.0;           // weighted sum of squared residuals
  double slope_stderr = 0.0;  // zero when fewer than 3 points
};

/// Weighted least squares y = slope * x + intercept. Needs >= 2 points with
/// distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> w);

LineFit fit_line(std::span<const DiagramPoint> points);

}  // namespace mixfractal
