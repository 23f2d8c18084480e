#include "mixfractal/diagram.hpp"

#include <cmath>
#include <vector>

#include "mixfractal/error.hpp"

namespace mixfractal {

void validate(const ScalingDiagram& diagram) {
  for (std::size_t i = 0; i < diagram.points.size(); ++i) {
    const auto& p = diagram.points[i];
    if (!std::isfinite(p.log2_scale) || !std::isfinite(p.log2_statistic) ||
        !std::isfinite(p.weight) || !(p.weight > 0.0)) {
      throw DomainError("diagram point " + std::to_string(i) + " is not finite or has no weight");
    }
    if (i > 0 && !(diagram.points[i - 1].log2_scale < p.log2_scale)) {
      throw DomainError("diagram abscissae are not strictly increasing");
    }
  }
}

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> w) {
  const std::size_t n = x.size();
  if (y.size() != n || w.size() != n) throw SizeError("fit_line: mismatched input lengths");
  if (n < 2) throw InsufficientDataError("a line fit needs at least 2 points");

  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double xm = sx / sw;
  const double ym = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += w[i] * (x[i] - xm) * (x[i] - xm);
    sxy += w[i] * (x[i] - xm) * (y[i] - ym);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("a line fit needs distinct abscissae");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    fit.sse += w[i] * r * r;
  }
  if (n > 2) {
    // Weights are treated as relative; residual scale comes from the data.
    fit.slope_stderr = std::sqrt(fit.sse / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

LineFit fit_line(std::span<const DiagramPoint> points) {
  std::vector<double> x, y, w;
  x.reserve(points.size());
  y.reserve(points.size());
  w.reserve(points.size());
  for (const auto& p : points) {
    x.push_back(p.log2_scale);
    y.push_back(p.log2_statistic);
    w.push_back(p.weight);
  }
  return fit_line(x, y, w);
}

}  // namespace mixfractal
