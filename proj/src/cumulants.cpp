#include "mixfractal/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixfractal/error.hpp"

namespace mixfractal {
namespace {

void check_order(int order) {
  if (order < 2 || order > 4) {
    throw UnsupportedOrderError("cumulant order " + std::to_string(order) +
                                " is not supported (orders 2..4)");
  }
}

}  // namespace

double sample_cumulant(std::span<const double> values, int order) {
  check_order(order);
  const std::size_t size = values.size();
  if (size < static_cast<std::size_t>(order)) {
    throw InsufficientDataError("k-statistic of order " + std::to_string(order) + " needs at least " +
                                std::to_string(order) + " samples, got " + std::to_string(size));
  }

  // Two-pass central moments; the k-statistics are polynomials in them.
  const double n = static_cast<double>(size);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  switch (order) {
    case 2:
      return n / (n - 1.0) * m2;
    case 3:
      return n * n / ((n - 1.0) * (n - 2.0)) * m3;
    default:
      return n * n * ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2) /
             ((n - 1.0) * (n - 2.0) * (n - 3.0));
  }
}

double sample_cumulant(const TraceSeries& series, int order) {
  return sample_cumulant(std::span<const double>(series.values), order);
}

double gaussian_kstat_stderr(int order, std::size_t size, double k2) {
  check_order(order);
  const double n = static_cast<double>(size);
  switch (order) {
    case 2:
      return std::sqrt(2.0 / (n - 1.0)) * k2;
    case 3:
      return std::sqrt(6.0 * n / ((n - 1.0) * (n - 2.0))) * std::pow(k2, 1.5);
    default:
      return std::sqrt(24.0 * n * (n - 1.0) * (n - 1.0) /
                       ((n - 3.0) * (n - 2.0) * (n + 3.0) * (n + 5.0))) *
             k2 * k2;
  }
}

double CumulantRow::modulus() const { return std::abs(cumulant); }

ScalingDiagram CumulantScalingTable::diagram(int order) const {
  ScalingDiagram d;
  d.order = order;
  for (const auto& row : rows) {
    if (row.order != order || !row.admitted()) continue;
    d.points.push_back({std::log2(static_cast<double>(row.block_size)), std::log2(row.modulus()),
                        static_cast<double>(row.block_count)});
  }
  return d;
}

CumulantScalingTable cumulant_scan(const TraceSeries& series, const ScaleLadder& ladder,
                                   std::span<const int> orders, std::size_t min_blocks) {
  if (series.kind != SeriesKind::increments) {
    throw KindError("cumulant_scan expects an increments series");
  }
  validate(series);
  for (int m : orders) check_order(m);

  CumulantScalingTable table;
  table.orders.assign(orders.begin(), orders.end());

  // One aggregation per level, shared by all orders.
  std::vector<TraceSeries> levels;
  levels.reserve(ladder.block_sizes.size());
  for (std::size_t block : ladder.block_sizes) levels.push_back(aggregate(series, block));

  for (int m : orders) {
    for (std::size_t level = 0; level < levels.size(); ++level) {
      const auto& agg = levels[level];
      CumulantRow row;
      row.order = m;
      row.block_size = ladder.block_sizes[level];
      row.block_count = agg.size();
      if (agg.size() < std::max(min_blocks, static_cast<std::size_t>(m))) {
        row.status = RowStatus::too_few_blocks;
        if (agg.size() >= static_cast<std::size_t>(m)) row.cumulant = sample_cumulant(agg, m);
        table.rows.push_back(row);
        continue;
      }
      row.cumulant = sample_cumulant(agg, m);
      if (!(row.modulus() >= kNearZeroCumulant) || !std::isfinite(row.cumulant)) {
        row.status = RowStatus::near_zero;
      } else if (m >= 3) {
        const double k2 = sample_cumulant(agg, 2);
        if (row.modulus() < kNearZeroStderrs * gaussian_kstat_stderr(m, agg.size(), k2)) {
          row.status = RowStatus::near_zero;
        }
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

UnifractalFit fit_unifractal(const ScalingDiagram& diagram) {
  if (diagram.size() < 3) {
    throw InsufficientDataError("unifractal fit of order " + std::to_string(diagram.order) +
                                " needs at least 3 admitted points, got " +
                                std::to_string(diagram.size()));
  }
  check_order(diagram.order);
  const LineFit line = fit_line(diagram.points);
  UnifractalFit fit;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.residual = line.sse;
  fit.hurst = (line.slope - diagram.order) / 2.0 + 1.0;
  fit.hurst_stderr = line.slope_stderr / 2.0;
  fit.out_of_range = !(fit.hurst > 0.0 && fit.hurst < 1.0);
  return fit;
}

LinearFractalFit fit_linear_fractal(const std::map<int, double>& slopes) {
  if (slopes.size() < 2) {
    throw InsufficientDataError("linear-fractal fit needs slopes for at least 2 orders");
  }
  std::vector<double> m, s, w(slopes.size(), 1.0);
  for (const auto& [order, slope] : slopes) {
    m.push_back(order);
    s.push_back(slope);
  }
  const LineFit line = fit_line(m, s, w);
  return {line.slope, line.intercept, line.sse};
}

FractalFitReport fractal_fit_report(const std::map<int, ScalingDiagram>& diagrams) {
  FractalFitReport report;
  std::map<int, double> slopes;
  for (const auto& [order, diagram] : diagrams) {
    if (diagram.size() < 3) {
      report.skipped[order] = "only " + std::to_string(diagram.size()) + " admitted points";
      continue;
    }
    const auto fit = fit_unifractal(diagram);
    report.per_order[order] = fit;
    slopes[order] = fit.slope;
  }
  if (!report.per_order.empty()) report.unifractal_hurst = report.per_order.begin()->second.hurst;
  if (slopes.size() >= 2) report.linear = fit_linear_fractal(slopes);

  for (auto a = report.per_order.begin(); a != report.per_order.end(); ++a) {
    for (auto b = std::next(a); b != report.per_order.end(); ++b) {
      const double spread = std::abs(a->second.hurst - b->second.hurst);
      const double bound = 2.0 * std::hypot(a->second.hurst_stderr, b->second.hurst_stderr);
      if (spread > bound + 1e-9) report.consistent = false;
    }
  }
  return report;
}

}  // namespace mixfractal
