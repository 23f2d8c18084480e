#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixfractal/aggregation.hpp"
#include "mixfractal/diagram.hpp"
#include "mixfractal/trace.hpp"

namespace mixfractal {

inline constexpr double kNearZeroCumulant = 1e-12;

// |k_m| below this many normal-theory standard errors is indistinguishable
// from a Gaussian (zero) cumulant. Applies to orders >= 3 only.
inline constexpr double kNearZeroStderrs = 3.0;

/// Unbiased k-statistic of order 2, 3 or 4.
double sample_cumulant(std::span<const double> values, int order);
double sample_cumulant(const TraceSeries& series, int order);

/// Standard error of k_order for a Gaussian sample of size n whose variance
/// is k2. Order 2 uses the same normal theory for completeness.
double gaussian_kstat_stderr(int order, std::size_t n, double k2);

enum class RowStatus { admitted, near_zero, too_few_blocks };

struct CumulantRow {
  int order = 2;
  std::size_t block_size = 1;
  std::size_t block_count = 0;
  double cumulant = 0.0;  // signed k-statistic
  RowStatus status = RowStatus::admitted;

  double modulus() const;
  bool admitted() const { return status == RowStatus::admitted; }
};

struct CumulantScalingTable {
  std::vector<int> orders;
  std::vector<CumulantRow> rows;  // grouped by order, then increasing block size

  /// Admitted rows of one order as (log2 n, log2 |cum|, block count).
  ScalingDiagram diagram(int order) const;
};

/// Aggregates the increments at every ladder level and estimates |cum_m| for
/// each requested order. Rows from fewer than `min_blocks` blocks, with
/// |cum| < 1e-12, or (orders >= 3) statistically indistinguishable from zero
/// are kept but flagged.
CumulantScalingTable cumulant_scan(const TraceSeries& series, const ScaleLadder& ladder,
                                   std::span<const int> orders,
                                   std::size_t min_blocks = kDefaultMinBlocks);

struct UnifractalFit {
  double hurst = 0.0;
  double slope = 0.0;
  double intercept = 0.0;  // c(m), in log2 units
  double residual = 0.0;
  double hurst_stderr = 0.0;
  bool out_of_range = false;  // hurst outside (0, 1)
};

/// Weighted fit of log2|cum_m| = slope * log2 n + c and inversion of
/// slope = m + 2(H - 1).
UnifractalFit fit_unifractal(const ScalingDiagram& diagram);

struct LinearFractalFit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

/// Least squares slope(m) = A m + B over the supplied orders.
LinearFractalFit fit_linear_fractal(const std::map<int, double>& slopes);

struct FractalFitReport {
  std::map<int, UnifractalFit> per_order;
  std::optional<LinearFractalFit> linear;
  double unifractal_hurst = 0.0;  // from the lowest fitted order
  bool consistent = true;         // per-order H agree within 2 standard errors
  std::map<int, std::string> skipped;  // order -> reason it was not fitted
};

/// Per-order unifractal fits plus the linear-fractal fit across the orders
/// that had at least three admitted points.
FractalFitReport fractal_fit_report(const std::map<int, ScalingDiagram>& diagrams);

}  // namespace mixfractal
