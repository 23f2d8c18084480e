#include "mixfractal/wavelet.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "mixfractal/error.hpp"
#include "mixfractal/synthesis.hpp"

namespace mixfractal {
namespace {

std::span<const double> lowpass(Wavelet wavelet) {
  static const std::array<double, 2> haar{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
  static const std::array<double, 4> d4 = [] {
    const double s3 = std::sqrt(3.0);
    const double norm = 4.0 * std::numbers::sqrt2;
    return std::array<double, 4>{(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm,
                                 (1.0 - s3) / norm};
  }();
  if (wavelet == Wavelet::haar) return haar;
  return d4;
}

// Quadrature mirror: g[k] = (-1)^k h[L-1-k].
std::vector<double> highpass(std::span<const double> h) {
  std::vector<double> g(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    g[k] = sign * h[h.size() - 1 - k];
  }
  return g;
}

// One periodised analysis step on an even-length signal.
void analysis_step(std::span<const double> signal, std::span<const double> h,
                   std::span<const double> g, std::vector<double>& approx,
                   std::vector<double>& detail) {
  const std::size_t n = signal.size();
  const std::size_t half = n / 2;
  approx.assign(half, 0.0);
  detail.assign(half, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    double a = 0.0, d = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
      const double x = signal[(2 * i + k) % n];
      a += h[k] * x;
      d += g[k] * x;
    }
    approx[i] = a;
    detail[i] = d;
  }
}

}  // namespace

int default_max_octave(std::size_t length) {
  int j = 0;
  while ((length >> (j + 1)) >= kMinOctaveCoefficients) ++j;
  return j;
}

WaveletDecomposition pyramid_transform(const TraceSeries& series, Wavelet wavelet,
                                       int max_octave) {
  if (max_octave < 1) throw SizeError("max_octave must be at least 1");
  if (max_octave > 60 || series.size() < (std::size_t{1} << (max_octave + 2))) {
    throw SizeError("series of length " + std::to_string(series.size()) +
                    " is too short for " + std::to_string(max_octave) + " octaves");
  }
  validate(series);

  const std::size_t usable = series.size() >> max_octave << max_octave;
  const auto h = lowpass(wavelet);
  const auto g = highpass(h);

  WaveletDecomposition out;
  out.details.resize(static_cast<std::size_t>(max_octave));
  std::vector<double> current(series.values.begin(), series.values.begin() + usable);
  std::vector<double> next;
  for (int j = 1; j <= max_octave; ++j) {
    analysis_step(current, h, g, next, out.details[j - 1]);
    current.swap(next);
  }
  out.approximation = std::move(current);
  return out;
}

std::vector<OctaveVariance> dwt_detail_variances(const TraceSeries& series, Wavelet wavelet,
                                                 int max_octave) {
  const auto decomposition = pyramid_transform(series, wavelet, max_octave);
  double mean_square = 0.0;
  for (double v : series.values) mean_square += v * v;
  mean_square /= static_cast<double>(series.size());
  // Detail energy this far below the signal is filter rounding, not signal.
  const double floor = 1e-24 * mean_square;

  std::vector<OctaveVariance> out;
  out.reserve(decomposition.details.size());
  for (std::size_t i = 0; i < decomposition.details.size(); ++i) {
    const auto& d = decomposition.details[i];
    double energy = 0.0;
    for (double c : d) energy += c * c;
    OctaveVariance ov;
    ov.octave = static_cast<int>(i + 1);
    ov.coefficient_count = d.size();
    ov.variance = energy / static_cast<double>(d.size());
    if (ov.variance <= floor) ov.variance = 0.0;
    ov.admitted = ov.variance > 0.0 && d.size() >= kMinOctaveCoefficients;
    out.push_back(ov);
  }
  return out;
}

ScalingDiagram logscale_diagram(const std::vector<OctaveVariance>& variances) {
  ScalingDiagram diagram;
  for (const auto& ov : variances) {
    if (!ov.admitted) continue;
    diagram.points.push_back({static_cast<double>(ov.octave), std::log2(ov.variance),
                              static_cast<double>(ov.coefficient_count)});
  }
  if (diagram.size() < 3) {
    throw InsufficientDataError("logscale diagram needs at least 3 octaves with nonzero variance, got " +
                                std::to_string(diagram.size()));
  }
  return diagram;
}

HurstEstimate hurst_from_slope(double slope, SeriesKind kind) {
  HurstEstimate est;
  est.hurst = kind == SeriesKind::increments ? (slope + 1.0) / 2.0 : (slope - 1.0) / 2.0;
  est.out_of_range = !(est.hurst > 0.0 && est.hurst < 1.0);
  return est;
}

double fgn_octave_prefactor(double hurst, Wavelet wavelet) {
  const auto g = highpass(lowpass(wavelet));
  double variance = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      const auto lag = a > b ? a - b : b - a;
      variance += g[a] * g[b] * fgn_autocovariance(hurst, lag);
    }
  }
  return variance / std::pow(2.0, 2.0 * hurst - 1.0);
}

}  // namespace mixfractal
