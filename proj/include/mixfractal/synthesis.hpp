#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mixfractal/trace.hpp"

namespace mixfractal {

enum class Marginal { gaussian, chi_squared };

struct HurstComponent {
  double hurst = 0.5;
  double weight = 1.0;  // amplitude lambda_i; the component variance is weight^2
};

/// Recipe for a mixed-fractal flow: Z(k) = sum_i weight_i * X_i(k) with each
/// X_i an independent unit-variance fGn of exponent hurst_i.
struct FlowSpec {
  std::vector<HurstComponent> components;
  std::size_t length = 0;
  Marginal marginal = Marginal::gaussian;
  std::uint64_t seed = 0;
};

/// Throws DomainError unless: at least one component, every hurst in (0,1),
/// every weight > 0, hurst strictly increasing, length a power of two >= 256.
void validate(const FlowSpec& spec);

/// Exact autocovariance of unit-variance fractional Gaussian noise,
/// 0.5 * (|k+1|^2H - 2|k|^2H + |k-1|^2H).
double fgn_autocovariance(double hurst, std::uint64_t lag);

/// 64-bit avalanche mix of (seed, index); used for component and replica
/// sub-seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Standard normal variates from mt19937_64 through Box-Muller. The mapping
/// from engine output to doubles is fixed here, so streams are identical on
/// every conforming platform.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed);

  double next();

 private:
  double uniform_open();  // (0, 1]

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Circulant-embedding (Davies-Harte) synthesis of unit-variance fGn.
/// `length` must be a power of two. Negative embedding eigenvalues above
/// -1e-8 * max eigenvalue are clamped to zero; anything more negative throws
/// SynthesisError.
TraceSeries synthesize_fgn(double hurst, std::size_t length, std::uint64_t seed);

/// Weighted sum of independent components. Component i uses
/// derive_seed(spec.seed, i). In chi-squared mode each component sample x is
/// mapped to (x^2 - 1) / sqrt(2) before weighting.
TraceSeries compose_mixture(const FlowSpec& spec);

}  // namespace mixfractal
