#include "mixfractal/synthesis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>

#include "mixfractal/error.hpp"

namespace mixfractal {
namespace {

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw SynthesisError("fftw_malloc failed");
  return FftwBuffer<T>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {
    if (plan_ == nullptr) throw SynthesisError("FFTW could not create a plan");
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    std::ostringstream msg;
    msg << "Hurst exponent " << hurst << " is outside (0, 1)";
    throw DomainError(msg.str());
  }
}

bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

}  // namespace

void validate(const FlowSpec& spec) {
  if (spec.components.empty()) throw DomainError("flow has no components");
  if (!is_power_of_two(spec.length) || spec.length < 256) {
    throw DomainError("flow length " + std::to_string(spec.length) +
                      " must be a power of two >= 256");
  }
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    const auto& c = spec.components[i];
    check_hurst(c.hurst);
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
      throw DomainError("component " + std::to_string(i) + " weight must be positive");
    }
    if (i > 0 && !(spec.components[i - 1].hurst < c.hurst)) {
      throw DomainError("component Hurst exponents must be strictly increasing");
    }
  }
}

double fgn_autocovariance(double hurst, std::uint64_t lag) {
  check_hurst(hurst);
  const double k = static_cast<double>(lag);
  const double two_h = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
                std::pow(std::abs(k - 1.0), two_h));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GaussianSource::GaussianSource(std::uint64_t seed) : engine_(seed) {}

double GaussianSource::uniform_open() {
  // 53 random bits mapped onto (0, 1].
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform_open();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

TraceSeries synthesize_fgn(double hurst, std::size_t length, std::uint64_t seed) {
  check_hurst(hurst);
  if (!is_power_of_two(length)) {
    throw DomainError("synthesis length " + std::to_string(length) + " is not a power of two");
  }

  // Circulant of size 2N whose first row is gamma(0..N), gamma(N-1..1).
  const std::size_t n = length;
  const std::size_t m = 2 * n;
  const std::size_t half = n + 1;  // r2c output length

  auto row = fftw_buffer<double>(m);
  auto spectrum = fftw_buffer<fftw_complex>(half);
  for (std::size_t k = 0; k <= n; ++k) row[k] = fgn_autocovariance(hurst, k);
  for (std::size_t k = 1; k < n; ++k) row[m - k] = row[k];

  {
    std::unique_lock lock(planner_mutex());
    Plan forward(fftw_plan_dft_r2c_1d(static_cast<int>(m), row.get(), spectrum.get(),
                                      FFTW_ESTIMATE));
    lock.unlock();
    forward.execute();
  }

  std::vector<double> eigen(half);
  double max_eigen = 0.0;
  double min_eigen = 0.0;
  std::size_t min_index = 0;
  for (std::size_t k = 0; k < half; ++k) {
    eigen[k] = spectrum[k][0];
    max_eigen = std::max(max_eigen, eigen[k]);
    if (eigen[k] < min_eigen) {
      min_eigen = eigen[k];
      min_index = k;
    }
  }
  if (min_eigen < -1e-8 * max_eigen) {
    std::ostringstream msg;
    msg << "circulant embedding eigenvalue " << min_index << " = " << min_eigen
        << " is negative beyond tolerance (max eigenvalue " << max_eigen << ")";
    throw SynthesisError(msg.str());
  }

  // Hermitian spectrum W with Var(Re), Var(Im) chosen so that the real
  // transform has covariance exactly gamma.
  GaussianSource gauss(seed);
  const double md = static_cast<double>(m);
  for (std::size_t k = 0; k < half; ++k) {
    const double lambda = std::max(eigen[k], 0.0);
    if (k == 0 || k == n) {
      spectrum[k][0] = std::sqrt(lambda / md) * gauss.next();
      spectrum[k][1] = 0.0;
    } else {
      const double scale = std::sqrt(lambda / (2.0 * md));
      spectrum[k][0] = scale * gauss.next();
      spectrum[k][1] = scale * gauss.next();
    }
  }

  auto path = fftw_buffer<double>(m);
  {
    std::unique_lock lock(planner_mutex());
    Plan backward(fftw_plan_dft_c2r_1d(static_cast<int>(m), spectrum.get(), path.get(),
                                       FFTW_ESTIMATE));
    lock.unlock();
    backward.execute();
  }

  TraceSeries out;
  out.kind = SeriesKind::increments;
  out.values.assign(path.get(), path.get() + n);
  out.meta["generator"] = "fgn-circulant-embedding";
  out.meta["hurst"] = std::to_string(hurst);
  out.meta["seed"] = std::to_string(seed);
  return out;
}

TraceSeries compose_mixture(const FlowSpec& spec) {
  validate(spec);
  TraceSeries out;
  out.kind = SeriesKind::increments;
  out.values.assign(spec.length, 0.0);

  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    const auto& component = spec.components[i];
    auto x = synthesize_fgn(component.hurst, spec.length, derive_seed(spec.seed, i));
    for (std::size_t k = 0; k < spec.length; ++k) {
      double sample = x.values[k];
      if (spec.marginal == Marginal::chi_squared) {
        sample = (sample * sample - 1.0) / std::numbers::sqrt2;
      }
      out.values[k] += component.weight * sample;
    }
  }

  out.meta["generator"] = "mixture";
  out.meta["components"] = std::to_string(spec.components.size());
  out.meta["seed"] = std::to_string(spec.seed);
  out.meta["marginal"] = spec.marginal == Marginal::gaussian ? "gaussian" : "chi-squared";
  return out;
}

}  // namespace mixfractal
