#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mixfractal {

enum class SeriesKind { increments, cumulative };

std::string_view to_string(SeriesKind kind);

/// A finite real-valued series. Increments X(k) and their running sum Y(k)
/// are distinguished by `kind`; the operations below refuse the wrong one.
struct TraceSeries {
  std::vector<double> values;
  SeriesKind kind = SeriesKind::increments;
  std::map<std::string, std::string> meta;

  std::size_t size() const noexcept { return values.size(); }
};

/// Throws DomainError if the series is empty or holds a non-finite value.
void validate(const TraceSeries& series);

/// Running sum: out[k] = in[0] + ... + in[k]. Requires kind=increments.
TraceSeries cumulate(const TraceSeries& series);

/// First differences: out[k] = in[k+1] - in[k], one sample shorter.
/// Requires kind=cumulative.
TraceSeries difference(const TraceSeries& series);

}  // namespace mixfractal
