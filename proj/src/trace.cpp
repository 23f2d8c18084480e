#include "mixfractal/trace.hpp"

#include <cmath>
#include <string>

#include "mixfractal/error.hpp"

namespace mixfractal {

std::string_view to_string(SeriesKind kind) {
  return kind == SeriesKind::increments ? "increments" : "cumulative";
}

void validate(const TraceSeries& series) {
  if (series.values.empty()) throw DomainError("series is empty");
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (!std::isfinite(series.values[i])) {
      throw DomainError("series value at index " + std::to_string(i) + " is not finite");
    }
  }
}

TraceSeries cumulate(const TraceSeries& series) {
  if (series.kind != SeriesKind::increments) {
    throw KindError("cumulate expects an increments series");
  }
  TraceSeries out{series.values, SeriesKind::cumulative, series.meta};
  double running = 0.0;
  for (double& v : out.values) {
    running += v;
    v = running;
  }
  return out;
}

TraceSeries difference(const TraceSeries& series) {
  if (series.kind != SeriesKind::cumulative) {
    throw KindError("difference expects a cumulative series");
  }
  TraceSeries out{{}, SeriesKind::increments, series.meta};
  if (series.values.size() > 1) {
    out.values.reserve(series.values.size() - 1);
    for (std::size_t k = 0; k + 1 < series.values.size(); ++k) {
      out.values.push_back(series.values[k + 1] - series.values[k]);
    }
  }
  return out;
}

}  // namespace mixfractal
