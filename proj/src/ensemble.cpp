#include "mixfractal/ensemble.hpp"

#include <cmath>

#include "mixfractal/error.hpp"

namespace mixfractal {

EnsembleDiagram average_diagrams(const std::vector<ScalingDiagram>& replicas) {
  if (replicas.empty()) throw InsufficientDataError("no replica diagrams to average");

  EnsembleDiagram out;
  out.replicas = replicas.size();
  out.mean.order = replicas.front().order;
  const double r = static_cast<double>(replicas.size());

  for (const auto& anchor : replicas.front().points) {
    std::vector<const DiagramPoint*> column;
    column.reserve(replicas.size());
    for (const auto& replica : replicas) {
      for (const auto& p : replica.points) {
        if (p.log2_scale == anchor.log2_scale) {
          column.push_back(&p);
          break;
        }
      }
    }
    if (column.size() != replicas.size()) continue;

    double mean = 0.0, weight = 0.0;
    for (const auto* p : column) {
      mean += p->log2_statistic;
      weight += p->weight;
    }
    mean /= r;
    weight /= r;
    double stderr_ = 0.0;
    if (replicas.size() > 1) {
      double ss = 0.0;
      for (const auto* p : column) ss += (p->log2_statistic - mean) * (p->log2_statistic - mean);
      stderr_ = std::sqrt(ss / (r - 1.0) / r);
    }
    out.mean.points.push_back({anchor.log2_scale, mean, weight});
    out.stderrs.push_back(stderr_);
  }
  return out;
}

}  // namespace mixfractal
