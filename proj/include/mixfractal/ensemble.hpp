#pragma once

#include <vector>

#include "mixfractal/diagram.hpp"

namespace mixfractal {

/// Pointwise mean of log-domain statistics across replicas, with the
/// standard error of that mean.
struct EnsembleDiagram {
  ScalingDiagram mean;
  std::vector<double> stderrs;  // one per mean point; all zero for one replica
  std::size_t replicas = 0;
};

/// Keeps only the abscissae present in every replica. Weights are averaged.
EnsembleDiagram average_diagrams(const std::vector<ScalingDiagram>& replicas);

}  // namespace mixfractal
