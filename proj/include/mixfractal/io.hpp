#pragma once

#include <filesystem>
#include <string>

#include "mixfractal/crossover.hpp"
#include "mixfractal/ensemble.hpp"
#include "mixfractal/trace.hpp"

namespace mixfractal {

/// Reads a one-column (values) or two-column (timestamp, value) CSV. A
/// non-numeric first line is taken as a header. Timestamps must be evenly
/// spaced.
TraceSeries ingest_trace(const std::filesystem::path& path);
TraceSeries parse_trace(const std::string& text, const std::string& source = "<memory>");

void write_trace_csv(const TraceSeries& series, const std::filesystem::path& path);

/// Columns scale_index, log2_statistic, weight, stderr.
void write_diagram_csv(const EnsembleDiagram& diagram, const std::filesystem::path& path);
EnsembleDiagram read_diagram_csv(const std::filesystem::path& path, int order = 0);

/// Observed points followed by both fitted lines sampled at every scale.
/// The first line is a `# log2_break=...` comment.
void emit_plot_data(const EnsembleDiagram& diagram, const SegmentedFit& fit,
                    const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace mixfractal
