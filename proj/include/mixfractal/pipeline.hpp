#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixfractal/crossover.hpp"
#include "mixfractal/cumulants.hpp"
#include "mixfractal/ensemble.hpp"
#include "mixfractal/synthesis.hpp"
#include "mixfractal/wavelet.hpp"

namespace mixfractal {

enum class RunMode { synthesize, analyze, pipeline };

struct RunConfig {
  RunMode mode = RunMode::pipeline;
  std::optional<FlowSpec> flow;
  std::optional<std::filesystem::path> input_path;
  std::vector<int> orders{2, 3, 4};
  Wavelet wavelet = Wavelet::haar;
  std::size_t replicas = 1;
  std::size_t min_blocks = kDefaultMinBlocks;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  CrossoverOptions crossover;
};

/// Throws ConfigError on: both or neither of flow/input_path, replicas == 0,
/// replicas > 1 with an input trace, unsupported orders, invalid flow.
void validate(const RunConfig& config);

RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);

/// Seed of replica r. Distinct for distinct r.
std::uint64_t replica_seed(std::uint64_t seed, std::size_t replica);

struct PipelineResult {
  std::map<int, EnsembleDiagram> cumulant;  // by order; admitted points only
  EnsembleDiagram wavelet;
  FractalFitReport fractal;
  std::map<int, CrossoverReport> cumulant_crossover;
  std::optional<CrossoverReport> wavelet_crossover;
  std::map<int, std::string> skipped_crossover;  // order -> reason
  std::vector<std::uint64_t> replica_seeds;
};

/// Runs synthesis (or ingestion), the cumulant and wavelet scans over all
/// replicas, ensemble averaging and every fit. Touches no files.
PipelineResult analyze(const RunConfig& config);

nlohmann::json report_to_json(const PipelineResult& result);
nlohmann::json run_meta(const RunConfig& config, const PipelineResult& result);

/// analyze() plus the artifacts under config.output_dir. Nothing is written
/// unless the analysis succeeds.
PipelineResult run_pipeline(const RunConfig& config);

/// Synthesizes one flow with config.seed and writes trace.csv.
std::filesystem::path run_synthesize(const RunConfig& config);

}  // namespace mixfractal
