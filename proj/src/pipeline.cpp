#include "mixfractal/pipeline.hpp"

#include <fftw3.h>

#include <algorithm>
#include <fstream>
#include <string>

#include "mixfractal/aggregation.hpp"
#include "mixfractal/error.hpp"
#include "mixfractal/io.hpp"
#include "mixfractal/log.hpp"
#include "mixfractal/version.hpp"

namespace mixfractal {
namespace {

using nlohmann::json;

std::string_view mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::synthesize: return "synthesize";
    case RunMode::analyze: return "analyze";
    default: return "pipeline";
  }
}

std::string_view wavelet_name(Wavelet w) { return w == Wavelet::haar ? "haar" : "d4"; }

Wavelet parse_wavelet(const std::string& name) {
  if (name == "haar") return Wavelet::haar;
  if (name == "d4") return Wavelet::d4;
  throw ConfigError("unknown wavelet '" + name + "' (expected haar or d4)");
}

Marginal parse_marginal(const std::string& name) {
  if (name == "gaussian") return Marginal::gaussian;
  if (name == "chi-squared" || name == "chi_squared") return Marginal::chi_squared;
  throw ConfigError("unknown marginal '" + name + "' (expected gaussian or chi-squared)");
}

RunMode parse_mode(const std::string& name) {
  if (name == "synthesize") return RunMode::synthesize;
  if (name == "analyze") return RunMode::analyze;
  if (name == "pipeline") return RunMode::pipeline;
  throw ConfigError("unknown mode '" + name + "'");
}

FlowSpec flow_for_seed(const FlowSpec& flow, std::uint64_t seed) {
  FlowSpec copy = flow;
  copy.seed = seed;
  return copy;
}

// Two-regime predictions are only defined for two Gaussian components.
struct Predictions {
  std::optional<CrossoverPrediction> cumulant_m2;
  std::optional<CrossoverPrediction> wavelet;
  std::string note;
};

Predictions predict(const RunConfig& config) {
  Predictions out;
  if (!config.flow) return out;
  const auto& flow = *config.flow;
  if (flow.components.size() != 2) {
    out.note = "analytic crossover needs exactly two components";
    return out;
  }
  if (flow.marginal != Marginal::gaussian) {
    out.note = "analytic prefactors are only known for Gaussian components";
    return out;
  }
  const auto& lo = flow.components[0];
  const auto& hi = flow.components[1];
  try {
    // Unit-variance fGn: Var(X^(n)) = n^{2H} exactly, so c_i(2) = weight_i^2.
    out.cumulant_m2 = predict_crossover_cumulant(lo.weight * lo.weight, hi.weight * hi.weight,
                                                 lo.hurst, hi.hurst, 2);
    out.wavelet = predict_crossover_wavelet(
        lo.weight * lo.weight * fgn_octave_prefactor(lo.hurst, config.wavelet),
        hi.weight * hi.weight * fgn_octave_prefactor(hi.hurst, config.wavelet), lo.hurst,
        hi.hurst, SeriesKind::increments);
  } catch (const NoCrossoverError& e) {
    out.note = e.what();
  }
  return out;
}

json prediction_json(const std::optional<CrossoverPrediction>& p) {
  if (!p) return nullptr;
  return {{"log2_break", p->log2_break},
          {"small_scale_slope", p->small_scale_slope},
          {"large_scale_slope", p->large_scale_slope}};
}

json crossover_json(const CrossoverReport& r) {
  const auto& f = r.fit;
  json j;
  j["segmented"] = {{"break_index", f.break_index},   {"log2_break", f.log2_break},
                    {"slope_low", f.slope_low},       {"intercept_low", f.intercept_low},
                    {"slope_high", f.slope_high},     {"intercept_high", f.intercept_high},
                    {"sse", f.sse},                   {"single_line_sse", f.single_line_sse}};
  j["sse_ratio"] = r.sse_ratio;
  j["significant"] = r.significant;
  j["verdict"] = r.significant ? "significant crossover" : "no significant crossover";
  j["hurst_low"] = r.hurst_low;
  j["hurst_high"] = r.hurst_high;
  j["single_line_hurst"] = r.single_line_hurst;
  j["prediction"] = prediction_json(r.prediction);
  j["break_deviation"] = r.break_deviation ? json(*r.break_deviation) : json(nullptr);
  return j;
}

void write_json(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.flow.has_value() == config.input_path.has_value()) {
    throw ConfigError("exactly one of flow and input_path must be set");
  }
  if (config.replicas == 0) throw ConfigError("replicas must be at least 1");
  if (config.replicas > 1 && config.input_path) {
    throw ConfigError("an external trace cannot be replicated (replicas must be 1)");
  }
  if (config.orders.empty()) throw ConfigError("no cumulant orders requested");
  for (int m : config.orders) {
    if (m < 2 || m > 4) throw ConfigError("cumulant order " + std::to_string(m) + " not in 2..4");
  }
  if (config.min_blocks == 0) throw ConfigError("min_blocks must be positive");
  if (!(config.crossover.significance_ratio > 0.0)) {
    throw ConfigError("significance_ratio must be positive");
  }
  if (config.flow) {
    try {
      validate(*config.flow);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("invalid flow: ") + e.what());
    }
  }
}

RunConfig config_from_json(const json& doc) {
  RunConfig config;
  try {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    if (doc.contains("mode")) config.mode = parse_mode(doc.at("mode").get<std::string>());
    if (doc.contains("flow") && !doc.at("flow").is_null()) {
      const auto& f = doc.at("flow");
      FlowSpec flow;
      flow.length = f.at("length").get<std::size_t>();
      flow.marginal = parse_marginal(f.value("marginal", std::string("gaussian")));
      for (const auto& c : f.at("components")) {
        flow.components.push_back({c.at("hurst").get<double>(), c.value("weight", 1.0)});
      }
      config.flow = flow;
    }
    if (doc.contains("input_path") && !doc.at("input_path").is_null()) {
      config.input_path = doc.at("input_path").get<std::string>();
    }
    if (doc.contains("orders")) config.orders = doc.at("orders").get<std::vector<int>>();
    if (doc.contains("wavelet")) config.wavelet = parse_wavelet(doc.at("wavelet").get<std::string>());
    config.replicas = doc.value("replicas", config.replicas);
    config.min_blocks = doc.value("min_blocks", config.min_blocks);
    if (doc.contains("output_dir")) config.output_dir = doc.at("output_dir").get<std::string>();
    config.seed = doc.value("seed", config.seed);
    config.crossover.significance_ratio =
        doc.value("significance_ratio", config.crossover.significance_ratio);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (config.flow) config.flow->seed = config.seed;
  return config;
}

json config_to_json(const RunConfig& config) {
  json j;
  j["mode"] = mode_name(config.mode);
  if (config.flow) {
    json components = json::array();
    for (const auto& c : config.flow->components) {
      components.push_back({{"hurst", c.hurst}, {"weight", c.weight}});
    }
    j["flow"] = {{"length", config.flow->length},
                 {"marginal", config.flow->marginal == Marginal::gaussian ? "gaussian" : "chi-squared"},
                 {"components", components}};
  } else {
    j["flow"] = nullptr;
  }
  j["input_path"] = config.input_path ? json(config.input_path->string()) : json(nullptr);
  j["orders"] = config.orders;
  j["wavelet"] = wavelet_name(config.wavelet);
  j["replicas"] = config.replicas;
  j["min_blocks"] = config.min_blocks;
  j["output_dir"] = config.output_dir.string();
  j["seed"] = config.seed;
  j["significance_ratio"] = config.crossover.significance_ratio;
  return j;
}

std::uint64_t replica_seed(std::uint64_t seed, std::size_t replica) {
  return derive_seed(seed, replica);
}

PipelineResult analyze(const RunConfig& config) {
  validate(config);
  PipelineResult result;

  std::optional<TraceSeries> external;
  if (config.input_path) {
    external = ingest_trace(*config.input_path);
    log::info("ingested " + std::to_string(external->size()) + " samples from " +
              config.input_path->string());
  }

  std::map<int, std::vector<ScalingDiagram>> cumulant_replicas;
  std::vector<ScalingDiagram> wavelet_replicas;
  for (std::size_t r = 0; r < config.replicas; ++r) {
    TraceSeries series;
    if (external) {
      series = *external;
    } else {
      const auto seed = replica_seed(config.seed, r);
      result.replica_seeds.push_back(seed);
      series = compose_mixture(flow_for_seed(*config.flow, seed));
    }
    validate(series);

    const auto ladder = dyadic_ladder(series.size(), config.min_blocks);
    const auto table = cumulant_scan(series, ladder, config.orders, config.min_blocks);
    for (int m : config.orders) cumulant_replicas[m].push_back(table.diagram(m));

    const int max_octave = default_max_octave(series.size());
    wavelet_replicas.push_back(
        logscale_diagram(dwt_detail_variances(series, config.wavelet, max_octave)));
    log::debug("replica " + std::to_string(r) + " done");
  }

  std::map<int, ScalingDiagram> means;
  for (const auto& [m, diagrams] : cumulant_replicas) {
    result.cumulant[m] = average_diagrams(diagrams);
    means[m] = result.cumulant[m].mean;
  }
  result.wavelet = average_diagrams(wavelet_replicas);
  result.fractal = fractal_fit_report(means);

  const auto predictions = predict(config);
  for (const auto& [m, ensemble] : result.cumulant) {
    if (ensemble.mean.size() < 5) {
      result.skipped_crossover[m] =
          "only " + std::to_string(ensemble.mean.size()) + " admitted points";
      continue;
    }
    result.cumulant_crossover[m] =
        crossover_report(ensemble.mean, SlopeConvention::cumulant(m),
                         m == 2 ? predictions.cumulant_m2 : std::nullopt, config.crossover);
  }
  if (result.wavelet.mean.size() >= 5) {
    result.wavelet_crossover =
        crossover_report(result.wavelet.mean, SlopeConvention::wavelet(SeriesKind::increments),
                         predictions.wavelet, config.crossover);
  } else {
    result.skipped_crossover[0] = "wavelet diagram has fewer than 5 admitted octaves";
  }
  return result;
}

json report_to_json(const PipelineResult& result) {
  json fractal;
  json per_order = json::object();
  for (const auto& [m, fit] : result.fractal.per_order) {
    per_order[std::to_string(m)] = {{"slope", fit.slope},       {"hurst", fit.hurst},
                                    {"intercept", fit.intercept}, {"residual", fit.residual},
                                    {"hurst_stderr", fit.hurst_stderr},
                                    {"out_of_range", fit.out_of_range}};
  }
  fractal["per_order"] = per_order;
  if (result.fractal.linear) {
    fractal["linear_fractal"] = {{"A", result.fractal.linear->a},
                                 {"B", result.fractal.linear->b},
                                 {"residual", result.fractal.linear->residual}};
  } else {
    fractal["linear_fractal"] = nullptr;
  }
  fractal["unifractal_hurst"] = result.fractal.unifractal_hurst;
  fractal["consistent"] = result.fractal.consistent;
  json skipped = json::object();
  for (const auto& [m, why] : result.fractal.skipped) skipped[std::to_string(m)] = why;
  fractal["skipped"] = skipped;

  json cumulant = json::object();
  for (const auto& [m, report] : result.cumulant_crossover) {
    cumulant["m" + std::to_string(m)] = crossover_json(report);
  }
  json crossover_skipped = json::object();
  for (const auto& [m, why] : result.skipped_crossover) {
    crossover_skipped[m == 0 ? std::string("wavelet") : "m" + std::to_string(m)] = why;
  }

  json doc;
  doc["fractal_fit"] = fractal;
  doc["crossover"] = {{"cumulant", cumulant},
                      {"wavelet", result.wavelet_crossover ? crossover_json(*result.wavelet_crossover)
                                                           : json(nullptr)},
                      {"skipped", crossover_skipped}};
  return doc;
}

json run_meta(const RunConfig& config, const PipelineResult& result) {
  json meta;
  meta["config"] = config_to_json(config);
  meta["replica_seeds"] = result.replica_seeds;
  if (config.flow) {
    json components = json::array();
    for (auto seed : result.replica_seeds) {
      json row = json::array();
      for (std::size_t i = 0; i < config.flow->components.size(); ++i) {
        row.push_back(derive_seed(seed, i));
      }
      components.push_back(row);
    }
    meta["component_seeds"] = components;
  }
  meta["ensemble_averaging"] = "pointwise mean of log2 statistics across replicas";
  meta["versions"] = {{"mixfractal", kVersion}, {"fftw", std::string(fftw_version)}};
  return meta;
}

PipelineResult run_pipeline(const RunConfig& config) {
  auto result = analyze(config);

  const auto& dir = config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  for (const auto& [m, ensemble] : result.cumulant) {
    write_diagram_csv(ensemble, dir / ("cumulant_diagram_m" + std::to_string(m) + ".csv"));
    if (auto it = result.cumulant_crossover.find(m); it != result.cumulant_crossover.end()) {
      emit_plot_data(ensemble, it->second.fit, dir / ("cumulant_plot_m" + std::to_string(m) + ".csv"));
    }
  }
  write_diagram_csv(result.wavelet, dir / "wavelet_diagram.csv");
  if (result.wavelet_crossover) {
    emit_plot_data(result.wavelet, result.wavelet_crossover->fit, dir / "wavelet_plot.csv");
  }
  write_json(report_to_json(result), dir / "fit_report.json");
  write_json(run_meta(config, result), dir / "run_meta.json");
  log::info("wrote artifacts to " + dir.string());
  return result;
}

std::filesystem::path run_synthesize(const RunConfig& config) {
  validate(config);
  if (!config.flow) throw ConfigError("synthesize needs a flow in the config");
  auto flow = *config.flow;
  flow.seed = config.seed;
  const auto series = compose_mixture(flow);

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.output_dir.string());
  const auto path = config.output_dir / "trace.csv";
  write_trace_csv(series, path);
  return path;
}

}  // namespace mixfractal
