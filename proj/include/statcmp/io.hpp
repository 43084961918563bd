#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "statcmp/advisor.hpp"
#include "statcmp/mc_engine.hpp"

namespace statcmp {

inline constexpr const char* kToolVersion = "0.1.0";

// Every emitted artifact embeds the manifest that produced it; replaying a
// manifest reproduces the artifact byte for byte.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    nlohmann::json config;
    std::string tool_version = kToolVersion;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

// Shortest decimal that round-trips the double; '.' separator, no locale.
std::string format_double(double v);

nlohmann::json to_json(const DistributionSpec& spec);
DistributionSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TestOutcome& out);
nlohmann::json to_json(const EffectEstimate& e);

nlohmann::json to_json(const GridConfig& config);
GridConfig grid_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ResultsGrid& grid, const RunManifest& manifest);
ResultsGrid results_grid_from_json(const nlohmann::json& j);

// One row per cell: pair,test,effect_size,sample_size,rejection_rate,se
std::string results_grid_to_csv(const ResultsGrid& grid);

nlohmann::json to_json(const CurveComparisonReport& report);
nlohmann::json to_json(const SampleSizeRecommendation& rec);

// Aligned text table per effect size; entries at or above the power
// threshold carry a trailing '*'.
std::string render_power_tables(const std::vector<PowerTable>& tables, bool markdown);

// CSV with header `step,run_0,run_1,...`, one row per evaluation step.
LearningCurveSet read_learning_curves(const std::string& path, const std::string& label);

// Parses a declarative grid config document (JSON).
GridConfig grid_config_from_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace statcmp
