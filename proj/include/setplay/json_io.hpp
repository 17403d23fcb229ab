#pragma once

#include <json.hpp>

#include "setplay/model.hpp"
#include "setplay/pipeline.hpp"

namespace setplay::json_io {

using json = nlohmann::ordered_json;

json tree_to_json(const model::BoolTree& t);
model::BoolTree tree_from_json(const json& j);

json step_features_to_json(const model::StepFeatures& s);
model::StepFeatures step_features_from_json(const json& j);

json setplay_features_to_json(const model::SetplayFeatures& f);
model::SetplayFeatures setplay_features_from_json(const json& j);

/// Dataset file: { "schema": "setplay-dataset/1", "setplays": [...] }.
json dataset_to_json(const std::vector<model::SetplayFeatures>& dataset);
std::vector<model::SetplayFeatures> dataset_from_json(const json& j);

/// Structured run report: config echo, FS-vs-C table, rosters, verdicts,
/// per-instance memberships. Deterministic for a given result.
json report_to_json(const pipeline::Config& cfg,
                    const std::vector<model::SetplayFeatures>& dataset,
                    const pipeline::RunResult& result);

}  // namespace setplay::json_io
