#pragma once

#include <string>

#include "onsetlab/bench.hpp"
#include "onsetlab/pipeline.hpp"

#include <json.hpp>

namespace onsetlab {

nlohmann::json config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& j);

/// Stable ordering key for tie-breaks: the canonical serialized form.
std::string config_key(const PipelineConfig& cfg);

nlohmann::json timing_to_json(const StageTiming& t);

std::string oss_method_name(OssMethod m);
std::string picker_name(Picker p);
OssMethod oss_method_from_name(const std::string& name);
Picker picker_from_name(const std::string& name);

}  // namespace onsetlab
