#pragma once

#include <string>

#include "qci/study.hpp"

namespace qci::io {

// Paper-style default configuration: the six default scenarios, sample
// sizes {10,15,25,50}, quantile levels {5,10,25,50,75,90,95}%, confidence
// levels {0.90,0.95}, all five methods, 2000 runs and 2000 bootstrap
// samples, master seed 42.
StudyConfig default_study_config();

// JSON study configuration; unknown fields are rejected and every
// diagnostic carries the offending field path.
StudyConfig parse_study_config(const std::string& json_text);
StudyConfig load_study_config_file(const std::string& path);

// Canonical JSON echo of a configuration (used in report manifests).
std::string study_config_to_json(const StudyConfig& cfg);

}  // namespace qci::io
