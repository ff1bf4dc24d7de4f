#pragma once

#include <string>
#include <vector>

#include "d2dsim/experiment_config.hpp"

namespace d2dsim {

// Flat "key = value" document, one setting per line, '#' comments. Unknown
// keys and malformed lines are reported with their line number; constraint
// violations name the field. Missing keys keep their defaults.
ExperimentConfig parse_config(const std::string& text);

// Reads and parses; validates before returning.
ExperimentConfig load_config(const std::string& path);

// Emits a document that parses back to an equal config.
std::string config_to_document(const ExperimentConfig& config);

// "start:stop:step" inclusive grid, e.g. "0.1:1.0:0.1".
std::vector<double> parse_pa_grid(const std::string& text);

// Comma-separated policy names.
std::vector<Policy> parse_policy_list(const std::string& text);

}  // namespace d2dsim
