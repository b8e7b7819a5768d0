#pragma once

#include <string>

#include "rate_lab.hpp"

namespace grenlab {

/// A validated run configuration parsed from line-oriented `key = value`
/// text. `#` starts a comment; keys use dotted section prefixes
/// (`model.variant`, `experiment.reps`, ...). Unknown keys are errors.
struct RunConfig {
    ExperimentPlan plan;
};

/// Parse and validate configuration text. Throws config_error with the
/// offending key named.
RunConfig parse_config(const std::string& text);

/// Read a config file and parse it. Throws io_error when unreadable.
RunConfig load_config(const std::string& path);

} // namespace grenlab
