#pragma once

#include <string>

#include "config.hpp"

namespace grenlab {

/// Format a double as a locale-independent decimal with 17 significant
/// digits (round-trip exact).
std::string format_value(double v);

/// Run the configured experiment and write the results CSV
/// (`model,statistic,n,rep,value`, one row per replication, '\n' endings).
void run_to_csv(const RunConfig& config, const std::string& output_path,
                unsigned threads = 1);

/// Fit rates per (model, statistic) group of a results CSV and write the
/// report CSV (`model,statistic,slope,stderr,r2,n_min,n_max,reps`). Groups
/// with fewer than two distinct sample sizes get empty slope fields and a
/// diagnostic on stderr.
void report_to_csv(const std::string& results_path, RegressorKind regressor,
                   const std::string& output_path);

} // namespace grenlab
