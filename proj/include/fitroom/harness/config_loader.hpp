#pragma once

#include "fitroom/model/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace fitroom::harness {

/// Reads a scenario file: one `key = value` per line, `#` starts a comment,
/// keys use dotted sections. Unset keys keep their defaults. Throws IoError
/// when the file cannot be read and ConfigError (naming the key) on any parse
/// or validation failure.
///
///   seed = 42
///   replications = 100
///   arrival.rates = [30, 45, 60, 70, 60, 45, 35, 25]
///   arrival.scale = 1.0
///   cubicles = 8
///   staff = 1
///   service.job1 = triangular(0.1, 0.35, 0.6)
///   service.fitting = triangular(4, 7.5, 12)
///   help.probability = 0.2
///   help.request_fraction = uniform(0.3, 0.7)
///   patience = exponential(mean=25)        # or: infinite
///   proactive.enabled = true
///   proactive.threshold = 3                # or .entry / .help / .return
///   proactive.speedup = 0.2
///   proactive.revert_delay = exponential(mean=10)
///   proactive.check = event                # or: polling
///   proactive.poll_interval = exponential(mean=1)
///   metrics.wait_estimator = served        # or: all
ScenarioConfig load_config(const std::filesystem::path& path);

ScenarioConfig parse_config(std::string_view text);

/// Renders a config in the same format; parse_config(to_config_text(c))
/// reproduces c.
std::string to_config_text(const ScenarioConfig& config);

}  // namespace fitroom::harness
