#pragma once

// JSON serialisation of suite configurations and check results.

#include "forge/suites.hpp"

#include <string>
#include <vector>

namespace forge::suites {

/// Report document: configuration, summary counts and one object per check.
/// Elapsed times are included only when `timings` is set, so that repeated
/// runs with the same configuration produce identical bytes.
std::string report_json(const SuiteConfig& config, const std::vector<CheckResult>& results,
                        bool timings = false);

/// Applies the fields present in a JSON config document on top of `base`.
/// Throws ConfigError on malformed input or unknown keys.
SuiteConfig config_from_json(const std::string& text, SuiteConfig base = {});

/// One line per result: status, id, anchor, error against tolerance.
std::string summary_text(const std::vector<CheckResult>& results);

}  // namespace forge::suites
