#pragma once

#include "mobnet/synthetic.hpp"
#include "mobnet/timeutil.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mobnet::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kInternalError = 2 };

/// Fully resolved settings for one command.
struct RunConfig {
    std::string flows;
    std::string registry;
    std::optional<Date> lockdown_date;
    int pre_days = 14;
    int post_days = 14;
    std::string direction = "both";
    std::string out = ".";
    std::uint64_t seed = 0;
    ArchetypeParams synth;
};

struct CountryPreset {
    Date lockdown;
    int window_days;
};

/// france / italy / uk. Throws ArgumentError for anything else.
CountryPreset country_preset(const std::string& name);

/// Layers, lowest first: built-in defaults, country preset, config file,
/// flags. `flags` maps config keys (e.g. "pre_days") to their text.
RunConfig resolve_config(const nlohmann::json& file, const std::map<std::string, std::string>& flags);

int cmd_metrics(const RunConfig& config, std::ostream& log);
int cmd_percolate(const RunConfig& config, std::ostream& log);
int cmd_overlay(const RunConfig& config, std::ostream& log);
int cmd_synth(const RunConfig& config, std::ostream& log);
int cmd_voronoi(const RunConfig& config, std::ostream& log);
int cmd_ingest_check(const RunConfig& config, std::ostream& log);

/// Parses `args` (without the program name), dispatches, and maps errors to
/// exit codes: 1 for parse/validation/argument errors, 2 for internal ones.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mobnet::cli
