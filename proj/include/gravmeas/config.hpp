#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gravmeas/domain.hpp"
#include "gravmeas/records.hpp"

namespace gravmeas {

// Flat key = value scenario file. Keys outside the documented schema are a
// hard error; see the README schema reference.
struct ParsedConfig {
    std::map<std::string, std::string> kv;
    std::string digest;  // FNV-1a 64 of the canonicalized key=value lines
    bool toy_units = false;

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::optional<double> number_opt(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
};

ParsedConfig parse_config_text(const std::string& text, bool toy_units);
ParsedConfig parse_config_file(const std::string& path, bool toy_units);

bool is_known_config_key(const std::string& key);

ExperimentScenario scenario_from_config(const ParsedConfig& cfg);

// Builds the alpha or beta record from record.<beam> generator specs
// ("zero", "constant:C", "free_fall:L0,V0,G", "sinusoid:A,W,PHI") on the
// scenario time span, with measurement.delta_<beam>_m as resolution.
MeasurementRecord record_from_config(const ParsedConfig& cfg, const ExperimentScenario& s,
                                     const std::string& beam);

struct RunManifest {
    std::string tool_version;
    std::string config_digest;
    std::string subcommand;
    std::vector<std::string> overrides;
    std::string timestamp_utc;
};

std::string manifest_to_json(const RunManifest& m);
std::string utc_timestamp_now();
std::string fnv1a_hex(const std::string& data);

}  // namespace gravmeas
