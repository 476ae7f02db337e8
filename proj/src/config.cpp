#include "gravmeas/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "gravmeas/errors.hpp"
#include "gravmeas/jsonio.hpp"
#include "gravmeas/version.hpp"

namespace gravmeas {

namespace {

const std::set<std::string> kKnownKeys = {
    "constants.G",
    "constants.hbar",
    "source.M_kg",
    "source.R_m",
    "particle.m_kg",
    "endpoints.x_P_m",
    "endpoints.y_P_m",
    "endpoints.l_P_m",
    "endpoints.x_Q_m",
    "endpoints.y_Q_m",
    "endpoints.l_Q_m",
    "endpoints.tau_start_s",
    "endpoints.tau_end_s",
    "scenario.validity_ratio",
    "measurement.delta_alpha_m",
    "measurement.delta_beta_m",
    "record.alpha",
    "record.beta",
    "record.n_points",
    "cow.L_m",
    "cow.l_b_m",
    "cow.Lambda_m",
    "cow.include_correction",
    "estimate.T_s",
    "estimate.delta_alpha_m",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

double ParsedConfig::number(const std::string& key) const {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("missing required config key: " + key);
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw ConfigError("config key " + key + " is not a number: " + it->second);
    return v;
}

double ParsedConfig::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::optional<double> ParsedConfig::number_opt(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return number(key);
}

std::string ParsedConfig::text_or(const std::string& key, const std::string& fallback) const {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

ParsedConfig parse_config_text(const std::string& text, bool toy_units) {
    ParsedConfig cfg;
    cfg.toy_units = toy_units;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKnownKeys.count(key))
            throw ConfigError("unknown config key: " + key);
        if (cfg.kv.count(key)) throw ConfigError("duplicate config key: " + key);
        cfg.kv[key] = value;
    }
    std::string canonical;
    for (const auto& [k, v] : cfg.kv) canonical += k + "=" + v + "\n";
    cfg.digest = fnv1a_hex(canonical);
    return cfg;
}

bool is_known_config_key(const std::string& key) { return kKnownKeys.count(key) != 0; }

ParsedConfig parse_config_file(const std::string& path, bool toy_units) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), toy_units);
}

ExperimentScenario scenario_from_config(const ParsedConfig& cfg) {
    ExperimentScenario s;
    const Constants defaults = cfg.toy_units ? Constants::toy() : Constants{};
    s.constants.G = cfg.number_or("constants.G", defaults.G);
    s.constants.hbar = cfg.number_or("constants.hbar", defaults.hbar);
    s.source.M = cfg.number("source.M_kg");
    s.source.R = cfg.number("source.R_m");
    s.particle.m = cfg.number("particle.m_kg");
    s.endpoints.x_P = cfg.number_or("endpoints.x_P_m", 0.0);
    s.endpoints.y_P = cfg.number_or("endpoints.y_P_m", 0.0);
    s.endpoints.l_P = cfg.number_or("endpoints.l_P_m", 0.0);
    s.endpoints.x_Q = cfg.number_or("endpoints.x_Q_m", 0.0);
    s.endpoints.y_Q = cfg.number_or("endpoints.y_Q_m", 0.0);
    s.endpoints.l_Q = cfg.number_or("endpoints.l_Q_m", 0.0);
    s.endpoints.tau_start = cfg.number("endpoints.tau_start_s");
    s.endpoints.tau_end = cfg.number("endpoints.tau_end_s");
    s.validity_ratio = cfg.number_or("scenario.validity_ratio", 0.01);
    return s;
}

MeasurementRecord record_from_config(const ParsedConfig& cfg, const ExperimentScenario& s,
                                     const std::string& beam) {
    const std::string spec = cfg.text_or("record." + beam, "zero");
    const double resolution = cfg.number_or("measurement.delta_" + beam + "_m",
                                            std::numeric_limits<double>::infinity());
    const int n = static_cast<int>(cfg.number_or("record.n_points", 1001));
    const GridSpec g{s.endpoints.tau_start, s.endpoints.tau_end, n};

    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::istringstream in(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(in, tok, ',')) args.push_back(std::strtod(tok.c_str(), nullptr));
    }
    auto need = [&](size_t k) {
        if (args.size() != k)
            throw ConfigError("record." + beam + " spec '" + spec + "' needs " +
                              std::to_string(k) + " arguments");
    };
    if (kind == "zero") {
        need(0);
        return records::make_constant_record(0.0, g, resolution);
    }
    if (kind == "constant") {
        need(1);
        return records::make_constant_record(args[0], g, resolution);
    }
    if (kind == "free_fall") {
        need(3);
        return records::make_free_fall_record(args[0], args[1], args[2], g, resolution);
    }
    if (kind == "sinusoid") {
        need(3);
        return records::make_sinusoid_record(args[0], args[1], args[2], g, resolution);
    }
    throw ConfigError("unknown record kind in record." + beam + ": " + kind);
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_timestamp_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string manifest_to_json(const RunManifest& m) {
    JsonWriter w;
    w.begin_object();
    w.field("tool_version", m.tool_version);
    w.field("config_digest", m.config_digest);
    w.field("subcommand", m.subcommand);
    w.begin_array("overrides");
    for (const auto& o : m.overrides) w.element(o);
    w.end_array();
    w.field("timestamp_utc", m.timestamp_utc);
    w.end_object();
    return w.str();
}

}  // namespace gravmeas
