#pragma once

#include <string>
#include <vector>

namespace gravmeas::cli {

struct CliOptions {
    std::string subcommand;
    std::string config_path;
    std::string record_path;       // alpha-beam CSV, overrides record.alpha
    std::string record_beta_path;  // beta-beam CSV, overrides record.beta
    std::string out_dir;
    std::string format = "json";  // stdout payload: json or csv
    std::string sweep;            // KEY=start:stop:steps
    std::string target = "interference";  // for the sweep subcommand
    bool toy_units = false;
    // verify-only flags
    bool list_checks = false;
    std::string filter;
    double tolerance_scale = 1.0;
    std::vector<std::string> overrides;  // echoed into the run manifest
};

int run_propagator(const CliOptions& opt);
int run_interference(const CliOptions& opt);
int run_cow(const CliOptions& opt);
int run_estimate(const CliOptions& opt);
int run_sweep(const CliOptions& opt);
int run_verify(const CliOptions& opt);

// writes payload to stdout and, when out_dir is set, to out_dir/filename
// plus the run manifest
void emit_output(const CliOptions& opt, const std::string& filename,
                 const std::string& payload);
void write_manifest(const CliOptions& opt, const std::string& digest);

}  // namespace gravmeas::cli
