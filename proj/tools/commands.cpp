#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_common.hpp"
#include "gravmeas/config.hpp"
#include "gravmeas/cow.hpp"
#include "gravmeas/domain.hpp"
#include "gravmeas/errors.hpp"
#include "gravmeas/interference.hpp"
#include "gravmeas/jsonio.hpp"
#include "gravmeas/kernels.hpp"
#include "gravmeas/version.hpp"

namespace gravmeas::cli {

namespace fs = std::filesystem;

namespace {

struct SweepSpec {
    std::string key;
    std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& text, bool config_key = true) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("sweep spec needs KEY=start:stop:steps");
    SweepSpec s;
    s.key = text.substr(0, eq);
    if (config_key && !is_known_config_key(s.key))
        throw ConfigError("unknown sweep key: " + s.key);
    double start = 0, stop = 0;
    long steps = 0;
    if (std::sscanf(text.c_str() + eq + 1, "%lf:%lf:%ld", &start, &stop, &steps) != 3 ||
        steps < 1)
        throw ConfigError("malformed sweep range in: " + text);
    for (long i = 0; i < steps; ++i)
        s.values.push_back(steps == 1 ? start
                                      : start + (stop - start) * i / double(steps - 1));
    return s;
}

ValidationResult check_scenario(const ExperimentScenario& s) {
    ValidationResult v = domain::validate_scenario(s);
    for (const std::string& viol : v.violations)
        if (viol != "approximation regime violated")
            throw ConfigError("invalid scenario: " + viol);
    return v;
}

MeasurementRecord load_beam_record(const ParsedConfig& cfg, const ExperimentScenario& s,
                                   const std::string& beam, const std::string& path) {
    if (!path.empty()) return records::load_record_csv(path);
    return record_from_config(cfg, s, beam);
}

void validation_json(JsonWriter& w, const ValidationResult& v) {
    w.begin_object("validation");
    w.field("pass", v.pass);
    w.begin_array("violations");
    for (const auto& s : v.violations) w.element(s);
    w.end_array();
    w.end_object();
}

std::string interference_csv_header() {
    return "I1,I2,I3,I4,I5,I_total,direct_phase,direct_log_contrast,deviation";
}

std::string interference_csv_row(const InterferenceReport& r) {
    std::string row;
    for (double v : {r.I1, r.I2, r.I3, r.I4, r.I5, r.I_total, r.direct_phase,
                     r.direct_log_contrast, r.deviation}) {
        if (!row.empty()) row += ",";
        row += fmt_double(v);
    }
    return row;
}

void write_file(const std::string& dir, const std::string& name, const std::string& data) {
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + name);
    out << data;
}

}  // namespace

void write_manifest(const CliOptions& opt, const std::string& digest) {
    if (opt.out_dir.empty()) return;
    RunManifest m;
    m.tool_version = kVersion;
    m.config_digest = digest;
    m.subcommand = opt.subcommand;
    m.overrides = opt.overrides;
    m.timestamp_utc = utc_timestamp_now();
    write_file(opt.out_dir, "run_manifest.json", manifest_to_json(m));
}

void emit_output(const CliOptions& opt, const std::string& filename,
                 const std::string& payload) {
    if (!opt.out_dir.empty()) write_file(opt.out_dir, filename, payload);
    std::cout << payload;
}

int run_propagator(const CliOptions& opt) {
    const ParsedConfig cfg = parse_config_file(opt.config_path, opt.toy_units);
    const ExperimentScenario s = scenario_from_config(cfg);
    const ValidationResult v = check_scenario(s);

    const LogComplex unmeasured = kernels::unmeasured_propagator(s);

    const bool monitored = !opt.record_path.empty() || cfg.has("record.alpha") ||
                           cfg.has("measurement.delta_alpha_m");
    JsonWriter w;
    w.begin_object();
    w.field("schema", "gravmeas.propagator.v1");
    w.field("config_digest", cfg.digest);
    validation_json(w, v);
    w.begin_object("unmeasured");
    w.field("log_magnitude", unmeasured.log_mag);
    w.field("phase", unmeasured.phase);
    w.end_object();
    if (monitored) {
        const MeasurementRecord rec = load_beam_record(cfg, s, "alpha", opt.record_path);
        const LogComplex measured = kernels::measured_propagator(s, rec);
        w.begin_object("measured");
        w.field("log_magnitude", measured.log_mag);
        w.field("phase", measured.phase);
        w.field("resolution_m", rec.resolution);
        w.end_object();
        w.begin_object("deviation_measured_vs_unmeasured");
        w.field("log_magnitude", std::abs(measured.log_mag - unmeasured.log_mag));
        w.field("phase", std::abs(measured.phase - unmeasured.phase));
        w.end_object();
    }
    w.end_object();
    write_manifest(opt, cfg.digest);
    emit_output(opt, "propagator.json", w.str());
    return 0;
}

namespace {

BeamPair pair_from_config(const CliOptions& opt, const ParsedConfig& cfg) {
    BeamPair p;
    p.scenario = scenario_from_config(cfg);
    check_scenario(p.scenario);
    p.record_alpha = load_beam_record(cfg, p.scenario, "alpha", opt.record_path);
    p.record_beta = load_beam_record(cfg, p.scenario, "beta", opt.record_beta_path);
    return p;
}

std::string interference_json(const ParsedConfig& cfg, const InterferenceReport& r) {
    JsonWriter w;
    w.begin_object();
    w.field("schema", "gravmeas.interference.v1");
    w.field("config_digest", cfg.digest);
    w.field("I1", r.I1);
    w.field("I2", r.I2);
    w.field("I3", r.I3);
    w.field("I4", r.I4);
    w.field("I5", r.I5);
    w.field("I_total", r.I_total);
    w.field("direct_phase", r.direct_phase);
    w.field("direct_phase_principal", std::remainder(r.direct_phase, 2.0 * M_PI));
    w.field("direct_log_contrast", r.direct_log_contrast);
    w.field("deviation", r.deviation);
    w.field("phase_convention",
            "direct_phase is the analytic (continuously tracked) difference; "
            "direct_phase_principal folds it into (-pi, pi]");
    w.end_object();
    return w.str();
}

}  // namespace

int run_interference(const CliOptions& opt) {
    ParsedConfig cfg = parse_config_file(opt.config_path, opt.toy_units);

    if (!opt.sweep.empty()) {
        const SweepSpec sw = parse_sweep(opt.sweep);
        std::vector<std::string> rows(sw.values.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(sw.values.size()); ++i) {
            ParsedConfig local = cfg;
            local.kv[sw.key] = fmt_double(sw.values[i]);
            const BeamPair p = pair_from_config(opt, local);
            const InterferenceReport r = interference::interference_report(p);
            rows[i] = fmt_double(sw.values[i]) + "," + interference_csv_row(r);
        }
        std::string csv = sw.key + "," + interference_csv_header() + "\n";
        for (const auto& row : rows) csv += row + "\n";
        write_manifest(opt, cfg.digest);
        emit_output(opt, "interference_sweep.csv", csv);
        return 0;
    }

    const BeamPair p = pair_from_config(opt, cfg);
    const InterferenceReport r = interference::interference_report(p);
    const std::string json = interference_json(cfg, r);
    const std::string csv = interference_csv_header() + "\n" + interference_csv_row(r) + "\n";
    if (!opt.out_dir.empty()) {
        write_file(opt.out_dir, "interference.json", json);
        write_file(opt.out_dir, "interference.csv", csv);
    }
    write_manifest(opt, cfg.digest);
    std::cout << (opt.format == "csv" ? csv : json);
    return 0;
}

int run_cow(const CliOptions& opt) {
    const ParsedConfig cfg = parse_config_file(opt.config_path, opt.toy_units);
    CowSetup setup;
    setup.L = cfg.number("cow.L_m");
    setup.l_b = cfg.number("cow.l_b_m");
    setup.Lambda = cfg.number("cow.Lambda_m");
    setup.include_correction = cfg.number_or("cow.include_correction", 1.0) != 0.0;
    const Constants defaults = opt.toy_units ? Constants::toy() : Constants{};
    const Constants c{cfg.number_or("constants.G", defaults.G),
                      cfg.number_or("constants.hbar", defaults.hbar)};
    const GravitySource src{cfg.number("source.M_kg"), cfg.number("source.R_m")};
    const Particle prt{cfg.number("particle.m_kg")};

    const CowResult r = cow::cow_phase(setup, src, prt, c);
    JsonWriter w;
    w.begin_object();
    w.field("schema", "gravmeas.cow.v1");
    w.field("config_digest", cfg.digest);
    w.field("phase", r.phase);
    w.field("intensity", r.intensity);
    w.field("correction_factor", r.correction_factor);
    w.end_object();

    std::string csv;
    if (!opt.sweep.empty()) {
        // height sweep: R_tilde=start:stop:steps produces the comparison curve
        const SweepSpec sw = parse_sweep(opt.sweep, false);
        if (sw.key != "R_tilde")
            throw ConfigError("cow only sweeps R_tilde (height above the surface)");
        BeamPair pair = pair_from_config(opt, cfg);
        const RDependenceReport rep = cow::r_dependence_comparison(setup, pair, sw.values);
        csv = "R_tilde_m,delta_cow_phase,delta_I1,delta_I2,delta_I3\n";
        JsonWriter cw;
        cw.begin_object();
        cw.field("schema", "gravmeas.cow_r_dependence.v1");
        cw.field("config_digest", cfg.digest);
        cw.field("cow_phase_derivative_rad_per_m", rep.cow_phase_derivative);
        cw.begin_array("points");
        for (const auto& pt : rep.points) {
            csv += fmt_double(pt.R_tilde) + "," + fmt_double(pt.delta_cow_phase) + "," +
                   fmt_double(pt.delta_I1) + "," + fmt_double(pt.delta_I2) + "," +
                   fmt_double(pt.delta_I3) + "\n";
            cw.begin_object();
            cw.field("R_tilde_m", pt.R_tilde);
            cw.field("delta_cow_phase", pt.delta_cow_phase);
            cw.field("delta_I1", pt.delta_I1);
            cw.field("delta_I2", pt.delta_I2);
            cw.field("delta_I3", pt.delta_I3);
            cw.end_object();
        }
        cw.end_array();
        cw.end_object();
        if (!opt.out_dir.empty()) {
            write_file(opt.out_dir, "cow_r_dependence.csv", csv);
            write_file(opt.out_dir, "cow_r_dependence.json", cw.str());
        }
    }
    if (!opt.out_dir.empty()) write_file(opt.out_dir, "cow.json", w.str());
    write_manifest(opt, cfg.digest);
    std::cout << ((opt.format == "csv" && !csv.empty()) ? csv : w.str());
    return 0;
}

int run_estimate(const CliOptions& opt) {
    const ParsedConfig cfg = parse_config_file(opt.config_path, opt.toy_units);
    const Constants defaults = opt.toy_units ? Constants::toy() : Constants{};
    const Constants c{cfg.number_or("constants.G", defaults.G),
                      cfg.number_or("constants.hbar", defaults.hbar)};
    const GravitySource src{cfg.number("source.M_kg"), cfg.number("source.R_m")};

    std::optional<Particle> prt;
    if (cfg.has("particle.m_kg")) prt = Particle{cfg.number("particle.m_kg")};
    std::optional<double> T = cfg.number_opt("estimate.T_s");
    std::vector<std::string> extra;
    double delta;
    if (cfg.has("estimate.delta_alpha_m")) {
        delta = cfg.number("estimate.delta_alpha_m");
    } else {
        delta = 2e-6;  // trap-grade position resolution
        extra.push_back("resolution defaulted to 2e-6 m");
    }
    EstimateResult r = cow::paul_trap_estimate(src, prt, T, delta, c);
    r.assumptions.insert(r.assumptions.end(), extra.begin(), extra.end());

    JsonWriter w;
    w.begin_object();
    w.field("schema", "gravmeas.estimate.v1");
    w.field("config_digest", cfg.digest);
    w.field("gamma_tilde", r.gamma_tilde);
    w.field("sqrt_gamma", r.sqrt_gamma);
    w.field("frequency_bound_per_s", r.frequency_bound);
    w.begin_array("assumptions");
    for (const auto& a : r.assumptions) w.element(a);
    w.end_array();
    w.end_object();
    write_manifest(opt, cfg.digest);
    emit_output(opt, "estimate.json", w.str());
    return 0;
}

int run_sweep(const CliOptions& opt) {
    if (opt.sweep.empty()) throw ConfigError("sweep needs --sweep KEY=start:stop:steps");
    CliOptions fwd = opt;
    fwd.subcommand = opt.target;
    if (opt.target == "interference") return run_interference(fwd);
    if (opt.target == "cow") return run_cow(fwd);
    if (opt.target == "propagator") {
        // row per point: swept value, unmeasured and monitored amplitudes
        ParsedConfig cfg = parse_config_file(opt.config_path, opt.toy_units);
        const SweepSpec sw = parse_sweep(opt.sweep);
        const bool monitored =
            cfg.has("measurement.delta_alpha_m") || cfg.has("record.alpha") ||
            !opt.record_path.empty();
        std::vector<std::string> rows(sw.values.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(sw.values.size()); ++i) {
            ParsedConfig local = cfg;
            local.kv[sw.key] = fmt_double(sw.values[i]);
            const ExperimentScenario s = scenario_from_config(local);
            check_scenario(s);
            const LogComplex u = kernels::unmeasured_propagator(s);
            std::string row = fmt_double(sw.values[i]) + "," + fmt_double(u.log_mag) + "," +
                              fmt_double(u.phase);
            if (monitored) {
                const MeasurementRecord rec =
                    load_beam_record(local, s, "alpha", opt.record_path);
                const LogComplex m = kernels::measured_propagator(s, rec);
                row += "," + fmt_double(m.log_mag) + "," + fmt_double(m.phase);
            }
            rows[i] = row;
        }
        std::string csv = sw.key +
                          ",unmeasured_log_magnitude,unmeasured_phase"
                          ",measured_log_magnitude,measured_phase\n";
        for (const auto& r : rows) csv += r + "\n";
        write_manifest(opt, cfg.digest);
        emit_output(opt, "propagator_sweep.csv", csv);
        return 0;
    }
    throw ConfigError("unknown sweep target: " + opt.target);
}

}  // namespace gravmeas::cli
