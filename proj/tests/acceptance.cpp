// Acceptance suite: every criterion pinned to its stated tolerance and
// printed as one pass/fail line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "gravmeas/interference.hpp"
#include "gravmeas/kernels.hpp"
#include "gravmeas/oracle.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace gravmeas;
namespace chrono = std::chrono;

namespace {

void report(int n, const std::string& what, bool pass) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", n, what.c_str());
    std::fflush(stdout);
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(GRAVMEAS_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    return RunResult{WEXITSTATUS(pclose(pipe)), out};
}

double json_number(const std::string& json, const std::string& key) {
    const std::regex re("\"" + key + "\": (-?[0-9eE.+-]+)");
    std::smatch m;
    REQUIRE(std::regex_search(json, m, re));
    return std::strtod(m[1].str().c_str(), nullptr);
}

double amplitude_gap(const LogComplex& a, const LogComplex& b) {
    return std::abs(a.log_mag - b.log_mag) +
           std::abs(std::exp(Complex(0.0, a.phase - b.phase)) - 1.0);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("1: trap-estimate reproduction within the stated bands, under 1 s") {
    const auto t0 = chrono::steady_clock::now();
    const RunResult r = run_cli("estimate --config " + std::string(GRAVMEAS_CONFIG_DIR) +
                                "/earth_estimate.cfg");
    const double secs = chrono::duration<double>(chrono::steady_clock::now() - t0).count();
    bool ok = r.exit_code == 0;
    const double sqrt_gamma = json_number(r.output, "sqrt_gamma");
    const double bound = json_number(r.output, "frequency_bound_per_s");
    ok = ok && sqrt_gamma >= 0.5e5 && sqrt_gamma <= 5e5;
    ok = ok && bound >= 0.8e2 && bound <= 8e2;
    ok = ok && secs < 1.0;
    report(1, "sqrt(gamma) in [0.5e5, 5e5], bound in [0.8e2, 8e2] s^-1, runtime < 1 s", ok);
    CHECK(ok);
}

TEST_CASE("2: oracle triangle over the toy corpus within 60 s") {
    const auto t0 = chrono::steady_clock::now();
    bool ok = true;
    double worst_cn = 0.0, worst_sliced = 0.0;
    const auto corpus = testsup::toy_corpus();
    REQUIRE(corpus.size() >= 5);
    for (const auto& c : corpus) {
        const oracle::L2Comparison cmp = testsup::cn_vs_closed(c);
        worst_cn = std::max(worst_cn, cmp.relative_l2);
        ok = ok && cmp.relative_l2 <= 1e-4;
    }
    {
        const ExperimentScenario s = testsup::toy_scenario();
        const Complex exact = kernels::longitudinal_unmeasured(s)
                                  .eval(s.endpoints.l_P, s.endpoints.l_Q)
                                  .to_complex();
        const Complex rich = oracle::time_sliced_kernel(s, 256).richardson.to_complex();
        worst_sliced = std::abs(rich - exact) / std::abs(exact);
        ok = ok && worst_sliced <= 1e-6;
    }
    const double secs = chrono::duration<double>(chrono::steady_clock::now() - t0).count();
    ok = ok && secs <= 60.0;
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "CN vs closed form <= 1e-4 (worst %.2e), sliced <= 1e-6 (%.2e), %.1f s",
                  worst_cn, worst_sliced, secs);
    report(2, msg, ok);
    CHECK(ok);
}

TEST_CASE("3: limit suite (resolution, gravity-off, homogeneous field)") {
    bool ok = true;
    const ExperimentScenario s = testsup::toy_scenario();
    // (a) the weight functional switches off over three resolution decades
    {
        const LogComplex ref = kernels::unmeasured_propagator(s);
        const GridSpec g{0.0, s.endpoints.duration(), 1001};
        double prev = 1e300, last = 0.0;
        for (double da : {1e2, 1e3, 1e4}) {
            const MeasurementRecord rec = records::make_constant_record(0.0, g, da);
            last = amplitude_gap(kernels::measured_propagator(s, rec), ref);
            ok = ok && last < prev;
            prev = last;
        }
        ok = ok && last <= 1e-6;
    }
    // (b) gravity off
    {
        double prev = 1e300, last = 0.0;
        for (double gm : {1e-4, 1e-6, 1e-8}) {
            ExperimentScenario sg = s;
            sg.source.M = gm;
            ExperimentScenario sf = s;
            sf.source.M = 0.0;
            last = amplitude_gap(kernels::unmeasured_propagator(sg),
                                 kernels::unmeasured_propagator(sf));
            ok = ok && last < prev;
            prev = last;
        }
        ok = ok && last <= 1e-8;
    }
    // (c) R -> infinity at fixed surface gravity: the uniform-field kernel
    // with the purely imaginary squared frequency
    {
        const double g_surf = 0.5, da = 2.0, T = s.endpoints.duration();
        double prev = 1e300;
        for (double R : {1e2, 1e4, 1e6}) {
            ExperimentScenario sr = s;
            sr.source.R = R;
            sr.source.M = g_surf * R * R;
            const GridSpec grid{0.0, T, 1001};
            const MeasurementRecord rec = records::make_constant_record(0.0, grid, da);
            LogComplex meas = kernels::longitudinal_measured(sr, rec).eval(0.1, 0.2);
            meas.phase -= sr.source.M * T / R;  // constant-offset phase
            const Complex om_hom = std::sqrt(Complex(0.0, 4.0 / (T * da * da)));
            const LogComplex hom = kernels::driven_oscillator_kernel(
                1.0, om_hom, Complex(-g_surf, 0.0), nullptr, 0.1, 0.2, T, sr.constants);
            const double err = amplitude_gap(meas, hom);
            ok = ok && err < prev;
            prev = err;
        }
    }
    report(3, "monitored->unmonitored<=1e-6, gravity-off<=1e-8, uniform-field monotone", ok);
    CHECK(ok);
}

TEST_CASE("4: split-frequency identity at 1e-13 over 1e4 draws") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        ExperimentScenario s;
        s.constants = Constants::toy();
        s.source = GravitySource{std::pow(10.0, u(rng)), std::pow(10.0, u(rng))};
        s.particle = Particle{std::pow(10.0, u(rng))};
        s.endpoints.tau_end = std::pow(10.0, u(rng));
        const double res = std::pow(10.0, u(rng));
        for (BeamBranch br : {BeamBranch::alpha, BeamBranch::beta}) {
            const SplitFrequency f = interference::split_frequency(s, res, br);
            const double w0sq = 2.0 * s.constants.G * s.source.M / std::pow(s.source.R, 3.0);
            const Complex rhs =
                w0sq * Complex(1.0, (br == BeamBranch::alpha ? 1.0 : -1.0) * f.gamma_param);
            worst = std::max(worst,
                             std::abs(f.as_complex() * f.as_complex() - rhs) / std::abs(rhs));
        }
    }
    const bool ok = worst <= 1e-13;
    char msg[120];
    std::snprintf(msg, sizeof msg, "(tilde+i*check)^2 identity, worst %.2e <= 1e-13", worst);
    report(4, msg, ok);
    CHECK(ok);
}

TEST_CASE("5: kernel semigroup at the quadrature tolerance 1e-6") {
    const ExperimentScenario s = testsup::toy_scenario();
    ExperimentScenario half = s;
    half.endpoints.tau_end = s.endpoints.tau_start + 0.5 * s.endpoints.duration();
    const kernels::LongitudinalKernel kh = kernels::longitudinal_unmeasured(half);
    const kernels::LongitudinalKernel kf = kernels::longitudinal_unmeasured(s);
    double worst = 0.0;
    for (auto [a, b] : {std::pair{0.1, 0.2}, std::pair{-0.6, 0.9}, std::pair{0.0, 0.0}}) {
        const LogComplex comp = oracle::compose_kernels(kh, kh, a, b, 2001);
        worst = std::max(worst, amplitude_gap(comp, kf.eval(a, b)));
    }
    const bool ok = worst <= 1e-6;
    char msg[120];
    std::snprintf(msg, sizeof msg, "T/2+T/2 composition, worst %.2e <= 1e-6", worst);
    report(5, msg, ok);
    CHECK(ok);
}

TEST_CASE("6: trivial interference zeros at 1e-12") {
    const ExperimentScenario s = testsup::toy_scenario();
    const GridSpec g{0.0, s.endpoints.duration(), 1001};
    BeamPair same;
    same.scenario = s;
    same.record_alpha = records::make_free_fall_record(0.2, 0.1, 0.5, g, 2.0);
    same.record_beta = same.record_alpha;
    const double phase = std::abs(interference::direct_cross_phase(same).phase);

    BeamPair zeros;
    zeros.scenario = s;
    zeros.record_alpha = records::make_constant_record(0.0, g, 2.0);
    zeros.record_beta = records::make_constant_record(0.0, g, 3.0);
    const double i4 = std::abs(interference::term_I4(zeros));
    const double i5 = std::abs(interference::term_I5(zeros));
    const bool ok = phase <= 1e-12 && i4 <= 1e-12 && i5 <= 1e-12;
    report(6, "identical-beam phase and zero-record I4, I5 all <= 1e-12", ok);
    CHECK(ok);
}

TEST_CASE("7: resolution-induced interference exceeds 1e-6") {
    bool found = false;
    double best = 0.0;
    for (const auto& c : testsup::toy_corpus()) {
        if (std::isinf(c.record.resolution)) continue;
        BeamPair p;
        p.scenario = c.scenario;
        p.record_alpha = c.record;
        MeasurementRecord beta = c.record;  // same record, coarser device
        beta.resolution *= 2.0;
        p.record_beta = beta;
        const double phase = std::abs(interference::direct_cross_phase(p).phase);
        best = std::max(best, phase);
        found = found || phase > 1e-6;
    }
    char msg[120];
    std::snprintf(msg, sizeof msg, "same records, unequal resolutions: |phase| %.2e > 1e-6",
                  best);
    report(7, msg, found);
    CHECK(found);
}

TEST_CASE("8: quadrature orders (Simpson 12x, CN 3.5x, slicing 3.5x)") {
    bool ok = true;
    // Simpson
    auto value_at = [](int n) {
        const MeasurementRecord rec =
            records::make_sinusoid_record(1.0, 9.0, 0.3, GridSpec{0.0, 1.0, n}, 1.0);
        return records::functional_F(1, rec, Complex(1.2, 0.8), 0.0, 1.0).value;
    };
    const Complex ref = value_at(16001);
    const double simpson_ratio = std::abs(value_at(101) - ref) / std::abs(value_at(201) - ref);
    ok = ok && simpson_ratio >= 12.0;
    // Crank-Nicolson
    const auto corpus = testsup::toy_corpus();
    const auto& c = corpus[2];
    const ExperimentScenario& s = c.scenario;
    const double kappa = 2.0 / (s.endpoints.duration() * c.record.resolution *
                                c.record.resolution);
    const SpatialGrid grid{-12.0, 12.0, 2001};
    const WavePacket psi0 = oracle::gaussian_packet(grid, 0.15, 1.2, 0.3, 1.0);
    EffectiveHamiltonianSpec spec;
    spec.potential = kernels::potential_expansion(s.source, s.particle, s.constants);
    spec.measurement_strength = kappa;
    spec.record = c.record;
    const double T = s.endpoints.duration();
    const WavePacket fine = oracle::evolve(spec, psi0, 1.0, 1.0, T, 12800);
    const double cn_ratio =
        oracle::compare_l2(fine, oracle::evolve(spec, psi0, 1.0, 1.0, T, 400))
            .relative_l2_unaligned /
        oracle::compare_l2(fine, oracle::evolve(spec, psi0, 1.0, 1.0, T, 800))
            .relative_l2_unaligned;
    ok = ok && cn_ratio >= 3.5;
    // time slicing
    const Complex exact = kernels::longitudinal_unmeasured(s)
                              .eval(s.endpoints.l_P, s.endpoints.l_Q)
                              .to_complex();
    auto err = [&](int n) {
        return std::abs(oracle::time_sliced_kernel(s, n).kernel_n.to_complex() - exact);
    };
    const double sliced_ratio = std::min(err(64) / err(128), err(128) / err(256));
    ok = ok && sliced_ratio >= 3.5;
    char msg[160];
    std::snprintf(msg, sizeof msg, "Simpson %.1fx >= 12, CN %.2fx >= 3.5, slicing %.2fx >= 3.5",
                  simpson_ratio, cn_ratio, sliced_ratio);
    report(8, msg, ok);
    CHECK(ok);
}

TEST_CASE("9: comparison table finite and byte-reproducible") {
    const fs::path d1 = fs::temp_directory_path() / "gravmeas_acc_table1";
    const fs::path d2 = fs::temp_directory_path() / "gravmeas_acc_table2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    const RunResult r1 = run_cli("verify --filter i_table --out " + d1.string());
    const RunResult r2 = run_cli("verify --filter i_table --out " + d2.string());
    bool ok = r1.exit_code == 0 && r2.exit_code == 0;
    const std::string t1 = slurp(d1 / "i_table.csv");
    ok = ok && t1 == slurp(d2 / "i_table.csv");
    // all data cells finite
    std::istringstream in(t1);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        while (std::getline(row, cell, ','))
            ok = ok && std::isfinite(std::strtod(cell.c_str(), nullptr));
    }
    ok = ok && rows >= 5;
    report(9, "I1..I5 vs direct-phase table: finite values, byte-identical reruns", ok);
    CHECK(ok);
}

TEST_CASE("10: SI-scale evaluation is overflow-free up to 2*Omega_tilde*T = 500") {
    ExperimentScenario s;
    s.source = GravitySource{5.9722e24, 6.371e6};
    s.particle = Particle{1.675e-27};
    s.endpoints.l_P = 1e-6;
    s.endpoints.l_Q = 2e-6;
    s.endpoints.tau_end = 1.0;
    const double Om = kernels::classical_frequency(s.source, s.constants);
    bool ok = true;
    for (double twt : {50.0, 100.0, 250.0, 500.0}) {
        const double gamma = 2.0 * std::pow(0.5 * twt / Om, 2.0);
        const double res = testsup::resolution_for_gamma(s, gamma);
        const GridSpec g{0.0, 1.0, 401};
        BeamPair p;
        p.scenario = s;
        p.record_alpha = records::make_constant_record(1e-7, g, res);
        p.record_beta = records::make_constant_record(1e-7, g, res * 1.3);
        ok = ok && kernels::measured_propagator(s, p.record_alpha).finite();
        const InterferenceReport rep = interference::interference_report(p);
        for (double v : {rep.I1, rep.I2, rep.I3, rep.I4, rep.I5, rep.I_total,
                         rep.direct_phase, rep.direct_log_contrast, rep.deviation})
            ok = ok && std::isfinite(v);
        // confirm the regime actually reached the target
        const SplitFrequency f =
            interference::split_frequency(s, res, BeamBranch::alpha);
        ok = ok && 2.0 * f.tilde * 1.0 >= 0.9 * twt;
    }
    report(10, "log-domain paths finite for 2*Omega_tilde*T in {50,100,250,500}", ok);
    CHECK(ok);
}
