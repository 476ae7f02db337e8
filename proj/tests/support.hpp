#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gravmeas/domain.hpp"
#include "gravmeas/kernels.hpp"
#include "gravmeas/oracle.hpp"
#include "gravmeas/records.hpp"

namespace testsup {

using namespace gravmeas;

// Toy-unit scenario: hbar = m = 1, GM = 0.5, R = 1, so the classical growth
// rate is exactly 1 and gamma_tilde = (2/0.15)/dalpha^2.
inline ExperimentScenario toy_scenario(double T = 0.3, double l_P = 0.1, double l_Q = 0.2) {
    ExperimentScenario s;
    s.constants = Constants::toy();
    s.source = GravitySource{0.5, 1.0};
    s.particle = Particle{1.0};
    s.endpoints.l_P = l_P;
    s.endpoints.l_Q = l_Q;
    s.endpoints.tau_start = 0.0;
    s.endpoints.tau_end = T;
    s.validity_ratio = 1.0;  // grid oracles roam far beyond |l| << R
    return s;
}

inline double resolution_for_gamma(const ExperimentScenario& s, double gamma_tilde) {
    if (gamma_tilde == 0.0) return std::numeric_limits<double>::infinity();
    const double GM = s.constants.G * s.source.M;
    const double R3 = std::pow(s.source.R, 3.0);
    return std::sqrt(2.0 * s.constants.hbar * R3 /
                     (GM * s.particle.m * s.endpoints.duration() * gamma_tilde));
}

struct ToyCase {
    std::string name;
    double gamma_tilde;
    ExperimentScenario scenario;
    MeasurementRecord record;
};

inline std::vector<ToyCase> toy_corpus() {
    std::vector<ToyCase> out;
    auto add = [&](const std::string& name, double g, const std::string& kind) {
        ToyCase c{name, g, toy_scenario(), {}};
        const double res = resolution_for_gamma(c.scenario, g);
        const GridSpec grid{0.0, c.scenario.endpoints.duration(), 1001};
        if (kind == "zero")
            c.record = records::make_constant_record(0.0, grid, res);
        else if (kind == "constant")
            c.record = records::make_constant_record(0.15, grid, res);
        else if (kind == "free_fall")
            c.record = records::make_free_fall_record(0.2, 0.1, 0.5, grid, res);
        else
            c.record = records::make_sinusoid_record(0.2, 14.66, 0.4, grid, res);
        out.push_back(std::move(c));
    };
    add("g0_zero", 0.0, "zero");
    add("g05_zero", 0.5, "zero");
    add("g05_constant", 0.5, "constant");
    add("g2_free_fall", 2.0, "free_fall");
    add("g2_sinusoid", 2.0, "sinusoid");
    add("g2_constant", 2.0, "constant");
    return out;
}

// Crank-Nicolson evolution against the closed-form kernel convolution for
// one corpus entry; both sides carry absolute normalisation and phase.
inline oracle::L2Comparison cn_vs_closed(const ToyCase& c, int grid_n = 4001, int steps = 1200) {
    const ExperimentScenario& s = c.scenario;
    const double T = s.endpoints.duration();
    const double kappa = std::isinf(c.record.resolution)
                             ? 0.0
                             : 2.0 * s.constants.hbar /
                                   (T * c.record.resolution * c.record.resolution);
    SpatialGrid grid{-12.0, 12.0, grid_n};
    WavePacket psi0 = oracle::gaussian_packet(grid, 0.15, 1.2, 0.3, s.constants.hbar);

    EffectiveHamiltonianSpec spec;
    spec.potential = kernels::potential_expansion(s.source, s.particle, s.constants);
    spec.measurement_strength = kappa;
    spec.record = c.record;
    const WavePacket cn = oracle::evolve(spec, psi0, s.particle.m, s.constants.hbar, T, steps);

    const kernels::LongitudinalKernel k = kernels::longitudinal_measured(s, c.record);
    const WavePacket cf = oracle::propagate_closed_form(
        [&k](double a, double b) { return k.eval(a, b); }, psi0);
    return oracle::compare_l2(cn, cf);
}

}  // namespace testsup
