#include "gravmeas/cow.hpp"

#include <cmath>
#include <cstdio>

namespace gravmeas::cow {

namespace {
constexpr double kThermalNeutronMass = 1.675e-27;  // kg
constexpr double kDefaultFlightTime = 1.0;         // s
}  // namespace

CowResult cow_phase(const CowSetup& setup, const GravitySource& src, const Particle& p,
                    const Constants& c) {
    const double g = domain::surface_gravity(src, c);
    const double correction = setup.include_correction ? (1.0 - setup.l_b / src.R) : 1.0;
    const double phase = -g * p.m * p.m * setup.L * setup.l_b * setup.Lambda /
                         (c.hbar * c.hbar) * correction;
    return CowResult{phase, std::cos(phase), correction};
}

RDependenceReport r_dependence_comparison(const CowSetup& setup, const BeamPair& pair,
                                          const std::vector<double>& heights) {
    const GravitySource src = pair.scenario.source;
    const Particle p = pair.scenario.particle;
    const Constants c = pair.scenario.constants;

    auto at_radius = [&](double R) {
        GravitySource s2 = src;
        s2.R = R;
        return cow_phase(setup, s2, p, c).phase;
    };
    auto terms_at_radius = [&](double R, double& i1, double& i2, double& i3) {
        BeamPair p2 = pair;
        p2.scenario.source.R = R;
        i1 = interference::term_I1(p2);
        i2 = interference::term_I2(p2);
        i3 = interference::term_I3(p2);
    };

    RDependenceReport rep;
    // phase(R) = -C (1/R^2 - l_b/R^3), C = GM m^2 L l_b Lambda / hbar^2
    const double C = c.G * src.M * p.m * p.m * setup.L * setup.l_b * setup.Lambda /
                     (c.hbar * c.hbar);
    const double R = src.R;
    rep.cow_phase_derivative =
        C * (2.0 / (R * R * R) -
             (setup.include_correction ? 3.0 * setup.l_b / (R * R * R * R) : 0.0));

    const double phase0 = at_radius(R);
    double i1_0, i2_0, i3_0;
    terms_at_radius(R, i1_0, i2_0, i3_0);
    for (double h : heights) {
        RDependencePoint pt;
        pt.R_tilde = h;
        pt.delta_cow_phase = at_radius(R + h) - phase0;
        double i1, i2, i3;
        terms_at_radius(R + h, i1, i2, i3);
        pt.delta_I1 = i1 - i1_0;
        pt.delta_I2 = i2 - i2_0;
        pt.delta_I3 = i3 - i3_0;
        rep.points.push_back(pt);
    }
    return rep;
}

EstimateResult paul_trap_estimate(const GravitySource& src, std::optional<Particle> particle,
                                  std::optional<double> flight_time, double delta_alpha,
                                  const Constants& c) {
    EstimateResult r;
    double m;
    if (particle) {
        m = particle->m;
    } else {
        m = kThermalNeutronMass;
        char buf[96];
        std::snprintf(buf, sizeof buf, "particle mass defaulted to thermal neutron %.4g kg", m);
        r.assumptions.emplace_back(buf);
    }
    double T;
    if (flight_time) {
        T = *flight_time;
    } else {
        T = kDefaultFlightTime;
        r.assumptions.emplace_back("flight time T defaulted to 1 s");
    }
    const double GM = c.G * src.M;
    const double R3 = src.R * src.R * src.R;
    r.gamma_tilde = 2.0 * c.hbar * R3 / (GM * m * T * delta_alpha * delta_alpha);
    r.sqrt_gamma = std::sqrt(r.gamma_tilde);
    r.frequency_bound = std::sqrt(2.0 * GM / R3) *
                        std::pow(1.0 + r.gamma_tilde * r.gamma_tilde, 0.25);
    return r;
}

}  // namespace gravmeas::cow
