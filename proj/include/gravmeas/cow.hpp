#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gravmeas/domain.hpp"
#include "gravmeas/interference.hpp"

namespace gravmeas {

struct CowSetup {
    double L;       // horizontal separation, m
    double l_b;     // vertical separation, m
    double Lambda;  // initial reduced wavelength, m
    bool include_correction = true;
};

struct CowResult {
    double phase;              // radians
    double intensity;          // cos(phase)
    double correction_factor;  // 1 - l_b/R (1 when disabled)
};

struct EstimateResult {
    double gamma_tilde;
    double sqrt_gamma;
    double frequency_bound;  // sqrt(2GM/R^3) (1 + gamma^2)^(1/4), s^-1
    std::vector<std::string> assumptions;
};

struct RDependencePoint {
    double R_tilde;  // height above the surface, m
    double delta_cow_phase;
    double delta_I1, delta_I2, delta_I3;
};

struct RDependenceReport {
    double cow_phase_derivative;  // d(phase)/dR, closed form, rad/m
    std::vector<RDependencePoint> points;
};

namespace cow {

CowResult cow_phase(const CowSetup& setup, const GravitySource& src, const Particle& p,
                    const Constants& c);

// Phase and I1..I3 responses to raising the apparatus by R_tilde; the two
// families scale very differently with the source geometry.
RDependenceReport r_dependence_comparison(const CowSetup& setup, const BeamPair& pair,
                                          const std::vector<double>& heights);

// Order-of-magnitude feasibility numbers for trap-grade position monitoring.
// Omitted flight time / particle mass fall back to 1 s and the thermal
// neutron mass; every defaulted input is listed in `assumptions`.
EstimateResult paul_trap_estimate(const GravitySource& src, std::optional<Particle> particle,
                                  std::optional<double> flight_time, double delta_alpha,
                                  const Constants& c);

}  // namespace cow
}  // namespace gravmeas
