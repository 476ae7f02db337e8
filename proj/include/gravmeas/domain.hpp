#pragma once

#include <string>
#include <vector>

namespace gravmeas {

// Physical constants. Defaults are CODATA; overridable (G = hbar = 1 for
// toy-unit runs, where grid oracles are actually feasible).
struct Constants {
    double G = 6.67430e-11;         // m^3 kg^-1 s^-2
    double hbar = 1.054571817e-34;  // J s

    static Constants toy() { return Constants{1.0, 1.0}; }
};

struct GravitySource {
    double M;  // kg
    double R;  // m
};

struct Particle {
    double m;  // kg
};

struct PathEndpoints {
    double x_P = 0.0, y_P = 0.0, l_P = 0.0;  // m
    double x_Q = 0.0, y_Q = 0.0, l_Q = 0.0;  // m
    double tau_start = 0.0;                  // s
    double tau_end = 0.0;                    // s

    double duration() const { return tau_end - tau_start; }
};

struct ExperimentScenario {
    Constants constants;
    GravitySource source;
    Particle particle;
    PathEndpoints endpoints;
    // Bound on |l|/R for the second-order expansion of the potential to be
    // trusted. Exceeding it flags the scenario, it does not reject it.
    double validity_ratio = 0.01;
};

struct ValidationResult {
    bool pass = true;
    std::vector<std::string> violations;
};

namespace domain {

// Pure check; violations are data, not faults.
ValidationResult validate_scenario(const ExperimentScenario& s);

// g = GM/R^2
double surface_gravity(const GravitySource& s, const Constants& c);

}  // namespace domain
}  // namespace gravmeas
