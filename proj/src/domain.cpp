#include "gravmeas/domain.hpp"

#include <algorithm>
#include <cmath>

namespace gravmeas::domain {

ValidationResult validate_scenario(const ExperimentScenario& s) {
    ValidationResult r;
    auto fail = [&r](const std::string& msg) {
        r.pass = false;
        r.violations.push_back(msg);
    };

    if (!(s.constants.G > 0.0)) fail("non-positive gravitational constant");
    if (!(s.constants.hbar > 0.0)) fail("non-positive hbar");
    if (!(s.source.M > 0.0)) fail("non-positive source mass");
    if (!(s.source.R > 0.0)) fail("non-positive source radius");
    if (!(s.particle.m > 0.0)) fail("non-positive particle mass");
    if (!(s.endpoints.duration() > 0.0)) fail("non-positive duration");
    if (!(s.validity_ratio > 0.0)) fail("non-positive validity ratio");

    if (s.source.R > 0.0) {
        const double lmax = std::max(std::abs(s.endpoints.l_P), std::abs(s.endpoints.l_Q));
        if (lmax > s.validity_ratio * s.source.R) fail("approximation regime violated");
    }
    return r;
}

double surface_gravity(const GravitySource& s, const Constants& c) {
    return c.G * s.M / (s.R * s.R);
}

}  // namespace gravmeas::domain
