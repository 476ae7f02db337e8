#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "golden_values.hpp"
#include "gravmeas/cow.hpp"
#include "support.hpp"

using namespace gravmeas;
using namespace gravmeas::cow;

namespace {

const GravitySource kEarth{5.9722e24, 6.371e6};
const Particle kNeutron{1.675e-27};

BeamPair toy_pair() {
    BeamPair p;
    p.scenario = testsup::toy_scenario();
    const GridSpec g{0.0, p.scenario.endpoints.duration(), 401};
    p.record_alpha = records::make_constant_record(
        0.1, g, testsup::resolution_for_gamma(p.scenario, 1.0));
    p.record_beta = records::make_constant_record(
        0.1, g, testsup::resolution_for_gamma(p.scenario, 2.0));
    return p;
}

}  // namespace

TEST_CASE("flat pattern at zero vertical separation") {
    const Constants c;
    const CowSetup setup{1.0, 0.0, 1e-10, true};
    const CowResult r = cow_phase(setup, kEarth, kNeutron, c);
    CHECK(r.phase == 0.0);
    CHECK(r.intensity == 1.0);
}

TEST_CASE("correction factor for a centimetre drop on the Earth") {
    const Constants c;
    const CowSetup setup{1.0, 0.01, 1e-10, true};
    const CowResult r = cow_phase(setup, kEarth, kNeutron, c);
    CHECK(r.correction_factor == doctest::Approx(1.0 - 1.5697e-9).epsilon(1e-13));
}

TEST_CASE("relative difference between corrected and plain phase is l_b/R") {
    const Constants c;
    CowSetup setup{2.0, 137.0, 1.8e-10, true};
    const GravitySource src{3.3e24, 5.5e6};
    const double with = cow_phase(setup, src, kNeutron, c).phase;
    setup.include_correction = false;
    const double without = cow_phase(setup, src, kNeutron, c).phase;
    CHECK((without - with) / without == doctest::Approx(setup.l_b / src.R).epsilon(1e-12));
    CHECK(std::abs(with) < std::abs(without));
}

TEST_CASE("phase is separately linear in L, Lambda and m^2") {
    const Constants c;
    const CowSetup base{1.7, 0.02, 2.2e-10, true};
    const double p0 = cow_phase(base, kEarth, kNeutron, c).phase;
    for (double k : {2.0, 5.5, 0.25}) {
        CowSetup sL = base;
        sL.L *= k;
        CHECK(cow_phase(sL, kEarth, kNeutron, c).phase ==
              doctest::Approx(k * p0).epsilon(1e-14));
        CowSetup sW = base;
        sW.Lambda *= k;
        CHECK(cow_phase(sW, kEarth, kNeutron, c).phase ==
              doctest::Approx(k * p0).epsilon(1e-14));
        const Particle scaled{kNeutron.m * std::sqrt(k)};
        CHECK(cow_phase(base, kEarth, scaled, c).phase ==
              doctest::Approx(k * p0).epsilon(1e-14));
    }
}

TEST_CASE("trap estimate reproduces the reference orders of magnitude") {
    const Constants c;
    const EstimateResult r = paul_trap_estimate(kEarth, kNeutron, 1.0, 2e-6, c);
    CHECK(r.sqrt_gamma == doctest::Approx(golden::estimate_sqrt_gamma).epsilon(1e-12));
    CHECK(r.frequency_bound == doctest::Approx(golden::estimate_bound).epsilon(1e-12));
    CHECK(r.assumptions.empty());
    // order-of-magnitude bands
    CHECK(r.sqrt_gamma >= 0.5e5);
    CHECK(r.sqrt_gamma <= 5e5);
    CHECK(r.frequency_bound >= 0.8e2);
    CHECK(r.frequency_bound <= 8e2);
}

TEST_CASE("defaulted estimate inputs are reported") {
    const Constants c;
    const EstimateResult r = paul_trap_estimate(kEarth, std::nullopt, std::nullopt, 2e-6, c);
    REQUIRE(r.assumptions.size() == 2);
    CHECK(r.sqrt_gamma == doctest::Approx(golden::estimate_sqrt_gamma).epsilon(1e-12));
}

TEST_CASE("doubling the resolution quarters gamma") {
    const Constants c;
    const double g1 = paul_trap_estimate(kEarth, kNeutron, 1.0, 2e-6, c).gamma_tilde;
    const double g2 = paul_trap_estimate(kEarth, kNeutron, 1.0, 4e-6, c).gamma_tilde;
    CHECK(g1 == doctest::Approx(4.0 * g2).epsilon(1e-14));
}

TEST_CASE("toy-unit gamma") {
    const Constants toy = Constants::toy();
    const EstimateResult r =
        paul_trap_estimate(GravitySource{1.0, 1.0}, Particle{1.0}, 1.0, 1.0, toy);
    CHECK(r.gamma_tilde == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("frequency bound falls monotonically to the classical rate") {
    const Constants c;
    double prev = std::numeric_limits<double>::infinity();
    const double w0 = std::sqrt(2.0 * c.G * kEarth.M / std::pow(kEarth.R, 3.0));
    for (double da : {1e-6, 1e-4, 1e-2, 1.0, 1e2}) {
        const double b = paul_trap_estimate(kEarth, kNeutron, 1.0, da, c).frequency_bound;
        CHECK(b < prev);
        CHECK(b >= w0);
        prev = b;
    }
    const double far = paul_trap_estimate(kEarth, kNeutron, 1.0, 1e6, c).frequency_bound;
    CHECK(far == doctest::Approx(w0).epsilon(1e-10));
}

TEST_CASE("height comparison: zero height gives zero deltas") {
    const CowSetup setup{1.0, 0.05, 1e-3, true};
    const BeamPair pair = toy_pair();
    const RDependenceReport rep = r_dependence_comparison(setup, pair, {0.0, 0.01, 0.1});
    REQUIRE(rep.points.size() == 3);
    CHECK(rep.points[0].delta_cow_phase == 0.0);
    CHECK(rep.points[0].delta_I1 == 0.0);
    CHECK(rep.points[0].delta_I2 == 0.0);
    CHECK(rep.points[0].delta_I3 == 0.0);
    CHECK(rep.points[1].delta_I1 != 0.0);
}

TEST_CASE("phase magnitude falls as the radius grows") {
    const Constants toy = Constants::toy();
    const CowSetup setup{1.0, 0.05, 1e-3, true};
    const BeamPair pair = toy_pair();
    const RDependenceReport rep = r_dependence_comparison(setup, pair, {0.05});
    const double phase0 =
        cow_phase(setup, pair.scenario.source, pair.scenario.particle, toy).phase;
    CHECK(phase0 < 0.0);
    CHECK(rep.cow_phase_derivative > 0.0);  // toward zero from below
    // closed-form derivative consistent with the emitted finite difference
    CHECK(rep.points[0].delta_cow_phase ==
          doctest::Approx(rep.cow_phase_derivative * 0.05).epsilon(0.1));
}
