#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gravmeas/kernels.hpp"
#include "gravmeas/oracle.hpp"
#include "gravmeas/records.hpp"
#include "support.hpp"

using namespace gravmeas;

namespace {

MeasurementRecord wavy_record(int n) {
    MeasurementRecord r = records::make_constant_record(0.0, GridSpec{0.0, 1.0, n}, 1.0);
    for (size_t i = 0; i < r.times.size(); ++i) {
        const double t = r.times[i];
        r.values[i] = 0.3 * std::sin(7.0 * t + 0.2) - 0.1 * std::cos(3.0 * t);
    }
    return r;
}

}  // namespace

TEST_CASE("parallel F3 equals the serial reference") {
    const MeasurementRecord r = wavy_record(401);
    for (Complex W : {Complex(1.3, 0.6), Complex(35.0, 4.0)}) {
        const FunctionalValue par = records::functional_F3(r, W, 0.0, 1.0);
        const FunctionalValue ser = records::reference::functional_F3_serial(r, W, 0.0, 1.0);
        CHECK(par.value_log.log_mag ==
              doctest::Approx(ser.value_log.log_mag).epsilon(1e-13));
        CHECK(std::abs(std::exp(Complex(0.0, par.value_log.phase - ser.value_log.phase)) -
                       1.0) < 1e-12);
    }
}

TEST_CASE("cached nested F1 equals the per-node re-evaluation") {
    const MeasurementRecord r = wavy_record(401);
    for (Complex W : {Complex(0.9, 1.4), Complex(40.0, 2.0)}) {
        const FunctionalValue fast = records::nested_F1_integral(r, W, 0.0, 1.0);
        const FunctionalValue slow =
            records::reference::nested_F1_integral_serial(r, W, 0.0, 1.0);
        CHECK(fast.value_log.log_mag ==
              doctest::Approx(slow.value_log.log_mag).epsilon(1e-12));
        CHECK(std::abs(std::exp(Complex(0.0, fast.value_log.phase - slow.value_log.phase)) -
                       1.0) < 1e-11);
    }
}

TEST_CASE("parallel convolution is bitwise equal to the serial one") {
    const ExperimentScenario s = testsup::toy_scenario();
    const kernels::LongitudinalKernel k = kernels::longitudinal_unmeasured(s);
    const oracle::KernelFn kf = [&k](double a, double b) { return k.eval(a, b); };
    const SpatialGrid g{-10.0, 10.0, 901};
    const WavePacket psi0 = oracle::gaussian_packet(g, 0.1, 1.1, 0.4, 1.0);
    const WavePacket par = oracle::propagate_closed_form(kf, psi0);
    const WavePacket ser = oracle::reference::propagate_closed_form_serial(kf, psi0);
    for (int i = 0; i < g.n_points; ++i) CHECK(par.amplitude[i] == ser.amplitude[i]);
}

TEST_CASE("repeated runs are deterministic") {
    const MeasurementRecord r = wavy_record(401);
    const Complex W(1.1, 0.8);
    const FunctionalValue a = records::functional_F3(r, W, 0.0, 1.0);
    const FunctionalValue b = records::functional_F3(r, W, 0.0, 1.0);
    CHECK(a.value == b.value);
    CHECK(a.value_log.log_mag == b.value_log.log_mag);
    CHECK(a.value_log.phase == b.value_log.phase);

    const ExperimentScenario s = testsup::toy_scenario();
    const GridSpec grid{0.0, 0.3, 401};
    const MeasurementRecord rec = records::make_sinusoid_record(0.2, 14.66, 0.4, grid, 2.0);
    const LogComplex u1 = kernels::measured_propagator(s, rec);
    const LogComplex u2 = kernels::measured_propagator(s, rec);
    CHECK(u1.log_mag == u2.log_mag);
    CHECK(u1.phase == u2.phase);
}
