// Timings of the OpenMP kernels against their serial references.
// Build target: bench_kernels; not part of the test suite.

#include <chrono>
#include <cstdio>
#include <functional>

#include "gravmeas/kernels.hpp"
#include "gravmeas/oracle.hpp"
#include "gravmeas/records.hpp"

using namespace gravmeas;
namespace chrono = std::chrono;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    // warm-up
    fn();
    const auto t0 = chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = chrono::steady_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

ExperimentScenario toy() {
    ExperimentScenario s;
    s.constants = Constants::toy();
    s.source = GravitySource{0.5, 1.0};
    s.particle = Particle{1.0};
    s.endpoints.l_P = 0.1;
    s.endpoints.l_Q = 0.2;
    s.endpoints.tau_end = 0.3;
    s.validity_ratio = 1.0;
    return s;
}

}  // namespace

int main() {
    const ExperimentScenario s = toy();
    const GridSpec g{0.0, 0.3, 801};
    const MeasurementRecord rec = records::make_sinusoid_record(0.2, 14.66, 0.4, g, 2.0);
    const Complex W(1.27, 0.79);

    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial ms", "omp ms", "speedup");

    {
        const double ts = time_ms(
            [&] { records::reference::functional_F3_serial(rec, W, 0.0, 0.3); }, 3);
        const double tp = time_ms([&] { records::functional_F3(rec, W, 0.0, 0.3); }, 3);
        std::printf("%-28s %10.2f %10.2f %8.2f\n", "functional_F3 (801 pts)", ts, tp,
                    ts / tp);
    }
    {
        const double ts = time_ms(
            [&] { records::reference::nested_F1_integral_serial(rec, W, 0.0, 0.3); }, 3);
        const double tp = time_ms([&] { records::nested_F1_integral(rec, W, 0.0, 0.3); }, 3);
        std::printf("%-28s %10.2f %10.2f %8.2f\n", "nested_F1 (cached vs N^2)", ts, tp,
                    ts / tp);
    }
    {
        const SpatialGrid grid{-12.0, 12.0, 2001};
        const WavePacket psi0 = oracle::gaussian_packet(grid, 0.15, 1.2, 0.3, 1.0);
        const kernels::LongitudinalKernel k = kernels::longitudinal_measured(s, rec);
        const oracle::KernelFn kf = [&k](double a, double b) { return k.eval(a, b); };
        const double ts = time_ms(
            [&] { oracle::reference::propagate_closed_form_serial(kf, psi0); }, 2);
        const double tp = time_ms([&] { oracle::propagate_closed_form(kf, psi0); }, 2);
        std::printf("%-28s %10.2f %10.2f %8.2f\n", "convolution (2001 pts)", ts, tp,
                    ts / tp);
    }
    {
        const SpatialGrid grid{-12.0, 12.0, 2001};
        const WavePacket psi0 = oracle::gaussian_packet(grid, 0.15, 1.2, 0.3, 1.0);
        EffectiveHamiltonianSpec spec;
        spec.potential = kernels::potential_expansion(s.source, s.particle, s.constants);
        spec.measurement_strength = 1.0;
        spec.record = rec;
        const double t =
            time_ms([&] { oracle::evolve(spec, psi0, 1.0, 1.0, 0.3, 600); }, 2);
        std::printf("%-28s %10s %10.2f %8s\n", "crank_nicolson (serial)", "-", t, "-");
    }
    return 0;
}
