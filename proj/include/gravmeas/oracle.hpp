#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gravmeas/domain.hpp"
#include "gravmeas/kernels.hpp"
#include "gravmeas/logcomplex.hpp"
#include "gravmeas/records.hpp"

namespace gravmeas {

struct SpatialGrid {
    double l_min;
    double l_max;
    int n_points;  // >= 64

    double spacing() const { return (l_max - l_min) / (n_points - 1); }
    double point(int i) const { return l_min + spacing() * i; }
};

struct WavePacket {
    SpatialGrid grid;
    std::vector<Complex> amplitude;

    double norm() const;  // sqrt(sum |psi|^2 * spacing)
};

// Non-Hermitian effective Hamiltonian: the quadratic potential plus the
// imaginary well -i*strength*(l - alpha(t))^2 that the weight functional
// contributes (strength = 2*hbar/(T*dalpha^2); see docs for the two-line
// recasting).
struct EffectiveHamiltonianSpec {
    PotentialExpansion potential;
    double measurement_strength = 0.0;  // J/m^2, 0 iff unmonitored
    std::optional<MeasurementRecord> record;
};

namespace oracle {

// Normalized Gaussian packet with centre, width and mean momentum.
WavePacket gaussian_packet(const SpatialGrid& g, double center, double width, double momentum,
                           double hbar);

// Crank-Nicolson stepping with Dirichlet walls and a boundary-leak detector.
// Unitary (to roundoff) when measurement_strength == 0; the norm decays
// otherwise. The record is interpolated linearly at the half steps.
// `observer`, when set, sees the state after every snapshot_every steps.
using SnapshotObserver = std::function<void(int step, const WavePacket&)>;
WavePacket evolve(const EffectiveHamiltonianSpec& spec, const WavePacket& packet,
                  double mass, double hbar, double duration, int steps,
                  const SnapshotObserver& observer = nullptr, int snapshot_every = 0);

// Three-column dump (l_m, re, im) for offline inspection.
void save_packet_csv(const WavePacket& p, const std::string& path);

// psi'(b) = integral K(a, b) psi(a) da by Simpson over the packet grid.
using KernelFn = std::function<LogComplex(double l_from, double l_to)>;
WavePacket propagate_closed_form(const KernelFn& kernel, const WavePacket& packet);

struct TimeSlicedResult {
    LogComplex kernel_n;       // N slices
    LogComplex kernel_half;    // N/2 slices
    LogComplex richardson;     // second-order extrapolation of the two
};

// Discretized path integral for the vertical coordinate: N short-time
// factors composed by exact Gaussian integration of the intermediate
// points. Exact for the free action at any N; second order in 1/N with the
// potential on.
TimeSlicedResult time_sliced_kernel(const ExperimentScenario& s, int n_slices);

struct L2Comparison {
    double relative_l2;            // after optimal global-phase alignment
    double phase_offset;           // the aligning phase
    double relative_l2_unaligned;  // no alignment (monitored beams keep absolute phase)
};

L2Comparison compare_l2(const WavePacket& a, const WavePacket& b);

// integral K2(x, l_to) K1(l_from, x) dx along the pi/4-rotated line through
// the stationary point; the rotation turns the Fresnel tails into Gaussian
// decay while the quadrature still exercises the kernels pointwise.
LogComplex compose_kernels(const kernels::LongitudinalKernel& first,
                           const kernels::LongitudinalKernel& second, double l_from, double l_to,
                           int n_points);

namespace reference {
WavePacket propagate_closed_form_serial(const KernelFn& kernel, const WavePacket& packet);
}

}  // namespace oracle
}  // namespace gravmeas
