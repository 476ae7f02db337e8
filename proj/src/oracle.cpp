#include "gravmeas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gravmeas/errors.hpp"
#include "gravmeas/quadrature.hpp"

namespace gravmeas {

double WavePacket::norm() const {
    double s = 0.0;
    for (const Complex& v : amplitude) s += std::norm(v);
    return std::sqrt(s * grid.spacing());
}

namespace oracle {

namespace {
const Complex kI(0.0, 1.0);
}

WavePacket gaussian_packet(const SpatialGrid& g, double center, double width, double momentum,
                           double hbar) {
    WavePacket p{g, std::vector<Complex>(g.n_points)};
    const double norm0 = std::pow(M_PI * width * width, -0.25);
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.point(i);
        const double d = x - center;
        p.amplitude[i] = norm0 * std::exp(-d * d / (2.0 * width * width)) *
                         std::exp(kI * (momentum * x / hbar));
    }
    const double n = p.norm();
    for (Complex& v : p.amplitude) v /= n;
    return p;
}

WavePacket evolve(const EffectiveHamiltonianSpec& spec, const WavePacket& packet, double mass,
                  double hbar, double duration, int steps, const SnapshotObserver& observer,
                  int snapshot_every) {
    if (steps < 100) throw GridMismatch("evolve needs at least 100 steps");
    const SpatialGrid& g = packet.grid;
    if (g.n_points < 64) throw GridMismatch("spatial grid needs at least 64 points");
    if (spec.measurement_strength > 0.0 && !spec.record)
        throw GridMismatch("monitored evolution needs a record");

    const int n = g.n_points;
    const double dx = g.spacing();
    const double dt = duration / steps;
    const Complex sigma = kI * dt / (2.0 * hbar);
    const double kin = hbar * hbar / (2.0 * mass * dx * dx);

    std::vector<double> vre(n);
    for (int i = 0; i < n; ++i) {
        const double x = g.point(i);
        vre[i] = spec.potential.V0 + spec.potential.V1 * x + spec.potential.V2 * x * x;
    }

    std::vector<Complex> psi = packet.amplitude;
    psi.front() = psi.back() = Complex(0.0);
    std::vector<Complex> diag(n), rhs(n), cp(n);

    const double t0 = spec.record ? spec.record->t_start() : 0.0;
    for (int s = 0; s < steps; ++s) {
        const double tmid = t0 + (s + 0.5) * dt;
        const double alpha =
            spec.measurement_strength > 0.0 ? spec.record->value_at(tmid) : 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = g.point(i) - alpha;
            const Complex v(vre[i], -spec.measurement_strength * d * d);
            diag[i] = 1.0 + sigma * (2.0 * kin + v);
            const Complex rdiag = 1.0 - sigma * (2.0 * kin + v);
            const Complex left = (i > 0) ? psi[i - 1] : Complex(0.0);
            const Complex right = (i + 1 < n) ? psi[i + 1] : Complex(0.0);
            rhs[i] = sigma * kin * (left + right) + rdiag * psi[i];
        }
        // Thomas solve over the interior, Dirichlet walls pinned to zero
        const Complex off = -sigma * kin;
        cp[1] = off / diag[1];
        rhs[1] = rhs[1] / diag[1];
        for (int i = 2; i + 1 < n; ++i) {
            const Complex m = diag[i] - off * cp[i - 1];
            cp[i] = off / m;
            rhs[i] = (rhs[i] - off * rhs[i - 1]) / m;
        }
        psi[n - 2] = rhs[n - 2];
        for (int i = n - 3; i >= 1; --i) psi[i] = rhs[i] - cp[i] * psi[i + 1];
        psi.front() = psi.back() = Complex(0.0);

        double peak = 0.0;
        for (int i = 0; i < n; ++i) peak = std::max(peak, std::abs(psi[i]));
        const double edge = std::max(std::abs(psi[1]), std::abs(psi[n - 2]));
        if (edge > 1e-8 * peak)
            throw BoundaryLeak("wave packet reached the grid boundary", edge / peak);
        if (observer && snapshot_every > 0 && (s + 1) % snapshot_every == 0)
            observer(s + 1, WavePacket{g, psi});
    }
    return WavePacket{g, std::move(psi)};
}

void save_packet_csv(const WavePacket& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GridMismatch("cannot open snapshot file: " + path);
    out << "l_m,re,im\n";
    char lb[40], rb[40], ib[40];
    for (int i = 0; i < p.grid.n_points; ++i) {
        std::snprintf(lb, sizeof lb, "%.17g", p.grid.point(i));
        std::snprintf(rb, sizeof rb, "%.17g", p.amplitude[i].real());
        std::snprintf(ib, sizeof ib, "%.17g", p.amplitude[i].imag());
        out << lb << "," << rb << "," << ib << "\n";
    }
}

namespace {

WavePacket convolve(const KernelFn& kernel, const WavePacket& packet, bool parallel) {
    const SpatialGrid& g = packet.grid;
    const int n = g.n_points;
    const double h = g.spacing();
    const std::vector<double> w = quad::sample_weights(n, h);
    WavePacket out{g, std::vector<Complex>(n)};
#pragma omp parallel for schedule(static) if (parallel)
    for (int b = 0; b < n; ++b) {
        const double lb = g.point(b);
        Complex acc(0.0);
        for (int a = 0; a < n; ++a) {
            if (packet.amplitude[a] == Complex(0.0)) continue;
            acc += w[a] * kernel(g.point(a), lb).to_complex() * packet.amplitude[a];
        }
        out.amplitude[b] = acc;
    }
    return out;
}

}  // namespace

WavePacket propagate_closed_form(const KernelFn& kernel, const WavePacket& packet) {
    return convolve(kernel, packet, true);
}

WavePacket reference::propagate_closed_form_serial(const KernelFn& kernel,
                                                   const WavePacket& packet) {
    return convolve(kernel, packet, false);
}

namespace {

// exp(c_bb b^2 + c_ab a b + c_aa a^2 + c_b b + c_a a + c0)
struct QuadKernel {
    Complex c_bb, c_ab, c_aa, c_b, c_a, c0;
};

QuadKernel short_time_slice(double mass, double hbar, const PotentialExpansion& v, double eps) {
    QuadKernel k;
    const Complex i_over_h = kI / hbar;
    k.c_bb = kI * mass / (2.0 * hbar * eps) - i_over_h * (eps / 2.0) * v.V2;
    k.c_aa = k.c_bb;
    k.c_ab = -kI * mass / (hbar * eps);
    k.c_b = -i_over_h * (eps / 2.0) * v.V1;
    k.c_a = k.c_b;
    k.c0 = -i_over_h * eps * v.V0 + 0.5 * std::log(mass / (2.0 * M_PI * hbar * eps)) -
           kI * (M_PI / 4.0);
    return k;
}

// integral over the intermediate point of k2(b, x) k1(x, a) dx, exact
QuadKernel compose(const QuadKernel& k2, const QuadKernel& k1) {
    const Complex P = k1.c_bb + k2.c_aa;
    if (std::abs(P) < 1e-300) throw SingularKernel("degenerate slice composition");
    const Complex A1 = k1.c_ab, A2 = k2.c_ab, B0 = k1.c_b + k2.c_a;
    QuadKernel r;
    r.c_aa = k1.c_aa - A1 * A1 / (4.0 * P);
    r.c_bb = k2.c_bb - A2 * A2 / (4.0 * P);
    r.c_ab = -A1 * A2 / (2.0 * P);
    r.c_a = k1.c_a - A1 * B0 / (2.0 * P);
    r.c_b = k2.c_b - A2 * B0 / (2.0 * P);
    r.c0 = k1.c0 + k2.c0 + 0.5 * std::log(-M_PI / P) - B0 * B0 / (4.0 * P);
    return r;
}

LogComplex sliced_kernel_value(const ExperimentScenario& s, int n_slices) {
    const double T = s.endpoints.duration();
    const PotentialExpansion v =
        kernels::potential_expansion(s.source, s.particle, s.constants);
    const double eps = T / n_slices;
    const QuadKernel slice = short_time_slice(s.particle.m, s.constants.hbar, v, eps);
    QuadKernel acc = slice;
    for (int i = 1; i < n_slices; ++i) acc = compose(slice, acc);
    const Complex a(s.endpoints.l_P, 0.0), b(s.endpoints.l_Q, 0.0);
    const Complex W = acc.c_bb * b * b + acc.c_ab * a * b + acc.c_aa * a * a + acc.c_b * b +
                      acc.c_a * a + acc.c0;
    return LogComplex::from_exponent(W);
}

}  // namespace

TimeSlicedResult time_sliced_kernel(const ExperimentScenario& s, int n_slices) {
    if (n_slices < 8 || n_slices % 2 != 0)
        throw GridMismatch("time slicing needs an even count >= 8");
    TimeSlicedResult r;
    r.kernel_n = sliced_kernel_value(s, n_slices);
    r.kernel_half = sliced_kernel_value(s, n_slices / 2);
    const Complex vn = r.kernel_n.to_complex();
    const Complex vh = r.kernel_half.to_complex();
    r.richardson = LogComplex::from(vn + (vn - vh) / 3.0);
    return r;
}

L2Comparison compare_l2(const WavePacket& a, const WavePacket& b) {
    if (a.grid.n_points != b.grid.n_points || a.grid.l_min != b.grid.l_min ||
        a.grid.l_max != b.grid.l_max)
        throw GridMismatch("packets live on different grids");
    const double h = a.grid.spacing();
    Complex overlap(0.0);
    double na2 = 0.0;
    for (size_t i = 0; i < a.amplitude.size(); ++i) {
        overlap += std::conj(a.amplitude[i]) * b.amplitude[i] * h;
        na2 += std::norm(a.amplitude[i]) * h;
    }
    const double offset = std::arg(overlap);
    double aligned = 0.0, unaligned = 0.0;
    const Complex rot = std::exp(-kI * offset);
    for (size_t i = 0; i < a.amplitude.size(); ++i) {
        aligned += std::norm(a.amplitude[i] - rot * b.amplitude[i]) * h;
        unaligned += std::norm(a.amplitude[i] - b.amplitude[i]) * h;
    }
    const double na = std::sqrt(na2);
    return L2Comparison{std::sqrt(aligned) / na, offset, std::sqrt(unaligned) / na};
}

LogComplex compose_kernels(const kernels::LongitudinalKernel& first,
                           const kernels::LongitudinalKernel& second, double l_from, double l_to,
                           int n_points) {
    if (n_points < 64) throw GridMismatch("composition grid needs at least 64 points");
    if (n_points % 2 == 0) ++n_points;
    const Complex a(l_from, 0.0), b(l_to, 0.0);
    auto W = [&](Complex x) { return first.exponent(a, x) + second.exponent(x, b); };
    // quadratic in x; recover the coefficients from three evaluations
    const Complex w0 = W(Complex(0.0));
    const Complex wp = W(Complex(1.0));
    const Complex wm = W(Complex(-1.0));
    const Complex A = 0.5 * (wp + wm) - w0;
    const Complex B = 0.5 * (wp - wm);
    if (std::abs(A) < 1e-300) throw SingularKernel("degenerate kernel composition");
    const Complex xstar = -B / (2.0 * A);
    const double theta = 0.5 * (M_PI - std::arg(A));
    const Complex dir = std::exp(kI * theta);
    const double decay = std::abs(A);
    const double width = 9.0 / std::sqrt(decay);
    const double h = 2.0 * width / (n_points - 1);

    // factor the stationary value out so the summand stays O(1)
    const Complex peak = W(xstar);
    std::vector<Complex> f(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double u = -width + h * i;
        f[i] = std::exp(W(xstar + dir * u) - peak);
    }
    const Complex integral = quad::integrate_samples(f, h) * dir;
    LogComplex out = LogComplex::from(integral);
    out.log_mag += peak.real();
    out.phase += peak.imag();
    return out;
}

}  // namespace oracle
}  // namespace gravmeas
