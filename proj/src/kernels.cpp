#include "gravmeas/kernels.hpp"

#include <cmath>
#include <limits>

#include "gravmeas/errors.hpp"
#include "gravmeas/quadrature.hpp"

namespace gravmeas::kernels {

namespace {

constexpr double kSinhTol = 1e-12;  // |sinh(omega*T)| below this is a caustic
const Complex kI(0.0, 1.0);

// tanh(z/2)/w with the w -> 0 limit T/2 (z = w*T).
Complex p1_ratio(Complex w, double T) {
    const Complex z = w * T;
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        return T * (0.5 - z2 / 24.0 + z2 * z2 / 240.0);
    }
    return tanh_half(z) / w;
}

// (T/2 - tanh(z/2)/w)/w^2 with the w -> 0 limit T^3/24.
Complex p2_ratio(Complex w, double T) {
    const Complex z = w * T;
    if (std::abs(z) < 1e-3) {
        const Complex z2 = z * z;
        return T * T * T * (1.0 / 24.0 - z2 / 240.0);
    }
    return (0.5 * T - tanh_half(z) / w) / (w * w);
}

void check_duration(double T) {
    if (!(T > 0.0)) throw SingularKernel("non-positive propagation duration");
}

void check_caustic(Complex omega, double T) {
    if (omega == Complex(0.0, 0.0)) return;  // free case, no sinh division survives
    const Complex z = omega * T;
    if (log_sinh(z).log_mag < std::log(kSinhTol))
        throw SingularKernel("sinh(omega*T) below tolerance (caustic)");
}

// Endpoint-quadratic part of the exponent: (i*m/2hbar)[(b-a)^2 q1 + 2ab q2].
Complex endpoint_part(double mass, double hbar, Complex q1, Complex q2, Complex a, Complex b) {
    return (kI * mass / (2.0 * hbar)) * ((b - a) * (b - a) * q1 + 2.0 * a * b * q2);
}

}  // namespace

PotentialExpansion potential_expansion(const GravitySource& s, const Particle& p,
                                       const Constants& c) {
    const double GMm = c.G * s.M * p.m;
    return PotentialExpansion{-GMm / s.R, GMm / (s.R * s.R), -GMm / (s.R * s.R * s.R)};
}

double classical_frequency(const GravitySource& s, const Constants& c) {
    return std::sqrt(2.0 * c.G * s.M / (s.R * s.R * s.R));
}

LogComplex free_transverse_factor(const PathEndpoints& e, const Particle& p, const Constants& c) {
    const double T = e.duration();
    check_duration(T);
    const double dx = e.x_Q - e.x_P;
    const double dy = e.y_Q - e.y_P;
    const double log_mag = std::log(p.m / (2.0 * M_PI * c.hbar * T));
    const double phase = p.m * (dx * dx + dy * dy) / (2.0 * c.hbar * T) - M_PI / 2.0;
    return LogComplex(log_mag, phase);
}

EffectiveParameters effective_parameters(const ExperimentScenario& s, double delta_alpha) {
    if (!(delta_alpha > 0.0)) throw SingularKernel("non-positive measurement resolution");
    const double T = s.endpoints.duration();
    check_duration(T);
    const Constants& c = s.constants;
    const double GM = c.G * s.source.M;
    const double R = s.source.R;
    const double m = s.particle.m;
    const double w0sq = 2.0 * GM / (R * R * R);
    const double meas = std::isinf(delta_alpha)
                            ? 0.0
                            : 4.0 * c.hbar / (m * T * delta_alpha * delta_alpha);
    EffectiveParameters ep;
    ep.force_const = Complex(-GM * m / (R * R), 0.0);
    ep.omega_hat_sq = Complex(-w0sq, -meas);
    // gamma_tilde = 2 hbar R^3/(GM m T dalpha^2) = meas/w0sq
    ep.gamma = Complex(0.0, meas / w0sq);
    // (2GM/R^3)(1+gamma) written as w0sq + i*meas so GM -> 0 stays finite
    ep.Omega_hat = std::sqrt(Complex(w0sq, meas));
    return ep;
}

LogComplex driven_oscillator_kernel(double mass, Complex omega, Complex const_force,
                                    const ComplexForceRecord* force, double l_from, double l_to,
                                    double T, const Constants& c) {
    check_duration(T);
    // the kernel is even in omega; normalise to Re >= 0
    if (omega.real() < 0.0 || (omega.real() == 0.0 && omega.imag() < 0.0)) omega = -omega;
    const Complex z = omega * T;
    check_caustic(omega, T);
    if (force && omega == Complex(0.0, 0.0))
        throw SingularKernel("sampled force requires a nonzero frequency");

    const double hbar = c.hbar;
    Complex E = endpoint_part(mass, hbar, omega_coth(omega, T), omega_tanh_half(omega, T),
                              l_from, l_to);

    if (!force) {
        if (const_force != Complex(0.0, 0.0)) {
            const Complex p1 = p1_ratio(omega, T);
            const Complex p2 = p2_ratio(omega, T);
            E += (kI / hbar) *
                 (const_force * p1 * (l_from + l_to) - const_force * const_force / mass * p2);
        }
    } else {
        const size_t n = force->values.size();
        if (n < 3) throw GridMismatch("force record needs at least 3 samples");
        const double h = force->duration / static_cast<double>(n - 1);
        const LogComplex ls = log_sinh(z);
        auto ratio1 = [&](double u) {  // sinh(omega*u)/sinh(omega*T)
            return (log_sinh(omega * u) / ls).to_complex();
        };
        std::vector<Complex> ftot(n);
        for (size_t i = 0; i < n; ++i) ftot[i] = const_force + force->values[i];
        std::vector<Complex> gq(n), gp(n);
        for (size_t i = 0; i < n; ++i) {
            const double t = h * static_cast<double>(i);
            gq[i] = ftot[i] * ratio1(t);
            gp[i] = ftot[i] * ratio1(T - t);
        }
        const Complex JQ = quad::integrate_samples(gq, h);
        const Complex JP = quad::integrate_samples(gp, h);
        // double integral over s <= t of f(t) f(s) sinh(w(T-t)) sinh(w s)/sinh(w T)
        std::vector<Complex> outer(n, Complex(0.0));
        const std::vector<double> wo = quad::sample_weights(n, h);
#pragma omp parallel for schedule(static)
        for (long k = 1; k < static_cast<long>(n); ++k) {
            if (wo[k] == 0.0) continue;
            const double tk = h * static_cast<double>(k);
            const LogComplex decay = log_sinh(omega * (T - tk)) / ls;
            std::vector<Complex> inner(k + 1);
            for (long j = 0; j <= k; ++j) {
                const double sj = h * static_cast<double>(j);
                inner[j] = ftot[j] * (log_sinh(omega * sj) * decay).to_complex();
            }
            Complex in;
            if (k == 1)
                in = (h / 12.0) * (5.0 * inner[0] + 8.0 * inner[1] -
                                   ftot[2] * (log_sinh(omega * (2.0 * h)) * decay).to_complex());
            else
                in = quad::integrate_samples(inner, h);
            outer[k] = wo[k] * ftot[k] * in;
        }
        Complex JD(0.0);
        for (size_t k = 0; k < n; ++k) JD += outer[k];
        E += (kI / hbar) * (l_to * JQ + l_from * JP - JD / (mass * omega));
    }

    const Complex base = 0.5 * (std::log(mass / (2.0 * M_PI * hbar * T)) + log_z_over_sinh(z)) -
                         kI * (M_PI / 4.0);
    return LogComplex::from_exponent(base + E);
}

LogComplex LongitudinalKernel::eval(double l_from, double l_to) const {
    return LogComplex::from_exponent(exponent(Complex(l_from, 0.0), Complex(l_to, 0.0)));
}

Complex LongitudinalKernel::exponent(Complex a, Complex b) const {
    Complex E = endpoint_part(mass_, hbar_, q1_, q2_, a, b);
    E += lin_ * (a + b) + lin_Q_ * b + lin_P_ * a + cst_;
    return base_ + E;
}

namespace {

LongitudinalKernel build_longitudinal(const ExperimentScenario& s, const MeasurementRecord* rec,
                                      double delta_alpha) {
    const double T = s.endpoints.duration();
    check_duration(T);
    const Constants& c = s.constants;
    const double GM = c.G * s.source.M;
    const double R = s.source.R;
    const double m = s.particle.m;
    const double hb = c.hbar;

    const EffectiveParameters ep = effective_parameters(s, delta_alpha);
    const Complex W = (std::isinf(delta_alpha) && GM == 0.0) ? Complex(0.0, 0.0) : ep.Omega_hat;
    check_caustic(W, T);

    LongitudinalKernel k;
    k.mass_ = m;
    k.hbar_ = hb;
    k.T_ = T;
    k.Omega_ = W;
    k.q1_ = omega_coth(W, T);
    k.q2_ = omega_tanh_half(W, T);

    // constant gravitational force, folded in analytically
    const Complex F0 = ep.force_const;
    k.lin_ = (kI / hb) * F0 * p1_ratio(W, T);
    k.cst_ = -(kI / hb) * F0 * F0 / m * p2_ratio(W, T);

    // prefactor, global phase from the constant potential term
    Complex base = 0.5 * (std::log(m / (2.0 * M_PI * hb * T)) + log_z_over_sinh(W * T)) -
                   kI * (M_PI / 4.0);
    base += kI * (GM * m * T / (hb * R));

    if (rec) {
        const double tol = 1e-9 * std::max(1.0, std::abs(T));
        if (std::abs(rec->t_start() - s.endpoints.tau_start) > tol ||
            std::abs(rec->t_end() - s.endpoints.tau_end) > tol)
            throw GridMismatch("record domain does not span [tau', tau'']");
        const double da = delta_alpha;
        if (std::isinf(da)) {
            // unmonitored sentinel: weight functional is 1, record drops out
            k.base_ = base;
            return k;
        }
        const double t0 = s.endpoints.tau_start;
        const double t1 = s.endpoints.tau_end;
        const LogComplex ls = log_sinh(W * T);
        auto ratio = [&](const FunctionalValue& f) { return (f.value_log / ls).to_complex(); };
        const Complex F1s = ratio(records::functional_F(1, *rec, W, t0, t1));
        const Complex F2s = ratio(records::functional_F(2, *rec, W, t0, t1));
        const Complex F4s = ratio(records::functional_F(4, *rec, W, t0, t1));
        const Complex F3s = ratio(records::functional_F3(*rec, W, t0, t1));
        const Complex N1s = ratio(records::nested_F1_integral(*rec, W, t0, t1));

        const double da2 = da * da;
        const double w0sq = 2.0 * GM / (R * R * R);
        // record-linear block: (i m W/2hbar)(-8 i hbar/(T da^2 m W)) = 4/(T da^2)
        k.lin_Q_ = (4.0 / (T * da2)) * F1s;
        k.lin_P_ = (4.0 / (T * da2)) * F2s;
        // record-quadratic block
        k.cst_ += (16.0 * kI * hb / (T * T * da2 * da2 * m * W)) * F3s;
        // cross block; R/(1+gamma) written as R*w0sq/Omega^2 so GM -> 0 stays finite
        k.cst_ += (2.0 * R * w0sq / (T * da2 * W)) * ((F4s - F2s) / W + N1s);

        const double norm = records::record_norm(*rec).value.real();
        base += Complex(-2.0 / (T * da2) * norm, 0.0);
    }
    k.base_ = base;
    return k;
}

}  // namespace

LongitudinalKernel longitudinal_unmeasured(const ExperimentScenario& s) {
    return build_longitudinal(s, nullptr, std::numeric_limits<double>::infinity());
}

LongitudinalKernel longitudinal_measured(const ExperimentScenario& s,
                                         const MeasurementRecord& r) {
    return build_longitudinal(s, &r, r.resolution);
}

LogComplex unmeasured_propagator(const ExperimentScenario& s) {
    const LogComplex trans = free_transverse_factor(s.endpoints, s.particle, s.constants);
    return trans * longitudinal_unmeasured(s).eval(s.endpoints.l_P, s.endpoints.l_Q);
}

LogComplex measured_propagator(const ExperimentScenario& s, const MeasurementRecord& r) {
    const LogComplex trans = free_transverse_factor(s.endpoints, s.particle, s.constants);
    return trans * longitudinal_measured(s, r).eval(s.endpoints.l_P, s.endpoints.l_Q);
}

Complex reference::longitudinal_exponent_direct(const ExperimentScenario& s,
                                                const MeasurementRecord* rec, double delta_alpha,
                                                double a, double b) {
    // plain-arithmetic assembly of the same exponent, valid while sinh and
    // the functionals stay inside double range
    const double T = s.endpoints.duration();
    const Constants& c = s.constants;
    const double GM = c.G * s.source.M;
    const double R = s.source.R;
    const double m = s.particle.m;
    const double hb = c.hbar;
    const EffectiveParameters ep = effective_parameters(s, delta_alpha);
    const Complex W = ep.Omega_hat;
    const Complex z = W * T;
    const Complex sh = std::sinh(z);
    const Complex ch = std::cosh(z);
    const Complex one_g = 1.0 + ep.gamma;
    const double t0 = s.endpoints.tau_start;
    const double t1 = s.endpoints.tau_end;

    Complex braces = (b * b + a * a) * ch - 2.0 * a * b;
    const Complex Rg = R / one_g;
    braces += Rg * (1.0 - ch) * (a + b - 0.5 * Rg);
    // (1+gamma)^(-3/2) through the principal log of 1+gamma: continuous in
    // gamma (a plain sqrt of the cubed argument wraps past gamma_tilde = sqrt(3))
    braces += -std::sqrt(GM * R / 8.0) * std::pow(one_g, -1.5) * T * sh;
    if (rec && !std::isinf(delta_alpha)) {
        const double da2 = delta_alpha * delta_alpha;
        const Complex F1 = records::functional_F(1, *rec, W, t0, t1).value;
        const Complex F2 = records::functional_F(2, *rec, W, t0, t1).value;
        const Complex F3 = records::functional_F3(*rec, W, t0, t1).value;
        const Complex F4 = records::functional_F(4, *rec, W, t0, t1).value;
        const Complex N1 = records::nested_F1_integral(*rec, W, t0, t1).value;
        braces += -(8.0 * kI * hb / (T * da2 * m)) / W * (b * F1 + a * F2);
        braces += std::pow(4.0 * hb / (T * da2 * m), 2.0) * (R * R * R / (GM * one_g)) * F3;
        braces += -(4.0 * kI * hb * R / (T * da2 * m * one_g)) * ((F4 - F2) / W + N1);
    }
    Complex E = (kI * m * W / (2.0 * hb * sh)) * braces;
    E += 0.5 * (std::log(m / (2.0 * M_PI * hb * T)) + std::log(z / sh)) - kI * (M_PI / 4.0);
    E += kI * (GM * m * T / (hb * R));
    if (rec && !std::isinf(delta_alpha))
        E += -2.0 / (T * delta_alpha * delta_alpha) * records::record_norm(*rec).value.real();
    return E;
}

}  // namespace gravmeas::kernels
