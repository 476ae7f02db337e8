#pragma once

#include <vector>

#include "gravmeas/domain.hpp"
#include "gravmeas/logcomplex.hpp"
#include "gravmeas/records.hpp"

namespace gravmeas {

// Coefficients of V(l) = V0 + V1*l + V2*l^2 for the vertical coordinate.
struct PotentialExpansion {
    double V0;  // -GMm/R, J
    double V1;  // +GMm/R^2, N
    double V2;  // -GMm/R^3, N/m
};

// Parameters of the monitored oscillator. omega_hat is the classical-form
// frequency (omega_hat^2 < 0 side); Omega_hat is the hyperbolic frequency the
// kernel is written in: omega_hat = i*Omega_hat, Omega_hat^2 = -omega_hat_sq.
struct EffectiveParameters {
    Complex force_const;   // -GMm/R^2; the record-dependent force part lives in `records`
    Complex omega_hat_sq;  // -(2GM/R^3) - 4i*hbar/(m*T*dalpha^2)
    Complex Omega_hat;     // principal sqrt((2GM/R^3)*(1+gamma)), Re > 0
    Complex gamma;         // i*gamma_tilde, gamma_tilde = 2*hbar*R^3/(GM*m*T*dalpha^2)
};

// Complex force samples on a uniform grid over [0, T].
struct ComplexForceRecord {
    double duration;
    std::vector<Complex> values;
};

namespace kernels {

PotentialExpansion potential_expansion(const GravitySource& s, const Particle& p,
                                       const Constants& c);

// sqrt(2GM/R^3): growth rate of the inverted quadratic potential.
double classical_frequency(const GravitySource& s, const Constants& c);

// (m/(2*pi*i*hbar*T)) * exp(i*m*(dx^2+dy^2)/(2*hbar*T)): the two free
// transverse directions.
LogComplex free_transverse_factor(const PathEndpoints& e, const Particle& p, const Constants& c);

EffectiveParameters effective_parameters(const ExperimentScenario& s, double delta_alpha);

// Driven oscillator kernel for complex hyperbolic frequency `omega`
// (the kernel carries sinh(omega*T); a real omega is the inverted-potential
// case, omega = i*w gives the ordinary oscillator with sin(w*T)).
// The constant force is folded in analytically; when force samples are
// given, all force terms (including the constant) go through quadrature.
LogComplex driven_oscillator_kernel(double mass, Complex omega, Complex const_force,
                                    const ComplexForceRecord* force, double l_from, double l_to,
                                    double duration, const Constants& c);

// One-dimensional vertical kernel with every factor except the transverse
// one: prefactor, global potential-offset phase, weight-functional damping,
// and the full braced exponent. Cheap to evaluate per endpoint pair; the
// record functionals are computed once at construction.
struct LongitudinalKernel {
    LogComplex eval(double l_from, double l_to) const;
    // The kernel is exp of a quadratic polynomial in the endpoints; complex
    // endpoints are legal (used by the contour-rotated compositions).
    Complex exponent(Complex l_from, Complex l_to) const;

    Complex Omega_hat() const { return Omega_; }
    double duration() const { return T_; }

    double mass_ = 0.0, hbar_ = 0.0, T_ = 0.0;
    Complex Omega_{0.0, 0.0};  // hyperbolic frequency (0 = free)
    Complex q1_{0.0, 0.0};     // Omega*coth(Omega*T)
    Complex q2_{0.0, 0.0};     // Omega*tanh(Omega*T/2)
    // exponent = base + (i m/2hbar)[(b-a)^2 q1 + 2ab q2]
    //          + lin*(a+b) + lin_Q*b + lin_P*a + cst
    Complex lin_{0.0, 0.0};
    Complex lin_Q_{0.0, 0.0};
    Complex lin_P_{0.0, 0.0};
    Complex cst_{0.0, 0.0};
    Complex base_{0.0, 0.0};
};

LongitudinalKernel longitudinal_unmeasured(const ExperimentScenario& s);
LongitudinalKernel longitudinal_measured(const ExperimentScenario& s, const MeasurementRecord& r);

// Full propagators at the scenario endpoints (transverse x longitudinal).
LogComplex unmeasured_propagator(const ExperimentScenario& s);
LogComplex measured_propagator(const ExperimentScenario& s, const MeasurementRecord& r);

namespace reference {
// Naive assembly of the same exponent with plain sinh/cosh and the record
// functionals evaluated in ordinary complex arithmetic. Overflows past
// |Re Omega*T| ~ 300; kept as the cross-check for the log-domain path.
Complex longitudinal_exponent_direct(const ExperimentScenario& s, const MeasurementRecord* r,
                                     double delta_alpha, double l_from, double l_to);
}  // namespace reference

}  // namespace kernels
}  // namespace gravmeas
