#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace gravmeas {

using Complex = std::complex<double>;

// Complex value z kept as (log|z|, arg z). The phase is an accumulated real
// number, never reduced mod 2*pi, so products of many factors keep a
// continuous phase along parameter sweeps. log_mag = -inf encodes zero.
struct LogComplex {
    double log_mag;
    double phase;

    LogComplex() : log_mag(-std::numeric_limits<double>::infinity()), phase(0.0) {}
    LogComplex(double lm, double ph) : log_mag(lm), phase(ph) {}

    static LogComplex zero() { return LogComplex(); }
    static LogComplex one() { return LogComplex(0.0, 0.0); }
    static LogComplex from(Complex z);
    static LogComplex from_real(double x);
    // z = exp(w): log_mag = Re w, phase = Im w
    static LogComplex from_exponent(Complex w) { return LogComplex(w.real(), w.imag()); }

    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }
    bool finite() const { return std::isfinite(log_mag) && std::isfinite(phase); }

    // May overflow/underflow for extreme log_mag; callers that need safety
    // keep working in log domain.
    Complex to_complex() const;

    LogComplex& operator*=(const LogComplex& o) {
        log_mag += o.log_mag;
        phase += o.phase;
        return *this;
    }
    LogComplex& operator/=(const LogComplex& o) {
        log_mag -= o.log_mag;
        phase -= o.phase;
        return *this;
    }
};

inline LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
inline LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

// Sum in log domain. The larger-magnitude operand sets the reference phase;
// the result phase stays near it (no spurious 2*pi jumps).
LogComplex operator+(const LogComplex& a, const LogComplex& b);

LogComplex pow(const LogComplex& a, double p);
inline LogComplex sqrt(const LogComplex& a) { return pow(a, 0.5); }

// sinh(z) / cosh(z) as LogComplex, stable for arbitrarily large |Re z|.
LogComplex log_sinh(Complex z);
LogComplex log_cosh(Complex z);

// Stable hyperbolic ratios for complex z (used with Re z >= 0):
//   coth(z), 1/sinh(z), tanh(z/2).
Complex coth(Complex z);
Complex inv_sinh(Complex z);
Complex tanh_half(Complex z);

// w * coth(w*T) and w * tanh(w*T/2) with the w -> 0 limits built in
// (1/T and 0 respectively); w complex, T > 0.
Complex omega_coth(Complex w, double T);
Complex omega_tanh_half(Complex w, double T);

// log(z/sinh z) with the small-z series; finite at z = 0.
Complex log_z_over_sinh(Complex z);

}  // namespace gravmeas
