#include "gravmeas/logcomplex.hpp"

#include <limits>

namespace gravmeas {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

LogComplex LogComplex::from(Complex z) {
    if (z == Complex(0.0, 0.0)) return zero();
    return LogComplex(std::log(std::abs(z)), std::arg(z));
}

LogComplex LogComplex::from_real(double x) {
    if (x == 0.0) return zero();
    if (x > 0.0) return LogComplex(std::log(x), 0.0);
    return LogComplex(std::log(-x), M_PI);
}

Complex LogComplex::to_complex() const {
    if (is_zero()) return Complex(0.0, 0.0);
    return std::exp(log_mag) * Complex(std::cos(phase), std::sin(phase));
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogComplex& big = (a.log_mag >= b.log_mag) ? a : b;
    const LogComplex& small = (a.log_mag >= b.log_mag) ? b : a;
    const double dl = small.log_mag - big.log_mag;  // <= 0
    if (dl < -745.0) return big;                    // below double resolution of exp
    const double dp = small.phase - big.phase;
    const Complex s = 1.0 + std::exp(dl) * Complex(std::cos(dp), std::sin(dp));
    if (s == Complex(0.0, 0.0)) return LogComplex::zero();
    return LogComplex(big.log_mag + std::log(std::abs(s)), big.phase + std::arg(s));
}

LogComplex pow(const LogComplex& a, double p) {
    if (a.is_zero()) return (p > 0) ? LogComplex::zero() : LogComplex(std::numeric_limits<double>::infinity(), 0.0);
    return LogComplex(a.log_mag * p, a.phase * p);
}

LogComplex log_sinh(Complex z) {
    if (z.real() < 0.0) {
        LogComplex r = log_sinh(-z);
        r.phase += M_PI;  // sinh is odd
        return r;
    }
    if (std::abs(z) < 1e-2) {
        return LogComplex::from(std::sinh(z));
    }
    // sinh z = exp(z) * (1 - exp(-2z)) / 2, |exp(-2z)| <= 1
    const Complex w = 1.0 - std::exp(-2.0 * z);
    return LogComplex(z.real() + std::log(std::abs(w)) - kLn2, z.imag() + std::arg(w));
}

LogComplex log_cosh(Complex z) {
    if (z.real() < 0.0) z = -z;  // cosh is even
    if (std::abs(z) < 1e-2) {
        return LogComplex::from(std::cosh(z));
    }
    const Complex w = 1.0 + std::exp(-2.0 * z);
    return LogComplex(z.real() + std::log(std::abs(w)) - kLn2, z.imag() + std::arg(w));
}

Complex coth(Complex z) {
    if (z.real() < 0.0) return -coth(-z);
    if (std::abs(z) < 20.0) {
        return std::cosh(z) / std::sinh(z);
    }
    const Complex e = std::exp(-2.0 * z);
    return (1.0 + e) / (1.0 - e);
}

Complex inv_sinh(Complex z) {
    if (z.real() < 0.0) return -inv_sinh(-z);
    if (std::abs(z) < 20.0) {
        return 1.0 / std::sinh(z);
    }
    const Complex e = std::exp(-z);
    return 2.0 * e / (1.0 - e * e);
}

Complex tanh_half(Complex z) { return std::tanh(0.5 * z); }

Complex omega_coth(Complex w, double T) {
    const Complex z = w * T;
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        // z*coth(z) = 1 + z^2/3 - z^4/45 + ...
        return (1.0 + z2 / 3.0 - z2 * z2 / 45.0) / T;
    }
    return w * coth(z);
}

Complex omega_tanh_half(Complex w, double T) {
    const Complex z = w * T;
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        // z*tanh(z/2) = z^2/2 - z^4/24 + ...
        return (z2 / 2.0 - z2 * z2 / 24.0) / T;
    }
    return w * tanh_half(z);
}

Complex log_z_over_sinh(Complex z) {
    if (z == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    if (std::abs(z) < 1e-3) {
        const Complex z2 = z * z;
        // log(z/sinh z) = -z^2/6 + z^4/180 - ...
        return -z2 / 6.0 + z2 * z2 / 180.0;
    }
    LogComplex ls = log_sinh(z);
    LogComplex lz = LogComplex::from(z);
    return Complex(lz.log_mag - ls.log_mag, lz.phase - ls.phase);
}

}  // namespace gravmeas
