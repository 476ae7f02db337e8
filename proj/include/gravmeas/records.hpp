#pragma once

#include <vector>

#include "gravmeas/logcomplex.hpp"

namespace gravmeas {

// Sampled measurement output alpha(t) on a uniform grid over [tau', tau''],
// with the device resolution Delta-alpha. Records are immutable inputs; no
// stochastic unraveling happens here.
struct MeasurementRecord {
    std::vector<double> times;   // uniform, >= 3 samples, odd count
    std::vector<double> values;  // alpha(t_i), metres
    double resolution;           // Delta-alpha, metres (infinity = unmonitored)

    double t_start() const { return times.front(); }
    double t_end() const { return times.back(); }
    double step() const { return times[1] - times[0]; }
    // Piecewise-linear value at arbitrary t inside the span.
    double value_at(double t) const;
};

struct GridSpec {
    double t_start;
    double t_end;
    int n_points;  // rounded up to the next odd count
};

// Quadrature result. `value` is the plain complex number (fine for every
// toy-unit case); `value_log` stays finite when the integrand reaches
// exp(|Re Omega|*T) territory.
struct FunctionalValue {
    Complex value;
    LogComplex value_log;
    double estimated_error = 0.0;  // |fine - coarse| of the grids compared
};

namespace records {

// Generators for the closed-form record families used by tests and the CLI.
MeasurementRecord make_constant_record(double value, const GridSpec& g, double resolution);
// alpha(t) = l0 + v0*(t - tau') - g/2*(t - tau')^2
MeasurementRecord make_free_fall_record(double l0, double v0, double g_acc, const GridSpec& g,
                                        double resolution);
// alpha(t) = A*sin(omega0*(t - tau') + phase)
MeasurementRecord make_sinusoid_record(double amplitude, double omega0, double phase,
                                       const GridSpec& g, double resolution);
MeasurementRecord make_record_from_samples(std::vector<double> times, std::vector<double> values,
                                           double resolution);

// integral of alpha^2 dt (composite Simpson), with error estimate.
FunctionalValue record_norm(const MeasurementRecord& r);

// Single integrals of the record against one hyperbolic branch:
//   variant 1: integral alpha(tau) sinh(W*(tau - tau')) dtau
//   variant 2: integral alpha(tau) sinh(W*(tau'' - tau)) dtau
//   variant 4: integral alpha(tau) sinh(W*(tau'' - tau)) cosh(W*(tau - tau')) dtau
// (variant 3 is the double integral; see functional_F3). Accumulation moves
// to log domain when Re(W)*T exceeds 30.
FunctionalValue functional_F(int variant, const MeasurementRecord& r, Complex Omega_hat,
                             double tau_start, double tau_end);

// Double integral over the triangular domain s <= tau:
//   integral dtau integral_{tau'}^{tau} ds alpha(tau) alpha(s)
//       sinh(W*(tau'' - tau)) sinh(W*(s - tau'))
// Nested Simpson, O(N^2); OpenMP over the outer nodes.
FunctionalValue functional_F3(const MeasurementRecord& r, Complex Omega_hat, double tau_start,
                              double tau_end);

// integral F1(tau, tau') sinh(W*(tau'' - tau)) dtau, where F1(tau, tau') is
// the variant-1 prefix up to tau. Uses a cached cumulative prefix.
FunctionalValue nested_F1_integral(const MeasurementRecord& r, Complex Omega_hat,
                                   double tau_start, double tau_end);

// Real split-frequency functionals:
//   variant 1 (or 3): integral alpha sinh(a*u) cos(b*u) du
//   variant 2 (or 4): integral alpha cosh(a*u) sin(b*u) du
// u = tau - tau', or tau'' - tau when tilde is set.
FunctionalValue functional_f(int variant, bool tilde, const MeasurementRecord& r, double a,
                             double b, double tau_start, double tau_end);

namespace reference {
// Serial implementations kept as the comparison baseline for the parallel
// kernels above.
FunctionalValue functional_F3_serial(const MeasurementRecord& r, Complex Omega_hat,
                                     double tau_start, double tau_end);
// O(N^2) re-evaluation of F1 per outer node instead of the cached prefix.
FunctionalValue nested_F1_integral_serial(const MeasurementRecord& r, Complex Omega_hat,
                                          double tau_start, double tau_end);
}  // namespace reference

// CSV import/export: header line carries the resolution, then time_s,alpha_m
// rows at full (round-trip exact) precision.
void save_record_csv(const MeasurementRecord& r, const std::string& path);
MeasurementRecord load_record_csv(const std::string& path);

}  // namespace records
}  // namespace gravmeas
