#include "gravmeas/interference.hpp"

#include <cmath>

#include "gravmeas/errors.hpp"
#include "gravmeas/kernels.hpp"

namespace gravmeas::interference {

namespace {

const Complex kI(0.0, 1.0);

struct PairParams {
    double m, hbar, T, R, GM;
    double lP, lQ;
    double t0, t1;
    double da, db;
    SplitFrequency sa, sb;
};

PairParams unpack(const BeamPair& p) {
    PairParams q;
    q.m = p.scenario.particle.m;
    q.hbar = p.scenario.constants.hbar;
    q.T = p.scenario.endpoints.duration();
    q.R = p.scenario.source.R;
    q.GM = p.scenario.constants.G * p.scenario.source.M;
    q.lP = p.scenario.endpoints.l_P;
    q.lQ = p.scenario.endpoints.l_Q;
    q.t0 = p.scenario.endpoints.tau_start;
    q.t1 = p.scenario.endpoints.tau_end;
    q.da = p.record_alpha.resolution;
    q.db = p.record_beta.resolution;
    q.sa = split_frequency(p.scenario, q.da, BeamBranch::alpha);
    q.sb = split_frequency(p.scenario, q.db, BeamBranch::beta);
    return q;
}

}  // namespace

namespace detail {

// Ratios against cosh(2aT) - cos(2bT), scaled by 2*exp(-2aT) so large a*T
// never overflows and the asymptotic values come out exact.
namespace {
double denom_scaled(double a, double b, double T) {
    const double u = std::exp(-a * T);
    const double u2 = u * u;
    const double den = 1.0 + u2 * u2 - 2.0 * u2 * std::cos(2.0 * b * T);
    // direct-evaluation degeneracy check: cosh - cos < 1e-300
    const double log_den = std::log(den <= 0.0 ? 1e-320 : den) + 2.0 * a * T - std::log(2.0);
    if (log_den < std::log(1e-300)) throw DegenerateDenominator("cosh(2aT) - cos(2bT) underflow");
    return den;
}

// (a sin(2bT) - b sinh(2aT)) / (cosh(2aT) - cos(2bT))
}  // namespace

double ratio_r1(double a, double b, double T) {
    const double u = std::exp(-a * T);
    const double u2 = u * u;
    const double num = 2.0 * a * u2 * std::sin(2.0 * b * T) - b * (1.0 - u2 * u2);
    return num / denom_scaled(a, b, T);
}

// (-b sinh(aT) cos(bT) + a cosh(aT) sin(bT)) / (cosh(2aT) - cos(2bT))
double ratio_r2(double a, double b, double T) {
    const double u = std::exp(-a * T);
    const double u3 = u * u * u;
    const double num = -b * (u - u3) * std::cos(b * T) + a * (u + u3) * std::sin(b * T);
    return num / denom_scaled(a, b, T);
}

// (b cosh(aT) sin(bT) + a sinh(aT) cos(bT)) / (cosh(2aT) - cos(2bT))
double ratio_r3(double a, double b, double T) {
    const double u = std::exp(-a * T);
    const double u3 = u * u * u;
    const double num = b * (u + u3) * std::sin(b * T) + a * (u - u3) * std::cos(b * T);
    return num / denom_scaled(a, b, T);
}

void i3_blocks(const SplitFrequency& s, double S, double R, double T, bool beta_order,
               double& B1, double& B2) {
    const double g = s.gamma_param;
    const double gg = 1.0 + g * g;
    const double ch_cos = std::cosh(s.tilde * T) * std::cos(s.check * T);
    const double sh_sin = std::sinh(s.tilde * T) * std::sin(s.check * T);
    const double c1 = (R / gg) * (S - R * (1.0 - g * g) / (2.0 * gg));
    // the alpha block is printed with R/(1+g^2) - S, the beta block with
    // S - R/(1+g^2); transcribed as printed
    const double c2 = (R * g / gg) * (beta_order ? (S - R / gg) : (R / gg - S));
    B1 = (1.0 - ch_cos) * c1 + c2 * sh_sin;
    B2 = (1.0 - ch_cos) * c2 - c1 * sh_sin;
}

}  // namespace detail

namespace {

using detail::ratio_r1;
using detail::ratio_r2;
using detail::ratio_r3;

double f_val(int variant, bool tilde, const MeasurementRecord& r, const SplitFrequency& s,
             double t0, double t1) {
    return records::functional_f(variant, tilde, r, s.tilde, s.check, t0, t1).value.real();
}

}  // namespace

SplitFrequency split_frequency(const ExperimentScenario& s, double resolution, BeamBranch b) {
    if (!(resolution > 0.0)) throw DegenerateDenominator("non-positive resolution");
    const double T = s.endpoints.duration();
    const double GM = s.constants.G * s.source.M;
    const double R = s.source.R;
    const double w0 = std::sqrt(2.0 * GM / (R * R * R));
    const double g = std::isinf(resolution)
                         ? 0.0
                         : 2.0 * s.constants.hbar * R * R * R /
                               (GM * s.particle.m * T * resolution * resolution);
    const double amp = w0 * std::pow(1.0 + g * g, 0.25);
    const double half = 0.5 * std::atan(g) * (b == BeamBranch::alpha ? 1.0 : -1.0);
    return SplitFrequency{amp * std::cos(half), amp * std::sin(half), g, b};
}

double term_I1(const BeamPair& p) {
    const PairParams q = unpack(p);
    const double bracket = ratio_r1(q.sa.tilde, q.sa.check, q.T) -
                           ratio_r1(q.sb.tilde, q.sb.check, q.T);
    return q.m / (2.0 * q.hbar) * (q.lQ * q.lQ + q.lP * q.lP) * bracket;
}

double term_I2(const BeamPair& p) {
    const PairParams q = unpack(p);
    const double first = -2.0 * q.lQ * q.lP * q.m / q.hbar *
                         (ratio_r2(q.sa.tilde, q.sa.check, q.T) -
                          ratio_r2(q.sb.tilde, q.sb.check, q.T));
    const double ga = q.sa.gamma_param, gb = q.sb.gamma_param;
    const double block_a = std::pow(1.0 + ga * ga, -0.75) *
                           (-q.sa.check * std::cos(1.5 * std::atan(ga)) +
                            q.sa.tilde * std::sin(1.5 * std::atan(ga)));
    const double block_b = std::pow(1.0 + gb * gb, -0.75) *
                           (-q.sb.check * std::cos(-1.5 * std::atan(gb)) +
                            q.sb.tilde * std::sin(-1.5 * std::atan(gb)));
    const double second = q.m * q.T / (2.0 * q.hbar) * std::sqrt(q.GM * q.R / 8.0) *
                          (block_a - block_b);
    return first + second;
}

double term_I3(const BeamPair& p) {
    const PairParams q = unpack(p);
    const double S = q.lQ + q.lP;

    double B1a, B2a, B1b, B2b;
    detail::i3_blocks(q.sa, S, q.R, q.T, false, B1a, B2a);
    detail::i3_blocks(q.sb, S, q.R, q.T, true, B1b, B2b);
    const double r2a = ratio_r2(q.sa.tilde, q.sa.check, q.T);
    const double r3a = ratio_r3(q.sa.tilde, q.sa.check, q.T);
    const double r2b = ratio_r2(q.sb.tilde, q.sb.check, q.T);
    const double r3b = ratio_r3(q.sb.tilde, q.sb.check, q.T);
    return q.m / q.hbar * (r2a * B1a - r3a * B2a - r2b * B1b + r3b * B2b);
}

double term_I4(const BeamPair& p) {
    const PairParams q = unpack(p);
    if (std::isinf(q.da) && std::isinf(q.db)) return 0.0;

    // the second bracket is printed with opposite inner signs on the beta
    // side: [check*X1 - tilde*X2] for alpha, [-check*Y1 + tilde*Y2] for beta
    auto side = [&](const MeasurementRecord& rec, const SplitFrequency& s, double delta,
                    bool beta_side) {
        if (std::isinf(delta)) return 0.0;
        const double X1 = q.lQ * f_val(1, false, rec, s, q.t0, q.t1) +
                          q.lP * f_val(1, true, rec, s, q.t0, q.t1);
        const double X2 = q.lQ * f_val(2, false, rec, s, q.t0, q.t1) +
                          q.lP * f_val(2, true, rec, s, q.t0, q.t1);
        const double nrm = s.tilde * s.tilde + s.check * s.check;
        const double pre = 8.0 / (q.T * delta * delta);
        const double r3 = ratio_r3(s.tilde, s.check, q.T);
        const double r2 = ratio_r2(s.tilde, s.check, q.T);
        const double br2 = beta_side ? (-s.check * X1 + s.tilde * X2)
                                     : (s.check * X1 - s.tilde * X2);
        return pre * r3 * (s.tilde * X1 + s.check * X2) / nrm + pre * r2 * br2 / nrm;
    };
    return side(p.record_alpha, q.sa, q.da, false) - side(p.record_beta, q.sb, q.db, true);
}

double term_I5(const BeamPair& p) {
    const PairParams q = unpack(p);
    if (std::isinf(q.da) && std::isinf(q.db)) return 0.0;

    auto side = [&](const MeasurementRecord& rec, const SplitFrequency& s, double delta,
                    double sign) {
        if (std::isinf(delta)) return 0.0;
        const Complex Wh = s.as_complex();
        const Complex one_ig = 1.0 + kI * s.gamma_param * sign;
        const LogComplex ls = log_sinh(Wh * q.T);
        const double d2 = delta * delta;

        const FunctionalValue F3 = records::functional_F3(rec, Wh, q.t0, q.t1);
        // sign * i m W/(2 hbar sinh(WT)) * (4 hbar/(T d^2 m))^2 * R^3/(GM(1 +- i g)) * F3
        const Complex c3 = sign * kI * q.m * Wh / (2.0 * q.hbar) *
                           std::pow(4.0 * q.hbar / (q.T * d2 * q.m), 2.0) *
                           (q.R * q.R * q.R / (q.GM * one_ig));
        const double quad = (LogComplex::from(c3) / ls * F3.value_log).to_complex().real();

        const FunctionalValue F2 = records::functional_F(2, rec, Wh, q.t0, q.t1);
        const FunctionalValue F4 = records::functional_F(4, rec, Wh, q.t0, q.t1);
        const FunctionalValue N1 = records::nested_F1_integral(rec, Wh, q.t0, q.t1);
        LogComplex mF4 = F4.value_log;
        mF4.phase += M_PI;
        LogComplex mN1 = N1.value_log;
        mN1.phase += M_PI;
        const LogComplex bracket = F2.value_log + mF4 + mN1;
        const Complex cc = -sign * 2.0 * q.R * Wh / (q.T * d2) *
                           std::sqrt(q.R * q.R * q.R / (2.0 * q.GM * one_ig));
        const double cross = (LogComplex::from(cc) / ls * bracket).to_complex().real();
        return quad + cross;
    };
    return side(p.record_alpha, q.sa, q.da, +1.0) + side(p.record_beta, q.sb, q.db, -1.0);
}

DirectCross direct_cross_phase(const BeamPair& p) {
    const LogComplex ua = kernels::measured_propagator(p.scenario, p.record_alpha);
    const LogComplex ub = kernels::measured_propagator(p.scenario, p.record_beta);
    return DirectCross{ua.phase - ub.phase, ua.log_mag + ub.log_mag};
}

InterferenceReport interference_report(const BeamPair& p) {
    InterferenceReport r;
    r.I1 = term_I1(p);
    r.I2 = term_I2(p);
    r.I3 = term_I3(p);
    r.I4 = term_I4(p);
    r.I5 = term_I5(p);
    r.I_total = r.I1 + r.I2 + r.I3 + r.I4 + r.I5;
    const DirectCross d = direct_cross_phase(p);
    r.direct_phase = d.phase;
    r.direct_log_contrast = d.log_contrast;
    r.deviation = std::abs(r.I_total - d.phase);
    return r;
}

}  // namespace gravmeas::interference
