#pragma once

#include "gravmeas/domain.hpp"
#include "gravmeas/records.hpp"

namespace gravmeas {

enum class BeamBranch { alpha, beta };

// Real/imaginary split of the effective complex frequency. The beta branch
// uses the conjugate angles (-arctan/2), so check < 0 there.
struct SplitFrequency {
    double tilde;        // s^-1, > 0
    double check;        // s^-1
    double gamma_param;  // dimensionless measurement-strength parameter
    BeamBranch branch;

    Complex as_complex() const { return Complex(tilde, check); }
};

struct BeamPair {
    ExperimentScenario scenario;
    MeasurementRecord record_alpha;
    MeasurementRecord record_beta;
};

struct DirectCross {
    double phase;         // phase(U_alpha * conj(U_beta)), analytic continuation
    double log_contrast;  // log|U_alpha| + log|U_beta|
};

struct InterferenceReport {
    double I1 = 0, I2 = 0, I3 = 0, I4 = 0, I5 = 0;
    double I_total = 0;
    double direct_phase = 0;
    double direct_log_contrast = 0;
    double deviation = 0;  // |I_total - direct_phase|
};

namespace interference {

SplitFrequency split_frequency(const ExperimentScenario& s, double resolution, BeamBranch b);

// The five contributions, transcribed as printed: I1/I2 endpoint terms,
// I3 source-geometry term, I4 record-linear, I5 record-quadratic. They are
// compared against, never calibrated to, the direct cross term below.
double term_I1(const BeamPair& p);
double term_I2(const BeamPair& p);
double term_I3(const BeamPair& p);
double term_I4(const BeamPair& p);
double term_I5(const BeamPair& p);

// Ground truth: two monitored propagators multiplied directly.
DirectCross direct_cross_phase(const BeamPair& p);

InterferenceReport interference_report(const BeamPair& p);

namespace detail {
// Ratios against cosh(2aT) - cos(2bT), evaluated in exp(-aT)-scaled form;
// overflow-free for any a*T with the exact asymptotic values built in.
double ratio_r1(double a, double b, double T);
double ratio_r2(double a, double b, double T);
double ratio_r3(double a, double b, double T);
// The two source-geometry brackets of the I3 blocks.
void i3_blocks(const SplitFrequency& s, double S, double R, double T, bool beta_order,
               double& B1, double& B2);
}  // namespace detail

}  // namespace interference
}  // namespace gravmeas
