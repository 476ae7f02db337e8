#include "gravmeas/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gravmeas/errors.hpp"
#include "gravmeas/quadrature.hpp"

namespace gravmeas {

double MeasurementRecord::value_at(double t) const {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const double h = step();
    const auto i = static_cast<size_t>((t - times.front()) / h);
    const size_t j = std::min(i, times.size() - 2);
    const double w = (t - times[j]) / h;
    return values[j] * (1.0 - w) + values[j + 1] * w;
}

namespace records {

namespace {

void check_record(const MeasurementRecord& r) {
    if (r.times.size() < 3) throw GridMismatch("record needs at least 3 samples");
    if (r.times.size() != r.values.size()) throw GridMismatch("record times/values length mismatch");
    if (!(r.resolution > 0.0)) throw GridMismatch("record resolution must be positive");
    const double h = r.times[1] - r.times[0];
    if (!(h > 0.0)) throw GridMismatch("record grid not increasing");
    const double span = r.times.back() - r.times.front();
    for (size_t i = 1; i < r.times.size(); ++i) {
        const double d = r.times[i] - r.times[i - 1];
        if (std::abs(d - h) > 1e-12 * span) throw GridMismatch("record grid not uniform");
    }
}

void check_span(const MeasurementRecord& r, double tau_start, double tau_end) {
    check_record(r);
    const double span = tau_end - tau_start;
    const double tol = 1e-9 * std::max(1.0, std::abs(span));
    if (std::abs(r.t_start() - tau_start) > tol || std::abs(r.t_end() - tau_end) > tol)
        throw GridMismatch("record domain does not span [tau', tau'']");
}

int odd_count(int n) {
    if (n < 3) n = 3;
    return (n % 2 == 0) ? n + 1 : n;
}

using quad::integrate_prefix;
using quad::integrate_samples;
using quad::sample_weights;

std::vector<double> coarse(const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size() / 2 + 1);
    for (size_t i = 0; i < v.size(); i += 2) out.push_back(v[i]);
    return out;
}

bool use_log_domain(Complex W, double span) { return std::abs(W.real()) * span > 30.0; }

enum class Branch { sinh_from_start, sinh_to_end, sinh_to_end_cosh_from_start };

LogComplex log_term(Branch br, double alpha, Complex W, double u_from_start, double u_to_end) {
    LogComplex t = LogComplex::from_real(alpha);
    switch (br) {
        case Branch::sinh_from_start:
            t *= log_sinh(W * u_from_start);
            break;
        case Branch::sinh_to_end:
            t *= log_sinh(W * u_to_end);
            break;
        case Branch::sinh_to_end_cosh_from_start:
            t *= log_sinh(W * u_to_end);
            t *= log_cosh(W * u_from_start);
            break;
    }
    return t;
}

Complex direct_term(Branch br, double alpha, Complex W, double u_from_start, double u_to_end) {
    switch (br) {
        case Branch::sinh_from_start:
            return alpha * std::sinh(W * u_from_start);
        case Branch::sinh_to_end:
            return alpha * std::sinh(W * u_to_end);
        case Branch::sinh_to_end_cosh_from_start:
            return alpha * std::sinh(W * u_to_end) * std::cosh(W * u_from_start);
    }
    return 0.0;
}

FunctionalValue single_integral(Branch br, const MeasurementRecord& r, Complex W,
                                double tau_start, double tau_end) {
    check_span(r, tau_start, tau_end);
    const size_t n = r.times.size();
    const double h = r.step();
    FunctionalValue out;
    if (!use_log_domain(W, tau_end - tau_start)) {
        std::vector<Complex> f(n);
        for (size_t i = 0; i < n; ++i)
            f[i] = direct_term(br, r.values[i], W, r.times[i] - tau_start, tau_end - r.times[i]);
        const Complex fine = integrate_samples(f, h);
        std::vector<Complex> fc;
        for (size_t i = 0; i < n; i += 2) fc.push_back(f[i]);
        const Complex crs = integrate_samples(fc, 2.0 * h);
        out.value = fine;
        out.value_log = LogComplex::from(fine);
        out.estimated_error = std::abs(fine - crs);
        return out;
    }
    auto accumulate = [&](const std::vector<double>& w, size_t stride) {
        LogComplex acc = LogComplex::zero();
        for (size_t i = 0, j = 0; i < n; i += stride, ++j) {
            if (w[j] == 0.0 || r.values[i] == 0.0) continue;
            LogComplex t = log_term(br, r.values[i], W, r.times[i] - tau_start, tau_end - r.times[i]);
            t.log_mag += std::log(w[j]);
            acc = acc + t;
        }
        return acc;
    };
    const LogComplex fine = accumulate(sample_weights(n, h), 1);
    const LogComplex crs = accumulate(sample_weights(n / 2 + 1, 2.0 * h), 2);
    out.value_log = fine;
    out.value = fine.to_complex();
    LogComplex neg = crs;
    neg.phase += M_PI;
    out.estimated_error = std::exp((fine + neg).log_mag);
    return out;
}

}  // namespace

MeasurementRecord make_constant_record(double value, const GridSpec& g, double resolution) {
    const int n = odd_count(g.n_points);
    MeasurementRecord r;
    r.resolution = resolution;
    r.times.resize(n);
    r.values.assign(n, value);
    for (int i = 0; i < n; ++i)
        r.times[i] = g.t_start + (g.t_end - g.t_start) * i / (n - 1);
    check_record(r);
    return r;
}

MeasurementRecord make_free_fall_record(double l0, double v0, double g_acc, const GridSpec& g,
                                        double resolution) {
    MeasurementRecord r = make_constant_record(0.0, g, resolution);
    for (size_t i = 0; i < r.times.size(); ++i) {
        const double u = r.times[i] - g.t_start;
        r.values[i] = l0 + v0 * u - 0.5 * g_acc * u * u;
    }
    return r;
}

MeasurementRecord make_sinusoid_record(double amplitude, double omega0, double phase,
                                       const GridSpec& g, double resolution) {
    MeasurementRecord r = make_constant_record(0.0, g, resolution);
    for (size_t i = 0; i < r.times.size(); ++i) {
        const double u = r.times[i] - g.t_start;
        r.values[i] = amplitude * std::sin(omega0 * u + phase);
    }
    return r;
}

MeasurementRecord make_record_from_samples(std::vector<double> times, std::vector<double> values,
                                           double resolution) {
    MeasurementRecord r{std::move(times), std::move(values), resolution};
    check_record(r);
    return r;
}

FunctionalValue record_norm(const MeasurementRecord& r) {
    check_record(r);
    const size_t n = r.times.size();
    std::vector<double> f(n);
    for (size_t i = 0; i < n; ++i) f[i] = r.values[i] * r.values[i];
    const double fine = integrate_samples(f, r.step());
    const double crs = integrate_samples(coarse(f), 2.0 * r.step());
    FunctionalValue out;
    out.value = fine;
    out.value_log = LogComplex::from_real(fine);
    out.estimated_error = std::abs(fine - crs);
    return out;
}

FunctionalValue functional_F(int variant, const MeasurementRecord& r, Complex W,
                             double tau_start, double tau_end) {
    switch (variant) {
        case 1:
            return single_integral(Branch::sinh_from_start, r, W, tau_start, tau_end);
        case 2:
            return single_integral(Branch::sinh_to_end, r, W, tau_start, tau_end);
        case 3:
            return functional_F3(r, W, tau_start, tau_end);
        case 4:
            return single_integral(Branch::sinh_to_end_cosh_from_start, r, W, tau_start, tau_end);
        default:
            throw GridMismatch("functional_F variant must be 1..4");
    }
}

namespace {

// One outer node of the F3 double integral: alpha(tau_k) sinh(W*(tau''-tau_k))
// times the inner prefix integral up to tau_k.
FunctionalValue f3_impl(const MeasurementRecord& r, Complex W, double tau_start, double tau_end,
                        bool parallel) {
    check_span(r, tau_start, tau_end);
    const double h = r.step();
    const auto n = static_cast<long>(r.times.size());
    const bool logdom = use_log_domain(W, tau_end - tau_start);

    auto eval_grid = [&](long stride) {
        const long nn = (n - 1) / stride + 1;
        const double hh = h * stride;
        std::vector<Complex> outer_direct(nn, Complex(0.0));
        std::vector<LogComplex> outer_log(nn);
        const std::vector<double> wo = sample_weights(nn, hh);
#pragma omp parallel for schedule(static) if (parallel && stride == 1)
        for (long k = 1; k < nn; ++k) {
            const long ik = k * stride;
            if (wo[k] == 0.0 || r.values[ik] == 0.0) continue;
            if (!logdom) {
                std::vector<Complex> inner(k + 1);
                for (long j = 0; j <= k; ++j)
                    inner[j] = r.values[j * stride] * std::sinh(W * (r.times[j * stride] - tau_start));
                Complex in;
                if (k == 1) {
                    // quadratic through the first three samples over one cell
                    const Complex g0 = r.values[0] * std::sinh(W * (r.times[0] - tau_start));
                    const Complex g1 = r.values[stride] * std::sinh(W * (r.times[stride] - tau_start));
                    const Complex g2 =
                        r.values[2 * stride] * std::sinh(W * (r.times[2 * stride] - tau_start));
                    in = (hh / 12.0) * (5.0 * g0 + 8.0 * g1 - g2);
                } else {
                    in = integrate_samples(inner, hh);
                }
                outer_direct[k] =
                    wo[k] * r.values[ik] * std::sinh(W * (tau_end - r.times[ik])) * in;
            } else {
                const std::vector<double> wi = sample_weights(k + 1, hh);
                LogComplex in = LogComplex::zero();
                for (long j = 0; j <= k; ++j) {
                    if (wi[j] == 0.0 || r.values[j * stride] == 0.0) continue;
                    LogComplex t = LogComplex::from_real(r.values[j * stride]) *
                                   log_sinh(W * (r.times[j * stride] - tau_start));
                    t.log_mag += std::log(wi[j]);
                    in = in + t;
                }
                if (k == 1) {
                    // matches the direct path's one-cell quadratic closure
                    LogComplex g0 = LogComplex::from_real(r.values[0]) *
                                    log_sinh(W * (r.times[0] - tau_start));
                    LogComplex g1 = LogComplex::from_real(r.values[stride]) *
                                    log_sinh(W * (r.times[stride] - tau_start));
                    LogComplex g2 = LogComplex::from_real(r.values[2 * stride]) *
                                    log_sinh(W * (r.times[2 * stride] - tau_start));
                    LogComplex acc = LogComplex::zero();
                    auto add = [&](LogComplex g, double c) {
                        if (g.is_zero()) return;
                        g.log_mag += std::log(std::abs(c));
                        if (c < 0) g.phase += M_PI;
                        acc = acc + g;
                    };
                    add(g0, 5.0 * hh / 12.0);
                    add(g1, 8.0 * hh / 12.0);
                    add(g2, -hh / 12.0);
                    in = acc;
                }
                LogComplex t = LogComplex::from_real(r.values[ik]) *
                               log_sinh(W * (tau_end - r.times[ik])) * in;
                t.log_mag += std::log(wo[k]);
                outer_log[k] = t;
            }
        }
        if (!logdom) {
            Complex acc(0.0);
            for (long k = 0; k < nn; ++k) acc += outer_direct[k];
            return LogComplex::from(acc);
        }
        LogComplex acc = LogComplex::zero();
        for (long k = 0; k < nn; ++k) acc = acc + outer_log[k];
        return acc;
    };

    const LogComplex fine = eval_grid(1);
    FunctionalValue out;
    out.value_log = fine;
    out.value = fine.to_complex();
    if (n >= 5) {
        const LogComplex crs = eval_grid(2);
        LogComplex neg = crs;
        neg.phase += M_PI;
        out.estimated_error = std::exp((fine + neg).log_mag);
    }
    return out;
}

FunctionalValue nested_f1_impl(const MeasurementRecord& r, Complex W, double tau_start,
                               double tau_end, bool cached) {
    check_span(r, tau_start, tau_end);
    const size_t n = r.times.size();
    const double h = r.step();
    const bool logdom = use_log_domain(W, tau_end - tau_start);
    if (!logdom) {
        std::vector<Complex> g(n);
        for (size_t i = 0; i < n; ++i)
            g[i] = r.values[i] * std::sinh(W * (r.times[i] - tau_start));
        std::vector<Complex> prefix;
        if (cached) {
            prefix = integrate_prefix(g, h);
        } else {
            // re-evaluate F1 per outer node (reference path), with the same
            // per-node rule as the cached prefix
            prefix.assign(n, Complex(0.0));
            for (size_t k = 1; k < n; ++k) {
                Complex acc(0.0);
                for (size_t i = 2; i <= k; i += 2)
                    acc += (h / 3.0) * (g[i - 2] + 4.0 * g[i - 1] + g[i]);
                if (k % 2 == 1) {
                    if (k == 1)
                        acc = (h / 12.0) * (5.0 * g[0] + 8.0 * g[1] - g[2]);
                    else
                        acc += (h / 12.0) * (-g[k - 2] + 8.0 * g[k - 1] + 5.0 * g[k]);
                }
                prefix[k] = acc;
            }
        }
        std::vector<Complex> f(n);
        for (size_t i = 0; i < n; ++i) f[i] = prefix[i] * std::sinh(W * (tau_end - r.times[i]));
        const Complex fine = integrate_samples(f, h);
        std::vector<Complex> fc;
        for (size_t i = 0; i < n; i += 2) fc.push_back(f[i]);
        const Complex crs = integrate_samples(fc, 2.0 * h);
        FunctionalValue out;
        out.value = fine;
        out.value_log = LogComplex::from(fine);
        out.estimated_error = std::abs(fine - crs);
        return out;
    }
    // log-domain: running prefix in LogComplex
    std::vector<LogComplex> gl(n);
    for (size_t i = 0; i < n; ++i)
        gl[i] = LogComplex::from_real(r.values[i]) * log_sinh(W * (r.times[i] - tau_start));
    auto wadd = [](LogComplex acc, LogComplex t, double c) {
        if (t.is_zero() || c == 0.0) return acc;
        t.log_mag += std::log(std::abs(c));
        if (c < 0) t.phase += M_PI;
        return acc + t;
    };
    std::vector<LogComplex> prefix(n);
    for (size_t k = 2; k < n; k += 2) {
        LogComplex s = prefix[k - 2];
        s = wadd(s, gl[k - 2], h / 3.0);
        s = wadd(s, gl[k - 1], 4.0 * h / 3.0);
        s = wadd(s, gl[k], h / 3.0);
        prefix[k] = s;
    }
    if (n > 1) {
        LogComplex s = LogComplex::zero();
        s = wadd(s, gl[0], 5.0 * h / 12.0);
        s = wadd(s, gl[1], 8.0 * h / 12.0);
        s = wadd(s, gl[2], -h / 12.0);
        prefix[1] = s;
    }
    for (size_t k = 3; k < n; k += 2) {
        LogComplex s = prefix[k - 1];
        s = wadd(s, gl[k - 2], -h / 12.0);
        s = wadd(s, gl[k - 1], 8.0 * h / 12.0);
        s = wadd(s, gl[k], 5.0 * h / 12.0);
        prefix[k] = s;
    }
    auto outer = [&](size_t stride) {
        const size_t nn = (n - 1) / stride + 1;
        const std::vector<double> w = sample_weights(nn, h * stride);
        LogComplex acc = LogComplex::zero();
        for (size_t i = 0, j = 0; i < n; i += stride, ++j) {
            LogComplex t = prefix[i] * log_sinh(W * (tau_end - r.times[i]));
            acc = wadd(acc, t, w[j]);
        }
        return acc;
    };
    const LogComplex fine = outer(1);
    const LogComplex crs = outer(2);
    FunctionalValue out;
    out.value_log = fine;
    out.value = fine.to_complex();
    LogComplex neg = crs;
    neg.phase += M_PI;
    out.estimated_error = std::exp((fine + neg).log_mag);
    return out;
}

}  // namespace

FunctionalValue functional_F3(const MeasurementRecord& r, Complex W, double tau_start,
                              double tau_end) {
    return f3_impl(r, W, tau_start, tau_end, true);
}

FunctionalValue nested_F1_integral(const MeasurementRecord& r, Complex W, double tau_start,
                                   double tau_end) {
    return nested_f1_impl(r, W, tau_start, tau_end, true);
}

FunctionalValue reference::functional_F3_serial(const MeasurementRecord& r, Complex W,
                                                double tau_start, double tau_end) {
    return f3_impl(r, W, tau_start, tau_end, false);
}

FunctionalValue reference::nested_F1_integral_serial(const MeasurementRecord& r, Complex W,
                                                     double tau_start, double tau_end) {
    return nested_f1_impl(r, W, tau_start, tau_end, false);
}

FunctionalValue functional_f(int variant, bool tilde, const MeasurementRecord& r, double a,
                             double b, double tau_start, double tau_end) {
    if (variant < 1 || variant > 4) throw GridMismatch("functional_f variant must be 1..4");
    check_span(r, tau_start, tau_end);
    const bool sinh_cos = (variant == 1 || variant == 3);
    const size_t n = r.times.size();
    const double h = r.step();
    std::vector<double> f(n);
    for (size_t i = 0; i < n; ++i) {
        const double u = tilde ? (tau_end - r.times[i]) : (r.times[i] - tau_start);
        f[i] = sinh_cos ? r.values[i] * std::sinh(a * u) * std::cos(b * u)
                        : r.values[i] * std::cosh(a * u) * std::sin(b * u);
    }
    const double fine = integrate_samples(f, h);
    const double crs = integrate_samples(coarse(f), 2.0 * h);
    FunctionalValue out;
    out.value = fine;
    out.value_log = LogComplex::from_real(fine);
    out.estimated_error = std::abs(fine - crs);
    return out;
}

void save_record_csv(const MeasurementRecord& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open record file for writing: " + path);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r.resolution);
    out << "# resolution_m = " << buf << "\n";
    out << "time_s,alpha_m\n";
    for (size_t i = 0; i < r.times.size(); ++i) {
        char tb[64], vb[64];
        std::snprintf(tb, sizeof tb, "%.17g", r.times[i]);
        std::snprintf(vb, sizeof vb, "%.17g", r.values[i]);
        out << tb << "," << vb << "\n";
    }
}

MeasurementRecord load_record_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open record file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty record file: " + path);
    const std::string prefix = "# resolution_m =";
    if (line.rfind(prefix, 0) != 0)
        throw ConfigError("record file missing resolution header: " + path);
    const double resolution = std::strtod(line.c_str() + prefix.size(), nullptr);
    if (!std::getline(in, line) || line != "time_s,alpha_m")
        throw ConfigError("record file missing column header: " + path);
    std::vector<double> times, values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError("malformed record row: " + line);
        times.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
        values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    return make_record_from_samples(std::move(times), std::move(values), resolution);
}

}  // namespace records
}  // namespace gravmeas
