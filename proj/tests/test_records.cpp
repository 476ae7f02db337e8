#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "golden_values.hpp"
#include "gravmeas/errors.hpp"
#include "gravmeas/records.hpp"

using namespace gravmeas;
using namespace gravmeas::records;

namespace {

MeasurementRecord random_record(std::mt19937_64& rng, int n = 201, double res = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MeasurementRecord base = make_constant_record(0.0, GridSpec{0.0, 1.0, n}, res);
    // smooth pseudo-random record: a few Fourier modes with random weights
    const double a1 = u(rng), a2 = u(rng), a3 = u(rng), a0 = u(rng);
    for (size_t i = 0; i < base.times.size(); ++i) {
        const double t = base.times[i];
        base.values[i] = a0 + a1 * std::sin(2.0 * M_PI * t) + a2 * std::cos(4.0 * M_PI * t) +
                         a3 * std::sin(6.0 * M_PI * t + 0.5);
    }
    return base;
}

}  // namespace

TEST_CASE("record generators hit their closed forms") {
    const GridSpec g{0.0, 1.0, 101};
    const MeasurementRecord zero = make_constant_record(0.0, g, 1.0);
    CHECK(zero.times.size() == 101);
    for (double v : zero.values) CHECK(v == 0.0);

    const MeasurementRecord ff = make_free_fall_record(1.0, 0.0, 2.0, g, 1.0);
    CHECK(ff.value_at(1.0) == doctest::Approx(0.0).epsilon(1e-15));

    const MeasurementRecord sin1 = make_sinusoid_record(1.0, 2.0 * M_PI, 0.0, g, 1.0);
    CHECK(sin1.value_at(0.25) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("even sample counts round up to odd") {
    const MeasurementRecord r = make_constant_record(1.0, GridSpec{0.0, 1.0, 100}, 1.0);
    CHECK(r.times.size() == 101);
}

TEST_CASE("record invariants are enforced") {
    CHECK_THROWS_AS(make_record_from_samples({0.0, 1.0}, {0.0, 0.0}, 1.0), GridMismatch);
    CHECK_THROWS_AS(make_record_from_samples({0.0, 0.3, 1.0}, {0.0, 0.0, 0.0}, 1.0),
                    GridMismatch);
    CHECK_THROWS_AS(make_record_from_samples({0.0, 0.5, 1.0}, {0.0, 0.0, 0.0}, -1.0),
                    GridMismatch);
}

TEST_CASE("record_norm examples") {
    const GridSpec g{0.0, 1.0, 1001};
    CHECK(record_norm(make_constant_record(1.0, g, 1.0)).value.real() ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(record_norm(make_constant_record(0.0, g, 1.0)).value.real() == 0.0);
    const MeasurementRecord s = make_sinusoid_record(1.0, 2.0 * M_PI, 0.0, g, 1.0);
    CHECK(record_norm(s).value.real() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(record_norm(s).estimated_error >= 0.0);
}

TEST_CASE("record_norm is positive and zero only for the zero record") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const MeasurementRecord r = random_record(rng);
        const double n = record_norm(r).value.real();
        CHECK(n >= 0.0);
    }
    const MeasurementRecord z = make_constant_record(0.0, GridSpec{0.0, 1.0, 101}, 1.0);
    CHECK(record_norm(z).value.real() == 0.0);
}

TEST_CASE("single functionals on a constant record") {
    const GridSpec g{0.0, 1.0, 1001};
    const MeasurementRecord one = make_constant_record(1.0, g, 1.0);
    const MeasurementRecord zero = make_constant_record(0.0, g, 1.0);
    const Complex W(1.0, 0.0);
    for (int v : {1, 2, 4}) {
        CHECK(std::abs(functional_F(v, zero, W, 0.0, 1.0).value) == 0.0);
    }
    const Complex f2 = functional_F(2, one, W, 0.0, 1.0).value;
    CHECK(f2.real() == doctest::Approx(golden::F2_const1).epsilon(1e-10));
    CHECK(f2.imag() == doctest::Approx(0.0).epsilon(1e-14));
    // variant 1 matches by the tau -> tau''+tau'-tau symmetry of constants
    const Complex f1 = functional_F(1, one, W, 0.0, 1.0).value;
    CHECK(f1.real() == doctest::Approx(golden::F2_const1).epsilon(1e-10));
}

TEST_CASE("double functional against the high-precision value") {
    const GridSpec g{0.0, 1.0, 401};
    const MeasurementRecord one = make_constant_record(1.0, g, 1.0);
    const Complex v = functional_F3(one, Complex(1.0, 0.0), 0.0, 1.0).value;
    CHECK(v.real() == doctest::Approx(golden::F3_const1).epsilon(1e-9));
    CHECK(std::abs(v.imag()) < 1e-14);

    // brute-force nested trapezoid as an in-test cross check
    const int n = 2001;
    const double h = 1.0 / (n - 1);
    double brute = 0.0;
    for (int k = 1; k < n; ++k) {
        const double tk = k * h;
        double inner = 0.0;
        for (int j = 1; j <= k; ++j) {
            const double sj = j * h;
            const double f = std::sinh(sj);
            const double fprev = std::sinh(sj - h);
            inner += 0.5 * h * (f + fprev);
        }
        const double outer = std::sinh(1.0 - tk) * inner;
        const double outer_prev_weight = (k == n - 1) ? 0.5 : 1.0;
        brute += h * outer * outer_prev_weight;
    }
    CHECK(v.real() == doctest::Approx(brute).epsilon(1e-3));
}

TEST_CASE("double functional is bilinear in the record") {
    std::mt19937_64 rng(17);
    const MeasurementRecord r = random_record(rng, 201);
    MeasurementRecord r2 = r;
    for (double& x : r2.values) x *= 2.0;
    const Complex W(0.8, 0.45);
    const Complex a = functional_F3(r, W, 0.0, 1.0).value;
    const Complex b = functional_F3(r2, W, 0.0, 1.0).value;
    CHECK(std::abs(b - 4.0 * a) < 1e-12 * std::abs(b));
}

TEST_CASE("nested F1 integral matches its serial re-evaluation") {
    std::mt19937_64 rng(23);
    const MeasurementRecord r = random_record(rng, 201);
    const Complex W(0.8, 0.45);
    const Complex cached = nested_F1_integral(r, W, 0.0, 1.0).value;
    const Complex serial = reference::nested_F1_integral_serial(r, W, 0.0, 1.0).value;
    CHECK(std::abs(cached - serial) < 1e-11 * std::abs(serial));
    // golden value for the constant-record case
    const MeasurementRecord one = make_constant_record(1.0, GridSpec{0.0, 1.0, 401}, 1.0);
    CHECK(nested_F1_integral(one, Complex(1.0, 0.0), 0.0, 1.0).value.real() ==
          doctest::Approx(golden::N1_const1).epsilon(1e-9));
}

TEST_CASE("single functionals are linear in the record") {
    std::mt19937_64 rng(5);
    const MeasurementRecord a = random_record(rng), b = random_record(rng);
    MeasurementRecord sum = a;
    for (size_t i = 0; i < sum.values.size(); ++i)
        sum.values[i] = 2.0 * a.values[i] + 3.0 * b.values[i];
    const Complex W(0.6, 1.1);
    for (int v : {1, 2, 4}) {
        const Complex fa = functional_F(v, a, W, 0.0, 1.0).value;
        const Complex fb = functional_F(v, b, W, 0.0, 1.0).value;
        const Complex fs = functional_F(v, sum, W, 0.0, 1.0).value;
        CHECK(std::abs(fs - (2.0 * fa + 3.0 * fb)) <
              1e-12 * (std::abs(fa) + std::abs(fb) + std::abs(fs)));
    }
}

TEST_CASE("split functionals examples and recombination") {
    const GridSpec g{0.0, 1.0, 1001};
    const MeasurementRecord zero = make_constant_record(0.0, g, 1.0);
    const MeasurementRecord one = make_constant_record(1.0, g, 1.0);
    CHECK(functional_f(1, false, zero, 1.0, 0.5, 0.0, 1.0).value.real() == 0.0);
    // check = 0 reduces variant 1 to the plain sinh integral
    CHECK(functional_f(1, false, one, 1.0, 0.0, 0.0, 1.0).value.real() ==
          doctest::Approx(golden::F2_const1).epsilon(1e-10));

    std::mt19937_64 rng(29);
    for (int i = 0; i < 10; ++i) {
        const MeasurementRecord r = random_record(rng, 401);
        const double a = 0.9, b = 0.7;
        const double f1 = functional_f(1, false, r, a, b, 0.0, 1.0).value.real();
        const double f2 = functional_f(2, false, r, a, b, 0.0, 1.0).value.real();
        const Complex F1 = functional_F(1, r, Complex(a, b), 0.0, 1.0).value;
        CHECK(std::abs(Complex(f1, f2) - F1) < 1e-10 * (1.0 + std::abs(F1)));
        // tilde variants recombine into variant 2
        const double g1 = functional_f(1, true, r, a, b, 0.0, 1.0).value.real();
        const double g2 = functional_f(2, true, r, a, b, 0.0, 1.0).value.real();
        const Complex F2 = functional_F(2, r, Complex(a, b), 0.0, 1.0).value;
        CHECK(std::abs(Complex(g1, g2) - F2) < 1e-10 * (1.0 + std::abs(F2)));
    }
}

TEST_CASE("log-domain accumulation agrees with direct evaluation") {
    // Re(W)*T = 32 crosses the log-domain switch; direct still representable
    const GridSpec g{0.0, 1.0, 801};
    const MeasurementRecord r = make_sinusoid_record(0.7, 9.0, 0.3, g, 1.0);
    const Complex W(32.0, 4.0);
    for (int v : {1, 2, 4}) {
        const FunctionalValue lv = functional_F(v, r, W, 0.0, 1.0);
        // naive direct Simpson for comparison
        std::vector<Complex> f(r.times.size());
        for (size_t i = 0; i < f.size(); ++i) {
            const double u1 = r.times[i], u2 = 1.0 - r.times[i];
            if (v == 1) f[i] = r.values[i] * std::sinh(W * u1);
            if (v == 2) f[i] = r.values[i] * std::sinh(W * u2);
            if (v == 4) f[i] = r.values[i] * std::sinh(W * u2) * std::cosh(W * u1);
        }
        Complex direct(0.0);
        const double h = r.step();
        for (size_t i = 0; i + 2 < f.size(); i += 2)
            direct += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        CHECK(std::abs(lv.value - direct) < 1e-11 * std::abs(direct));
        CHECK(lv.value_log.finite());
    }
}

TEST_CASE("functionals survive huge arguments in log domain") {
    const GridSpec g{0.0, 1.0, 801};
    const MeasurementRecord r = make_sinusoid_record(0.7, 9.0, 0.3, g, 1.0);
    const Complex W(800.0, 11.0);  // sinh overflows doubles outright
    for (int v : {1, 2, 4}) {
        const FunctionalValue lv = functional_F(v, r, W, 0.0, 1.0);
        CHECK(lv.value_log.finite());
        CHECK(lv.value_log.log_mag > 700.0);
    }
    CHECK(functional_F3(r, W, 0.0, 1.0).value_log.finite());
    CHECK(nested_F1_integral(r, W, 0.0, 1.0).value_log.finite());
}

TEST_CASE("Simpson convergence order on smooth records") {
    auto value_at = [](int n) {
        const MeasurementRecord r =
            make_sinusoid_record(1.0, 2.0 * M_PI, 0.3, GridSpec{0.0, 1.0, n}, 1.0);
        return functional_F(1, r, Complex(1.2, 0.8), 0.0, 1.0).value;
    };
    // analytic-limit surrogate: a very fine grid
    const Complex ref = value_at(16001);
    const double e1 = std::abs(value_at(101) - ref);
    const double e2 = std::abs(value_at(201) - ref);
    CHECK(e1 / e2 >= 12.0);

    auto norm_at = [](int n) {
        // incommensurate frequency: keeps Simpson off the periodic
        // superconvergence regime
        return record_norm(make_sinusoid_record(1.0, 9.0, 0.3, GridSpec{0.0, 1.0, n}, 1.0))
            .value.real();
    };
    const double nref = norm_at(16001);
    CHECK(std::abs(norm_at(101) - nref) / std::abs(norm_at(201) - nref) >= 12.0);
}

TEST_CASE("grid mismatch is a fault") {
    const MeasurementRecord r = make_constant_record(1.0, GridSpec{0.0, 0.5, 101}, 1.0);
    CHECK_THROWS_AS(functional_F(1, r, Complex(1.0, 0.0), 0.0, 1.0), GridMismatch);
    CHECK_THROWS_AS(functional_f(1, false, r, 1.0, 0.0, 0.0, 1.0), GridMismatch);
}

TEST_CASE("csv round trip is bit exact") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "gravmeas_records_test";
    fs::create_directories(dir);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 5; ++i) {
        MeasurementRecord r = random_record(rng, 81, 0.123456789012345 + i);
        const std::string path = (dir / ("rec" + std::to_string(i) + ".csv")).string();
        save_record_csv(r, path);
        const MeasurementRecord back = load_record_csv(path);
        REQUIRE(back.times.size() == r.times.size());
        CHECK(back.resolution == r.resolution);
        for (size_t j = 0; j < r.times.size(); ++j) {
            CHECK(back.times[j] == r.times[j]);
            CHECK(back.values[j] == r.values[j]);
        }
    }
    fs::remove_all(dir);
}
