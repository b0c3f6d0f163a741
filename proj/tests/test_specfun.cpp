#include <doctest.h>

#include <cmath>
#include <random>

#include "rankone/quad.hpp"
#include "rankone/specfun.hpp"

using namespace rankone;

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex rand_c(std::mt19937_64& rng, double re_lo, double re_hi, double im_span) {
    return {re_lo + (re_hi - re_lo) * mc_uniform(rng), im_span * (2.0 * mc_uniform(rng) - 1.0)};
}

double wrap_to_pi(double x) {
    while (x > kPi) x -= 2.0 * kPi;
    while (x < -kPi) x += 2.0 * kPi;
    return x;
}

}  // namespace

TEST_CASE("log_gamma special values") {
    CHECK(std::abs(log_gamma(Complex(1.0, 0.0))) < 1e-14);
    CHECK(log_gamma(Complex(0.5, 0.0)).real() == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
    CHECK(log_gamma(Complex(5.0, 0.0)).real() == doctest::Approx(std::log(24.0)).epsilon(1e-14));

    // |Gamma(1+50i)| against the leading Stirling form
    const double lg = log_gamma(Complex(1.0, 50.0)).real();
    const double stirling = 0.5 * std::log(2.0 * kPi) + 0.5 * std::log(50.0) - 25.0 * kPi;
    CHECK(lg == doctest::Approx(stirling).epsilon(1e-10));
}

TEST_CASE("log_gamma poles") {
    CHECK_THROWS_AS(log_gamma(Complex(0.0, 0.0)), PoleError);
    CHECK_THROWS_AS(log_gamma(Complex(-3.0, 0.0)), PoleError);
    CHECK_THROWS_AS(log_gamma(Complex(-1.0 + 1e-12, 0.0)), PoleError);
    CHECK_NOTHROW(log_gamma(Complex(-1.5, 0.0)));
    CHECK_NOTHROW(log_gamma(Complex(-1.0, 0.5)));
}

TEST_CASE("log_gamma recursion on a random grid") {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int k = 0; k < 400; ++k) {
        Complex z = rand_c(rng, -6.0, 6.0, 6.0);
        if (gamma_pole_distance(z) < 0.1 || gamma_pole_distance(z + 1.0) < 0.1) continue;
        if (std::abs(z) < 0.1) continue;
        const Complex delta = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
        // compare modulo 2 pi i (reflection may shift the branch)
        const double err = std::hypot(delta.real(), wrap_to_pi(delta.imag()));
        worst = std::max(worst, err);
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("duplication formula in log space") {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int k = 0; k < 300; ++k) {
        Complex z = rand_c(rng, 0.1, 5.0, 5.0);
        const Complex delta = log_gamma(z) + log_gamma(z + 0.5) -
                              ((1.0 - 2.0 * z) * std::log(2.0) + 0.5 * std::log(kPi) + log_gamma(2.0 * z));
        const double err = std::hypot(delta.real(), wrap_to_pi(delta.imag()));
        worst = std::max(worst, err);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("beta values") {
    CHECK(beta(Complex(1.0), Complex(1.0)).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta(Complex(0.5), Complex(0.5)).real() == doctest::Approx(kPi).epsilon(1e-14));

    // B(1/4,1/4) against direct quadrature of its Euler integral
    auto f = [](double t) { return powc(t, Complex(-0.75)) * powc(1.0 - t, Complex(-0.75)); };
    std::vector<Singularity> h{{Singularity::At::Lower, -0.75}, {Singularity::At::Upper, -0.75}};
    const QuadResult r = integrate_1d(f, Domain::ZeroToOne, h, 1e-12);
    CHECK(beta(Complex(0.25), Complex(0.25)).real() == doctest::Approx(r.value.real()).epsilon(1e-10));
}

TEST_CASE("stirling envelope") {
    CHECK(stirling_envelope(0.5, 0.0) == 1.0);
    CHECK(stirling_envelope(0.5, 3.0) == doctest::Approx(std::exp(-1.5 * kPi)));
    // |Gamma(3/2+40i)| / (sqrt(2 pi) 40 e^{-20 pi}) within 1 +- 2/40
    const double ratio = std::exp(log_gamma(Complex(1.5, 40.0)).real() -
                                  (0.5 * std::log(2.0 * kPi) + std::log(40.0) - 20.0 * kPi));
    CHECK(ratio > 1.0 - 0.05);
    CHECK(ratio < 1.0 + 0.05);
}

TEST_CASE("2F1 basic values") {
    CHECK(gauss_2f1(Complex(0.7, 1.0), Complex(2.0), Complex(1.3), 0.0).real() == 1.0);
    CHECK(gauss_2f1(Complex(1.0), Complex(1.0), Complex(3.0), 1.0).real() ==
          doctest::Approx(2.0).epsilon(1e-13));
    // ln(1+x) = x 2F1(1,1;2;-x)
    CHECK(0.3 * gauss_2f1(Complex(1.0), Complex(1.0), Complex(2.0), -0.3).real() ==
          doctest::Approx(std::log(1.3)).epsilon(1e-13));
    CHECK(0.9 * gauss_2f1(Complex(1.0), Complex(1.0), Complex(2.0), 0.9).real() ==
          doctest::Approx(-std::log(0.1)).epsilon(1e-12));
}

TEST_CASE("2F1 against the Euler integral oracle") {
    // F(a,b;c;1-x) = G(c)/(G(c-b)G(b)) int_0^inf t^{b-1}(1+t)^{a-c}(1+xt)^{-a} dt
    const Complex a(0.5, 2.0), b(1.0), c(2.5);
    const double x = 4.7;  // argument 1-x = -3.7
    auto f = [&](double t) {
        return powc(t, b - 1.0) * powc(1.0 + t, a - c) * powc(1.0 + x * t, -a);
    };
    std::vector<Singularity> h{{Singularity::At::Lower, 0.0},
                               {Singularity::At::Upper, (b - c).real() - 1.0}};
    const QuadResult integral = integrate_1d(f, Domain::ZeroToInf, h, 1e-12);
    const Complex oracle = gamma_ratio({c}, {c - b, b}) * integral.value;
    const Complex val = gauss_2f1(a, b, c, -3.7);
    CHECK(std::abs(val - oracle) / std::abs(oracle) < 1e-10);
}

TEST_CASE("2F1 Euler transformation property") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const Complex a = rand_c(rng, 0.1, 3.0, 5.0);
        const Complex b = rand_c(rng, 0.1, 3.0, 5.0);
        const Complex c = rand_c(rng, 0.1, 3.0, 5.0);
        if (gamma_pole_distance(c) < 0.05) continue;
        const double x = 0.9 * (2.0 * mc_uniform(rng) - 1.0);
        if (integer_distance(c - a - b) < 0.05 || integer_distance(a - b) < 0.05) continue;
        const Complex lhs = gauss_2f1(a, b, c, x);
        const Complex rhs = powc(1.0 - x, c - a - b) * gauss_2f1(c - a, c - b, c, x);
        CHECK(std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)) < 1e-10);
    }
}

TEST_CASE("2F1 continuation is consistent across the x = -1 seam") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 100; ++k) {
        const Complex a = rand_c(rng, 0.1, 2.5, 4.0);
        const Complex b = rand_c(rng, 0.1, 2.5, 4.0);
        const Complex c = rand_c(rng, 0.3, 3.0, 4.0);
        if (gamma_pole_distance(c) < 0.05) continue;
        if (integer_distance(a - b) < 0.05 || integer_distance(c - a - b) < 0.05) continue;
        const Complex lo = gauss_2f1(a, b, c, -1.0 - 1e-7);
        const Complex hi = gauss_2f1(a, b, c, -1.0 + 1e-7);
        CHECK(std::abs(lo - hi) / std::max(std::abs(lo), std::abs(hi)) < 1e-9);
    }
}

TEST_CASE("2F1 conjugation symmetry") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 100; ++k) {
        const Complex a = rand_c(rng, 0.1, 3.0, 5.0);
        const Complex b = rand_c(rng, 0.1, 3.0, 5.0);
        const Complex c = rand_c(rng, 0.1, 3.0, 5.0);
        if (gamma_pole_distance(c) < 0.05) continue;
        const double x = 0.8 * (2.0 * mc_uniform(rng) - 1.0);
        const Complex v = gauss_2f1(a, b, c, x);
        const Complex vc = gauss_2f1(std::conj(a), std::conj(b), std::conj(c), x);
        CHECK(std::abs(vc - std::conj(v)) / std::abs(v) < 1e-11);
    }
}

TEST_CASE("2F1 errors") {
    CHECK_THROWS_AS(gauss_2f1(Complex(1.0), Complex(1.0), Complex(-2.0), 0.3), PoleError);
    CHECK_THROWS_AS(gauss_2f1(Complex(2.0), Complex(2.0), Complex(3.0), 1.0), DivergenceError);
    CHECK_THROWS_AS(gauss_2f1(Complex(1.0), Complex(1.0), Complex(3.0), 1.5), DomainError);
}

TEST_CASE("3F2 at unity") {
    // sum 1/(k+1)^2 = pi^2/6
    const Complex v = f3f2_unit(Complex(1.0), Complex(1.0), Complex(1.0), Complex(2.0), Complex(2.0));
    CHECK(v.real() == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-13);

    // a3 = b2 cancels term-wise, leaving the Gauss value
    std::mt19937_64 rng(19);
    for (int k = 0; k < 50; ++k) {
        const Complex a = rand_c(rng, 0.1, 2.0, 3.0);
        const Complex b = rand_c(rng, 0.1, 2.0, 3.0);
        const Complex c = a + b + rand_c(rng, 0.2, 3.0, 3.0);
        const Complex x = rand_c(rng, 0.1, 2.0, 3.0);
        if (gamma_pole_distance(c) < 0.05 || gamma_pole_distance(c - a - b) < 0.05) continue;
        if (gamma_pole_distance(c - a) < 0.05 || gamma_pole_distance(c - b) < 0.05) continue;
        const Complex lhs = f3f2_unit(a, b, x, c, x);
        const Complex rhs = gamma_ratio({c, c - a - b}, {c - a, c - b});
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-10);
    }
}

TEST_CASE("3F2 permutation symmetry") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 30; ++k) {
        const Complex a1 = rand_c(rng, 0.1, 2.0, 3.0);
        const Complex a2 = rand_c(rng, 0.1, 2.0, 3.0);
        const Complex a3 = rand_c(rng, 0.1, 2.0, 3.0);
        const Complex b1 = a1 + a2 + rand_c(rng, 0.2, 2.0, 3.0);
        const Complex b2 = a3 + rand_c(rng, 0.2, 2.0, 3.0);
        const Complex v1 = f3f2_unit(a1, a2, a3, b1, b2);
        const Complex v2 = f3f2_unit(a3, a1, a2, b2, b1);
        CHECK(std::abs(v1 - v2) / std::abs(v1) < 1e-11);
    }
}

TEST_CASE("3F2 divergence is rejected") {
    CHECK_THROWS_AS(f3f2_unit(Complex(2.0), Complex(2.0), Complex(2.0), Complex(2.0), Complex(2.0)),
                    DivergenceError);
}
