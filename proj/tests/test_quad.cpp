#include <doctest.h>

#include <cmath>

#include "rankone/quad.hpp"
#include "rankone/specfun.hpp"

using namespace rankone;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("integrate_1d basics") {
    const QuadResult r1 = integrate_1d([](double x) { return Complex(std::exp(-x)); },
                                       Domain::ZeroToInf, {}, 1e-12);
    CHECK(std::abs(r1.value.real() - 1.0) < 1e-12);
    CHECK(r1.evals > 0);

    const QuadResult r2 = integrate_1d(
        [](double th) { return Complex(std::sin(th) * std::cos(th)); }, Domain::ZeroToHalfPi, {}, 1e-12);
    CHECK(r2.value.real() == doctest::Approx(0.5).epsilon(1e-12));

    // int_0^inf x^{-1/2} (1+x^2)^{-1/2} dx = B(1/4,1/4)/2
    auto f = [](double x) { return Complex(std::pow(x, -0.5) / std::sqrt(1.0 + x * x)); };
    std::vector<Singularity> h{{Singularity::At::Lower, -0.5}, {Singularity::At::Upper, -1.5}};
    const QuadResult r3 = integrate_1d(f, Domain::ZeroToInf, h, 1e-11);
    CHECK(r3.value.real() == doctest::Approx(0.5 * beta(Complex(0.25), Complex(0.25)).real()).epsilon(1e-10));
}

TEST_CASE("reported error bounds the true error on the corpus") {
    struct Case {
        Integrand1D f;
        Domain dom;
        std::vector<Singularity> hints;
        double truth;
    };
    std::vector<Case> corpus;
    corpus.push_back({[](double x) { return Complex(std::exp(-x)); }, Domain::ZeroToInf, {}, 1.0});
    corpus.push_back({[](double th) { return Complex(std::sin(th) * std::cos(th)); },
                      Domain::ZeroToHalfPi,
                      {},
                      0.5});
    corpus.push_back({[](double x) { return Complex(std::pow(x, -0.5) / std::sqrt(1.0 + x * x)); },
                      Domain::ZeroToInf,
                      {{Singularity::At::Lower, -0.5}, {Singularity::At::Upper, -1.5}},
                      3.7081493546027438});
    corpus.push_back({[](double x) { return Complex(std::pow(x - 1.0, -0.5) * std::pow(x, -2.0)); },
                      Domain::OneToInf,
                      {{Singularity::At::Lower, -0.5}, {Singularity::At::Upper, -2.5}},
                      kPi / 2.0});
    for (const auto& c : corpus) {
        for (double tol : {1e-6, 1e-9, 1e-11}) {
            const QuadResult r = integrate_1d(c.f, c.dom, c.hints, tol);
            const double true_err = std::abs(r.value.real() - c.truth);
            CHECK(true_err <= std::max(3.0 * r.abs_err, 1e-14));
            CHECK(true_err <= 10.0 * tol * std::abs(c.truth));
        }
    }
}

TEST_CASE("scaling invariance") {
    for (double c : {2.0, 10.0}) {
        const QuadResult base = integrate_1d([](double x) { return Complex(std::exp(-x * x)); },
                                             Domain::ZeroToInf, {}, 1e-11);
        const QuadResult scaled = integrate_1d(
            [c](double x) { return Complex(std::exp(-(c * x) * (c * x)) * c); }, Domain::ZeroToInf,
            {}, 1e-11);
        CHECK(scaled.value.real() == doctest::Approx(base.value.real()).epsilon(1e-10));
    }
}

TEST_CASE("determinism") {
    auto f = [](double x) { return Complex(std::cos(3.0 * x) * std::exp(-x)); };
    const QuadResult a = integrate_1d(f, Domain::ZeroToInf, {}, 1e-12);
    const QuadResult b = integrate_1d(f, Domain::ZeroToInf, {}, 1e-12);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.abs_err == b.abs_err);
    CHECK(a.evals == b.evals);
}

TEST_CASE("budget and NaN errors") {
    QuadOptions opt;
    opt.rel_tol = 1e-15;
    opt.max_evals = 200;  // far too small for this tolerance
    CHECK_THROWS_AS(integrate_1d([](double x) { return Complex(std::pow(x, -0.99)); },
                                 Domain::ZeroToOne, {}, opt),
                    QuadratureError);
    CHECK_THROWS_AS(integrate_1d([](double) { return Complex(std::nan("")); }, Domain::ZeroToOne,
                                 {}, 1e-6),
                    QuadratureError);
}

TEST_CASE("integrate_axes products") {
    // e^{-r-s-t} over the octant = 1
    std::vector<Axis> axes(3);
    for (auto& a : axes) a.domain = Domain::ZeroToInf;
    const QuadResult r1 = integrate_radial3(
        [](double r, double s, double t) { return Complex(std::exp(-r - s - t)); }, axes, 1e-8);
    CHECK(r1.value.real() == doctest::Approx(1.0).epsilon(1e-7));

    // r s t e^{-r^2-s^2-t^2} = 1/8
    const QuadResult r2 = integrate_radial3(
        [](double r, double s, double t) {
            return Complex(r * s * t * std::exp(-r * r - s * s - t * t));
        },
        axes, 1e-8);
    CHECK(r2.value.real() == doctest::Approx(0.125).epsilon(1e-7));
}

TEST_CASE("monte carlo sanity modes") {
    // constant 1 on the unit box
    McConfig cfg;
    cfg.samples = 100000;
    const QuadResult c1 = integrate_mc([](const double*) { return Complex(1.0); },
                                       unit_box_sampler(4), cfg);
    CHECK(c1.value.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c1.abs_err < 1e-10);

    // Gaussian integral in dimension 3
    cfg.samples = 400000;
    const QuadResult c2 = integrate_mc(
        [](const double* v) {
            return Complex(std::exp(-(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])));
        },
        gaussian_sampler(3), cfg);
    const double truth = std::pow(kPi, 1.5);
    CHECK(std::abs(c2.value.real() - truth) <= c2.abs_err);
    CHECK(c2.abs_err < 0.05);
}

TEST_CASE("monte carlo determinism") {
    McConfig cfg;
    cfg.samples = 50000;
    cfg.seed = 99;
    auto f = [](const double* v) { return Complex(v[0] * v[1]); };
    const QuadResult a = integrate_mc(f, unit_box_sampler(2), cfg);
    const QuadResult b = integrate_mc(f, unit_box_sampler(2), cfg);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.abs_err == b.abs_err);
}
