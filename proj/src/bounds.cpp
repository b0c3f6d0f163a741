#include "rankone/bounds.hpp"

#include <cmath>
#include <numeric>

namespace rankone {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool dominates_b(const AsymptoticEnvelope& x, const AsymptoticEnvelope& y) {
    const auto cmp = [](Rational a, Rational b) { return a.num * b.den - b.num * a.den; };
    const long long r = cmp(x.rate_b, y.rate_b);
    if (r != 0) return r > 0;
    return cmp(x.pow_b, y.pow_b) > 0;
}

Complex eigenvalue_from_lambda(const SpacePair& sp, Complex lambda) {
    const double rho = sp.rho();
    return rho * rho - lambda * lambda;
}

Complex lambda_from_eigenvalue(const SpacePair& sp, double a) {
    const double rho2 = sp.rho() * sp.rho();
    if (a <= rho2) return Complex(std::sqrt(rho2 - a), 0.0);
    return Complex(0.0, std::sqrt(a - rho2));
}

double modified_period_factor(const SpacePair& sp, double a, double b) {
    const int nm = sp.dim_g() - sp.dim_h();  // N - M
    const double gap = std::abs(a - b);
    if (gap == 0.0 && nm > 2) throw DomainError("modified_period_factor: pole at a = b");
    const double pw = -0.25 * (nm - 2);
    const double power_term = (nm == 2) ? 1.0 : std::pow(gap, pw);
    return power_term * std::exp(0.5 * kPi * std::sqrt(gap));
}

double theorem_a_rhs(const SpacePair& sp, double a, double T) {
    if (!(a > 0.0) || !(a <= T)) throw DomainError("theorem_a_rhs requires 0 < a <= T");
    const double N = sp.dim_g();
    return std::exp(-0.5 * (N - 2.0) * std::log(a) + kPi * std::sqrt(a) +
                    0.5 * (N - 1.0) * std::log(T));
}

CorollaryEnvelopes corollary_envelopes(const SpacePair& sp) {
    const long long N = sp.dim_g();
    const long long M = sp.dim_h();
    CorollaryEnvelopes e;
    e.fixed_f.pow_b = Rational(2 * N - M - 3, 4);
    e.fixed_f.rate_b = Rational(-1, 2);
    e.fixed_g.pow_a = Rational(N - M - 1, 4);
    e.fixed_g.rate_a = Rational(0);
    return e;
}

DerivationReport derive_corollaries(const SpacePair& sp) {
    const long long N = sp.dim_g();
    const long long M = sp.dim_h();

    // |P| <= |a-b|^{(N-M-2)/4} e^{-(pi/2) sqrt|a-b|} [a^{-(N-2)/2} e^{pi sqrt a} T^{(N-1)/2}]^{1/2}
    const Rational gap_pow(N - M - 2, 4);
    const Rational gap_rate(-1, 2);
    const Rational rhs_pow_a(-(N - 2), 4);
    const Rational rhs_rate_a(1, 2);
    const Rational rhs_pow_T(N - 1, 4);

    DerivationReport rep;
    rep.stated = corollary_envelopes(sp);

    // (1) fixed a, b -> inf, T = b: |a-b| ~ b
    {
        AsymptoticEnvelope env;
        env.pow_b = gap_pow + rhs_pow_T;
        env.rate_b = gap_rate;
        rep.derived_fixed_f = env;
    }
    // (2) fixed b, a -> inf, T = a: |a-b| ~ a; the two rates cancel
    {
        AsymptoticEnvelope env;
        env.pow_a = gap_pow + rhs_pow_a + rhs_pow_T;
        env.rate_a = gap_rate + rhs_rate_a;
        rep.derived_fixed_g = env;
    }
    rep.matches_fixed_f = rep.derived_fixed_f == rep.stated.fixed_f;
    rep.matches_fixed_g = rep.derived_fixed_g == rep.stated.fixed_g;
    return rep;
}

}  // namespace rankone
