#pragma once

#include <string>

#include "rankone/model.hpp"

namespace rankone {

/// Exact rational; envelope exponents never need big values.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    Rational(long long n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rational a, Rational b) { return !(a == b); }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

/// Growth shape (power of a) (power of b) e^{rate_a pi sqrt(a)} e^{rate_b pi sqrt(b)};
/// rates are rational multiples of pi so the corollary derivation is exact.
struct AsymptoticEnvelope {
    Rational pow_a{0};
    Rational pow_b{0};
    Rational rate_a{0};
    Rational rate_b{0};

    friend AsymptoticEnvelope operator*(const AsymptoticEnvelope& x, const AsymptoticEnvelope& y) {
        return {x.pow_a + y.pow_a, x.pow_b + y.pow_b, x.rate_a + y.rate_a, x.rate_b + y.rate_b};
    }
    friend bool operator==(const AsymptoticEnvelope& x, const AsymptoticEnvelope& y) {
        return x.pow_a == y.pow_a && x.pow_b == y.pow_b && x.rate_a == y.rate_a &&
               x.rate_b == y.rate_b;
    }
    static AsymptoticEnvelope identity() { return {}; }
};

/// Lexicographic (rate, power) dominance in the b-direction.
bool dominates_b(const AsymptoticEnvelope& x, const AsymptoticEnvelope& y);

/// a = rho^2 - lambda^2.
Complex eigenvalue_from_lambda(const SpacePair& sp, Complex lambda);

/// Canonical representative: lambda >= 0 real for a <= rho^2, lambda/i >= 0 otherwise.
Complex lambda_from_eigenvalue(const SpacePair& sp, double a);

/// |a-b|^{-(N-M-2)/4} e^{(pi/2) sqrt|a-b|}.
/// Throws at a = b when N - M > 2 (pole); returns 0 there when N - M < 2.
double modified_period_factor(const SpacePair& sp, double a, double b);

/// a^{-(N-2)/2} e^{pi sqrt(a)} T^{(N-1)/2} for 0 < a <= T (constant normalized to 1).
double theorem_a_rhs(const SpacePair& sp, double a, double T);

struct CorollaryEnvelopes {
    AsymptoticEnvelope fixed_f;  // (1): b^{(2N-M-3)/4} e^{-(pi/2) sqrt b}
    AsymptoticEnvelope fixed_g;  // (2): a^{(N-M-1)/4}
};

CorollaryEnvelopes corollary_envelopes(const SpacePair& sp);

struct DerivationReport {
    AsymptoticEnvelope derived_fixed_f;
    AsymptoticEnvelope derived_fixed_g;
    CorollaryEnvelopes stated;
    bool matches_fixed_f = false;
    bool matches_fixed_g = false;
};

/// Envelope arithmetic: invert the modified-period prefactor, take the square
/// root of the square-sum bound with T = max(a,b), and specialize b -> inf at
/// fixed a and a -> inf at fixed b. Exact rational exponents.
DerivationReport derive_corollaries(const SpacePair& sp);

}  // namespace rankone
