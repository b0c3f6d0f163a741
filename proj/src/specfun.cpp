#include "rankone/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rankone/quad.hpp"

namespace rankone {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogTwoPiHalf = 0.91893853320467274178;  // ln(2*pi)/2
constexpr double kPoleTol = 1e-9;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(Complex z, double tol) {
    if (z.real() > 0.5) return false;
    const double n = std::round(z.real());
    if (n > 0.5) return false;
    return std::hypot(z.real() - n, z.imag()) < tol;
}

// log(sin(pi z)) up to a multiple of 2*pi*i; stable for large |Im z|.
Complex log_sin_pi(Complex z) {
    if (z.imag() >= 0.0) {
        const Complex e = std::exp(Complex(0.0, 2.0 * kPi) * z);
        return Complex(0.0, -kPi) * z + std::log(1.0 - e) + Complex(-0.6931471805599453, 1.5707963267948966);
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

Complex log_gamma_core(Complex z) {
    // Re z >= 0.5
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const Complex t = z + kLanczosG + 0.5;
    return kLogTwoPiHalf + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

Complex powc(double t, Complex w) {
    if (t <= 0.0) {
        if (t == 0.0) {
            if (w.real() > 0.0) return Complex(0.0, 0.0);
            if (w == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
            throw DomainError("powc: 0 raised to a non-positive-real-part exponent");
        }
        throw DomainError("powc: negative base");
    }
    return std::exp(w * std::log(t));
}

Complex log_gamma(Complex z) {
    if (near_nonpositive_integer(z, kPoleTol))
        throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()) + (z.imag() < 0 ? "-" : "+") +
                        std::to_string(std::abs(z.imag())) + "i");
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z)
    return std::log(kPi) - log_sin_pi(z) - log_gamma_core(1.0 - z);
}

Complex gamma_ratio(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
    Complex s{};
    for (const Complex& z : num) s += log_gamma(z);
    for (const Complex& z : den) s -= log_gamma(z);
    return std::exp(s);
}

Complex beta(Complex a, Complex b) {
    return gamma_ratio({a, b}, {a + b});
}

double stirling_envelope(double a, double b) {
    return std::exp((a - 0.5) * std::log1p(std::abs(b)) - 0.5 * kPi * std::abs(b));
}

double gamma_pole_distance(Complex z) {
    const double n = std::round(z.real());
    if (n > 0.5) return std::numeric_limits<double>::infinity();
    return std::hypot(z.real() - std::min(n, 0.0), z.imag());
}

double integer_distance(Complex z) {
    return std::hypot(z.real() - std::round(z.real()), z.imag());
}

// ---------------------------------------------------------------------------
// Gauss 2F1
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxSeriesTerms = 200000;

bool terminating_index(Complex a, int& k_out) {
    // a within pole tolerance of a non-positive integer -K
    if (a.real() > 0.5) return false;
    const double n = std::round(a.real());
    if (n > 0.5) return false;
    if (std::hypot(a.real() - n, a.imag()) < kPoleTol) {
        k_out = static_cast<int>(-n);
        return true;
    }
    return false;
}

Complex series_2f1(Complex a, Complex b, Complex c, double x, int terms_cap = kMaxSeriesTerms) {
    Complex term(1.0, 0.0);
    Complex sum(1.0, 0.0);
    int small_streak = 0;
    for (int k = 0; k < terms_cap; ++k) {
        const double kd = k;
        term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw DivergenceError("2F1 series did not converge");
}

Complex sum_2f1_terminating(Complex a, Complex b, Complex c, double x, int kmax) {
    Complex term(1.0, 0.0);
    Complex sum(1.0, 0.0);
    for (int k = 0; k < kmax; ++k) {
        const double kd = k;
        term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x;
        sum += term;
    }
    return sum;
}

Complex gauss_value(Complex a, Complex b, Complex c) {
    if (std::real(c - a - b) <= 0.0)
        throw DivergenceError("2F1 at x = 1 requires Re(c-a-b) > 0");
    return gamma_ratio({c, c - a - b}, {c - a, c - b});
}

Complex eval_2f1(Complex a, Complex b, Complex c, double x);

// connection at 1-x for x in (1/2, 1); requires c-a-b away from the integers
Complex connect_near_one_raw(Complex a, Complex b, Complex c, double x) {
    const double w = 1.0 - x;
    const Complex d = c - a - b;
    const Complex t1 = gamma_ratio({c, d}, {c - a, c - b}) * series_2f1(a, b, 1.0 - d, w);
    const Complex t2 = powc(w, d) * gamma_ratio({c, -d}, {a, b}) * series_2f1(c - a, c - b, 1.0 + d, w);
    return t1 + t2;
}

Complex connect_near_one(Complex a, Complex b, Complex c, double x) {
    const Complex d = c - a - b;
    if (integer_distance(d) >= 0.05) return connect_near_one_raw(a, b, c, x);
    // Near-integer c-a-b: the two-term formula degenerates. Evaluate at
    // c +- i delta, c +- 2 i delta and extrapolate (the function is analytic
    // in c; the cancellation amplifies roundoff by ~1/delta).
    const Complex id(0.0, 1e-3);
    const Complex f1 = connect_near_one_raw(a, b, c + id, x);
    const Complex f2 = connect_near_one_raw(a, b, c - id, x);
    const Complex f3 = connect_near_one_raw(a, b, c + 2.0 * id, x);
    const Complex f4 = connect_near_one_raw(a, b, c - 2.0 * id, x);
    return (4.0 * (f1 + f2) - (f3 + f4)) / 6.0;
}

Complex eval_2f1(Complex a, Complex b, Complex c, double x) {
    if (std::abs(x) <= 0.5) return series_2f1(a, b, c, x);
    if (x < 0.0) {
        // Pfaff: F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; x/(x-1)); the mapped
        // argument lies in (1/3, 1) and lands in an already-handled region.
        const double y = x / (x - 1.0);
        return powc(1.0 - x, -a) * eval_2f1(a, c - b, c, y);
    }
    return connect_near_one(a, b, c, x);
}

}  // namespace

Complex gauss_2f1(Complex a, Complex b, Complex c, double x) {
    if (near_nonpositive_integer(c, kPoleTol))
        throw PoleError("2F1: c is a non-positive integer");
    if (x > 1.0) throw DomainError("2F1: argument must satisfy x <= 1");

    int ka = 0, kb = 0;
    const bool ta = terminating_index(a, ka);
    const bool tb = terminating_index(b, kb);
    if (ta || tb) {
        const int k = ta && tb ? std::min(ka, kb) : (ta ? ka : kb);
        Complex an = ta && (!tb || ka <= kb) ? Complex(-k, 0.0) : a;
        Complex bn = (ta && (!tb || ka <= kb)) ? b : Complex(-k, 0.0);
        if (x == 1.0 || std::abs(x) <= 1.0) return sum_2f1_terminating(an, bn, c, x, k);
    }
    if (x == 1.0) return gauss_value(a, b, c);
    return eval_2f1(a, b, c, x);
}

// ---------------------------------------------------------------------------
// 3F2 at unit argument: explicit terms to K, then an Euler-Maclaurin tail.
// ---------------------------------------------------------------------------

namespace {

// Bernoulli polynomials B_2..B_7 at a complex point.
Complex bernoulli_poly(int n, Complex c) {
    const Complex c2 = c * c;
    switch (n) {
        case 2: return c2 - c + 1.0 / 6.0;
        case 3: return c * (c2 - 1.5 * c + 0.5);
        case 4: return c2 * c2 - 2.0 * c * c2 + c2 - 1.0 / 30.0;
        case 5: return c * (c2 * c2 - 2.5 * c * c2 + (5.0 / 3.0) * c2 - 1.0 / 6.0);
        case 6: return c2 * c2 * c2 - 3.0 * c * c2 * c2 + 2.5 * c2 * c2 - 0.5 * c2 + 1.0 / 42.0;
        case 7:
            return c * (c2 * c2 * c2 - 3.5 * c * c2 * c2 + 3.5 * c2 * c2 - (7.0 / 6.0) * c2 + 1.0 / 6.0);
        default: throw DomainError("bernoulli_poly: unsupported order");
    }
}

// The log of the term function t(x) relative to its leading power:
//   log t(x) = const - (s+1) log x + h(x),  h(x) = sum_n c_n / x^n.
// The x log x pieces of the six Stirling expansions cancel exactly, which is
// what makes this stable at large x.
struct TermAsymptotics {
    Complex s;                    // b1+b2-a1-a2-a3
    std::array<Complex, 6> cn{};  // coefficients of x^{-1}..x^{-6}

    TermAsymptotics(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2) {
        s = b1 + b2 - a1 - a2 - a3;
        for (int n = 1; n <= 6; ++n) {
            Complex bsum = bernoulli_poly(n + 1, a1) + bernoulli_poly(n + 1, a2) +
                           bernoulli_poly(n + 1, a3) - bernoulli_poly(n + 1, b1) -
                           bernoulli_poly(n + 1, b2) - bernoulli_poly(n + 1, Complex(1.0, 0.0));
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            cn[static_cast<std::size_t>(n - 1)] = sign * bsum / (static_cast<double>(n) * (n + 1.0));
        }
    }

    Complex h(double x) const {
        Complex acc{};
        double xp = x;
        for (int n = 1; n <= 6; ++n) {
            acc += cn[static_cast<std::size_t>(n - 1)] / xp;
            xp *= x;
        }
        return acc;
    }
    Complex h1(double x) const {  // h'
        Complex acc{};
        double xp = x * x;
        for (int n = 1; n <= 6; ++n) {
            acc -= static_cast<double>(n) * cn[static_cast<std::size_t>(n - 1)] / xp;
            xp *= x;
        }
        return acc;
    }
    Complex h2(double x) const {
        Complex acc{};
        double xp = x * x * x;
        for (int n = 1; n <= 6; ++n) {
            acc += static_cast<double>(n) * (n + 1.0) * cn[static_cast<std::size_t>(n - 1)] / xp;
            xp *= x;
        }
        return acc;
    }
    Complex h3(double x) const {
        Complex acc{};
        double xp = x * x * x * x;
        for (int n = 1; n <= 6; ++n) {
            acc -= static_cast<double>(n) * (n + 1.0) * (n + 2.0) * cn[static_cast<std::size_t>(n - 1)] / xp;
            xp *= x;
        }
        return acc;
    }
};

}  // namespace

Complex f3f2_unit(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2) {
    const Complex s = b1 + b2 - a1 - a2 - a3;

    // terminating numerator parameter: finite sum, no convergence condition
    int kt = 0;
    int kmin = -1;
    for (const Complex& a : {a1, a2, a3}) {
        if (terminating_index(a, kt)) {
            if (kmin < 0 || kt < kmin) kmin = kt;
        }
    }

    if (kmin < 0 && s.real() <= 0.0)
        throw DivergenceError("3F2 at unity requires Re(b1+b2-a1-a2-a3) > 0");
    for (const Complex& b : {b1, b2}) {
        int kb = 0;
        if (terminating_index(b, kb) && (kmin < 0 || kb < kmin))
            throw PoleError("3F2: denominator parameter hits a non-positive integer");
    }

    const double maxp = std::max({std::abs(a1), std::abs(a2), std::abs(a3), std::abs(b1), std::abs(b2)});
    const long long K = (kmin >= 0) ? kmin + 1
                                    : static_cast<long long>(std::min(20000.0, 200.0 + 60.0 * maxp));

    Complex term(1.0, 0.0);
    Complex sum{};
    Complex comp{};
    for (long long k = 0; k < K; ++k) {
        const Complex y = term - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const double kd = static_cast<double>(k);
        term *= (a1 + kd) * (a2 + kd) * (a3 + kd) / ((b1 + kd) * (b2 + kd) * (kd + 1.0));
    }
    if (kmin >= 0) return sum;  // terminating: done

    // Euler-Maclaurin for the tail sum_{k>=K} t(k), with
    // t(x) = t_K (x/K)^{-(s+1)} exp(h(x)-h(K)).
    const Complex tK = term;
    const double Kd = static_cast<double>(K);
    const TermAsymptotics asym(a1, a2, a3, b1, b2);
    const Complex hK = asym.h(Kd);

    auto u = [&](double x) -> Complex {
        return std::exp(-(s + 1.0) * std::log(x / Kd) + (asym.h(x) - hK));
    };

    // integral of u over (K, inf), mapped to w in (1, inf) by x = K w
    QuadOptions opt;
    opt.rel_tol = 1e-13;
    opt.max_evals = 400000;
    std::vector<Singularity> hints{{Singularity::At::Upper, -(1.0 + s.real())}};
    const QuadResult integral =
        integrate_1d([&](double w) { return u(Kd * w) * Kd; }, Domain::OneToInf, hints, opt);

    // derivative corrections at x = K (u(K) = 1)
    const Complex L1 = -(s + 1.0) / Kd + asym.h1(Kd);
    const Complex L2 = (s + 1.0) / (Kd * Kd) + asym.h2(Kd);
    const Complex L3 = -2.0 * (s + 1.0) / (Kd * Kd * Kd) + asym.h3(Kd);
    const Complex u1 = L1;
    const Complex u3 = L3 + 3.0 * L1 * L2 + L1 * L1 * L1;

    const Complex tail = tK * (integral.value + 0.5 - u1 / 12.0 + u3 / 720.0);
    return sum + tail;
}

}  // namespace rankone
