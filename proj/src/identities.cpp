#include "rankone/identities.hpp"

#include <algorithm>
#include <cmath>

#include "rankone/specfun.hpp"

namespace rankone {

namespace {
constexpr double kPi = 3.14159265358979323846;

Complex P(const IdentityCase& c, const std::string& key) {
    auto it = c.params.find(key);
    if (it == c.params.end()) throw DomainError("identity case missing parameter '" + key + "'");
    return it->second;
}

double relative_difference(Complex a, Complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

}  // namespace

std::string identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::A1: return "A1";
        case IdentityId::EulerTransf: return "EulerTransf";
        case IdentityId::EulerIntRep: return "EulerIntRep";
        case IdentityId::A4: return "A4";
        case IdentityId::Pfaff: return "Pfaff";
        case IdentityId::GR7512: return "GR7512";
        case IdentityId::A5: return "A5";
        case IdentityId::GaussValue: return "GaussValue";
        case IdentityId::A7: return "A7";
    }
    throw DomainError("unknown identity");
}

IdentityId identity_from_string(const std::string& s) {
    for (IdentityId id : all_identities())
        if (identity_name(id) == s) return id;
    throw DomainError("unknown identity '" + s + "'");
}

std::vector<IdentityId> all_identities() {
    return {IdentityId::A1,     IdentityId::EulerTransf, IdentityId::EulerIntRep,
            IdentityId::A4,     IdentityId::Pfaff,       IdentityId::GR7512,
            IdentityId::A5,     IdentityId::GaussValue,  IdentityId::A7};
}

bool case_valid(const IdentityCase& c) {
    switch (c.id) {
        case IdentityId::A1: {
            const double al = P(c, "alpha").real(), be = P(c, "beta").real();
            const Complex l = P(c, "lambda"), mu = P(c, "mu"), nu = P(c, "nu");
            return al > 0.0 && be > 0.0 && l.real() > 0.0 && l.real() < 2.0 * (mu + nu).real();
        }
        case IdentityId::EulerTransf: {
            const double x = P(c, "x").real();
            return std::abs(x) < 1.0 && gamma_pole_distance(P(c, "gamma")) > 1e-9;
        }
        case IdentityId::EulerIntRep: {
            const Complex be = P(c, "beta"), ga = P(c, "gamma");
            return (ga - be).real() > 0.0 && be.real() > 0.0 && P(c, "x").real() > 0.0;
        }
        case IdentityId::A4: {
            const Complex mu = P(c, "mu"), nu = P(c, "nu");
            const double be = P(c, "beta").real();
            return be >= 0.0 && be < 1.0 && mu.real() > 0.0 && (mu + 2.0 * nu).real() < 0.0;
        }
        case IdentityId::Pfaff: {
            const double x = P(c, "x").real();
            return x < 1.0 && gamma_pole_distance(P(c, "gamma")) > 1e-9;
        }
        case IdentityId::GR7512: {
            const Complex rho = P(c, "rho"), si = P(c, "sigma");
            const Complex al = P(c, "alpha"), be = P(c, "beta"), ga = P(c, "gamma");
            return rho.real() > 0.0 && si.real() > 0.0 && (ga + si - al - be).real() > 0.0 &&
                   gamma_pole_distance(ga) > 1e-9;
        }
        case IdentityId::A5: {
            const Complex rho = P(c, "rho"), si = P(c, "sigma");
            const Complex al = P(c, "alpha"), be = P(c, "beta");
            return rho.real() > 0.0 && (al - si - rho + 1.0).real() > 0.0 &&
                   (be - si - rho + 1.0).real() > 0.0 && gamma_pole_distance(P(c, "gamma")) > 1e-9;
        }
        case IdentityId::GaussValue: {
            const Complex al = P(c, "alpha"), be = P(c, "beta"), ga = P(c, "gamma");
            return (ga - al - be).real() > 0.0 && gamma_pole_distance(ga) > 1e-9;
        }
        case IdentityId::A7: {
            return P(c, "mu").real() > 0.0 && P(c, "nu").real() > 0.0;
        }
    }
    return false;
}

namespace {

QuadOptions quad_opts(double tol) {
    QuadOptions o;
    o.rel_tol = tol;
    return o;
}

IdentityReport make_report(const IdentityCase& c, Complex lhs, Complex rhs, double tol) {
    IdentityReport r;
    r.c = c;
    r.lhs = lhs;
    r.rhs = rhs;
    r.relerr = relative_difference(lhs, rhs);
    r.pass = r.relerr <= tol;
    return r;
}

}  // namespace

IdentityReport verify_identity(const IdentityCase& c, double tol) {
    if (!case_valid(c)) throw InvalidCaseError("identity " + identity_name(c.id) + ": validity condition violated");
    const double qtol = tol * 0.05;

    switch (c.id) {
        case IdentityId::A1: {
            const double al = P(c, "alpha").real(), be = P(c, "beta").real();
            const Complex l = P(c, "lambda"), mu = P(c, "mu"), nu = P(c, "nu");
            auto f = [&](double x) {
                return powc(x, l - 1.0) * powc(1.0 + al * x * x, -mu) * powc(1.0 + be * x * x, -nu);
            };
            std::vector<Singularity> h{{Singularity::At::Lower, l.real() - 1.0},
                                       {Singularity::At::Upper, l.real() - 1.0 - 2.0 * (mu + nu).real()}};
            const Complex lhs = integrate_1d(f, Domain::ZeroToInf, h, quad_opts(qtol)).value;
            const Complex rhs = 0.5 * powc(al, -l / 2.0) * beta(l / 2.0, mu + nu - l / 2.0) *
                                gauss_2f1(nu, l / 2.0, mu + nu, 1.0 - be / al);
            return make_report(c, lhs, rhs, tol);
        }
        case IdentityId::EulerTransf: {
            const Complex al = P(c, "alpha"), be = P(c, "beta"), ga = P(c, "gamma");
            const double x = P(c, "x").real();
            const Complex lhs = gauss_2f1(al, be, ga, x);
            const Complex rhs = powc(1.0 - x, ga - al - be) * gauss_2f1(ga - al, ga - be, ga, x);
            return make_report(c, lhs, rhs, tol);
        }
        case IdentityId::EulerIntRep: {
            const Complex al = P(c, "alpha"), be = P(c, "beta"), ga = P(c, "gamma");
            const double x = P(c, "x").real();
            auto f = [&](double t) {
                return powc(t, be - 1.0) * powc(1.0 + t, al - ga) * powc(1.0 + x * t, -al);
            };
            std::vector<Singularity> h{{Singularity::At::Lower, be.real() - 1.0},
                                       {Singularity::At::Upper, (be - ga).real() - 1.0}};
            const Complex lhs = gamma_ratio({ga}, {ga - be, be}) *
                                integrate_1d(f, Domain::ZeroToInf, h, quad_opts(qtol)).value;
            const Complex rhs = gauss_2f1(al, be, ga, 1.0 - x);
            return make_report(c, lhs, rhs, tol);
        }
        case IdentityId::A4: {
            const Complex mu = P(c, "mu"), nu = P(c, "nu");
            const double be = P(c, "beta").real();
            auto f = [&](double x) { return powc(x - 1.0, mu - 1.0) * powc(x * x + be, nu); };
            std::vector<Singularity> h{{Singularity::At::Lower, mu.real() - 1.0},
                                       {Singularity::At::Upper, mu.real() - 1.0 + 2.0 * nu.real()}};
            const Complex lhs = integrate_1d(f, Domain::OneToInf, h, quad_opts(qtol)).value;
            const Complex rhs = gamma_ratio({mu, -mu - 2.0 * nu}, {-2.0 * nu}) *
                                gauss_2f1(-mu / 2.0 - nu, (1.0 - mu) / 2.0 - nu, 0.5 - nu, -be);
            return make_report(c, lhs, rhs, tol);
        }
        case IdentityId::Pfaff: {
            const Complex al = P(c, "alpha"), be = P(c, "beta"), ga = P(c, "gamma");
            const double x = P(c, "x").real();
            const Complex lhs = gauss_2f1(al, be, ga, x);
            const Complex rhs = powc(1.0 - x, -al) * gauss_2f1(al, ga - be, ga, x / (x - 1.0));
            return make_report(c, lhs, rhs, tol);
        }
        case IdentityId::GR7512: {
            const Complex rho = P(c, "rho"), si = P(c, "sigma");
            const Complex al = P(c, "alpha"), be = P(c, "beta"), ga = P(c, "gamma");
            auto f = [&](double x) {
                return powc(x, rho - 1.0) * powc(1.0 - x, si - 1.0) * gauss_2f1(al, be, ga, x);
            };
            const double edge = std::min(0.0, (ga - al - be).real());
            std::vector<Singularity> h{{Singularity::At::Lower, rho.real() - 1.0},
                                       {Singularity::At::Upper, si.real() - 1.0 + edge}};
            const Complex lhs = integrate_1d(f, Domain::ZeroToOne, h, quad_opts(qtol)).value;
            const Complex rhs = gamma_ratio({rho, si}, {rho + si}) * f3f2_unit(al, be, rho, ga, rho + si);
            return make_report(c, lhs, rhs, tol);
        }
        case IdentityId::A5: {
            const Complex rho = P(c, "rho"), si = P(c, "sigma");
            const Complex al = P(c, "alpha"), be = P(c, "beta"), ga = P(c, "gamma");
            auto f = [&](double x) {
                return powc(x, rho - 1.0) * powc(1.0 + x, si - 1.0) * gauss_2f1(al, be, ga, -x);
            };
            const double decay = (rho + si).real() - 2.0 - std::min(al.real(), be.real());
            std::vector<Singularity> h{{Singularity::At::Lower, rho.real() - 1.0},
                                       {Singularity::At::Upper, decay}};
            const Complex lhs = integrate_1d(f, Domain::ZeroToInf, h, quad_opts(qtol)).value;
            const Complex rhs = gamma_ratio({rho, al - si - rho + 1.0}, {al - si + 1.0}) *
                                f3f2_unit(al, ga - be, rho, ga, al - si + 1.0);
            return make_report(c, lhs, rhs, tol);
        }
        case IdentityId::GaussValue: {
            const Complex al = P(c, "alpha"), be = P(c, "beta"), ga = P(c, "gamma");
            const Complex lhs = f3f2_unit(al, be, Complex(1.0), ga, Complex(1.0));
            const Complex rhs = gamma_ratio({ga, ga - al - be}, {ga - al, ga - be});
            return make_report(c, lhs, rhs, tol);
        }
        case IdentityId::A7: {
            const Complex mu = P(c, "mu"), nu = P(c, "nu");
            auto f = [&](double th) {
                return powc(std::sin(th), mu - 1.0) * powc(std::cos(th), nu - 1.0);
            };
            std::vector<Singularity> h{{Singularity::At::Lower, mu.real() - 1.0},
                                       {Singularity::At::Upper, nu.real() - 1.0}};
            const Complex lhs = integrate_1d(f, Domain::ZeroToHalfPi, h, quad_opts(qtol)).value;
            const Complex rhs = 0.5 * beta(mu / 2.0, nu / 2.0);
            return make_report(c, lhs, rhs, tol);
        }
    }
    throw DomainError("unknown identity");
}

// ---------------------------------------------------------------------------
// Case drawing
// ---------------------------------------------------------------------------

namespace {

double uni(std::mt19937_64& rng, double a, double b) { return a + (b - a) * mc_uniform(rng); }

Complex draw_complex(std::mt19937_64& rng, double re_lo = 0.1, double re_hi = 3.0) {
    return {uni(rng, re_lo, re_hi), uni(rng, -5.0, 5.0)};
}

bool pole_safe(std::initializer_list<Complex> zs) {
    for (const Complex& z : zs)
        if (gamma_pole_distance(z) < 0.05) return false;
    return true;
}

bool integer_safe(std::initializer_list<Complex> zs) {
    for (const Complex& z : zs)
        if (integer_distance(z) < 0.05) return false;
    return true;
}

}  // namespace

IdentityCase draw_case(IdentityId id, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        IdentityCase c;
        c.id = id;
        switch (id) {
            case IdentityId::A1: {
                const Complex mu = draw_complex(rng), nu = draw_complex(rng);
                const Complex l(uni(rng, 0.1, std::min(3.0, 2.0 * (mu + nu).real() - 0.1)),
                                uni(rng, -5.0, 5.0));
                c.params = {{"alpha", uni(rng, 0.3, 3.0)},
                            {"beta", uni(rng, 0.3, 3.0)},
                            {"lambda", l},
                            {"mu", mu},
                            {"nu", nu}};
                if (!pole_safe({l / 2.0, mu + nu - l / 2.0, mu + nu})) continue;
                if (!integer_safe({mu - l / 2.0, nu - l / 2.0})) continue;
                break;
            }
            case IdentityId::EulerTransf: {
                c.params = {{"alpha", draw_complex(rng)},
                            {"beta", draw_complex(rng)},
                            {"gamma", draw_complex(rng)},
                            {"x", uni(rng, -0.45, 0.45)}};
                if (!pole_safe({P(c, "gamma")})) continue;
                break;
            }
            case IdentityId::EulerIntRep: {
                const Complex be = draw_complex(rng);
                const Complex ga = be + Complex(uni(rng, 0.15, 3.0), uni(rng, -3.0, 3.0));
                const Complex al = draw_complex(rng);
                c.params = {{"alpha", al}, {"beta", be}, {"gamma", ga}, {"x", uni(rng, 0.1, 2.5)}};
                if (!pole_safe({ga, ga - be, be})) continue;
                if (!integer_safe({ga - al - be, al - be})) continue;
                break;
            }
            case IdentityId::A4: {
                const Complex nu(uni(rng, -3.0, -0.3), uni(rng, -5.0, 5.0));
                const double mu_hi = std::min(3.0, -2.0 * nu.real() - 0.1);
                if (mu_hi <= 0.1) continue;
                const Complex mu(uni(rng, 0.1, mu_hi), uni(rng, -5.0, 5.0));
                c.params = {{"mu", mu}, {"nu", nu}, {"beta", uni(rng, 0.0, 0.9)}};
                if (!pole_safe({mu, -mu - 2.0 * nu, -2.0 * nu, 0.5 - nu})) continue;
                break;
            }
            case IdentityId::Pfaff: {
                c.params = {{"alpha", draw_complex(rng)},
                            {"beta", draw_complex(rng)},
                            {"gamma", draw_complex(rng)},
                            {"x", uni(rng, -0.45, -0.05)}};
                if (!pole_safe({P(c, "gamma")})) continue;
                break;
            }
            case IdentityId::GR7512: {
                const Complex rho = draw_complex(rng), si = draw_complex(rng);
                const Complex al = draw_complex(rng), be = draw_complex(rng);
                const Complex ga = al + be - si + Complex(uni(rng, 0.15, 3.0), uni(rng, -3.0, 3.0));
                c.params = {{"rho", rho}, {"sigma", si}, {"alpha", al}, {"beta", be}, {"gamma", ga}};
                if (!pole_safe({rho, si, rho + si, ga})) continue;
                if (!integer_safe({ga - al - be, al - be})) continue;
                break;
            }
            case IdentityId::A5: {
                const Complex rho(uni(rng, 0.1, 1.5), uni(rng, -3.0, 3.0));
                const Complex si(uni(rng, 0.1, 1.5), uni(rng, -3.0, 3.0));
                const Complex al = rho + si - 1.0 + Complex(uni(rng, 0.15, 2.5), uni(rng, -3.0, 3.0));
                const Complex be = rho + si - 1.0 + Complex(uni(rng, 0.15, 2.5), uni(rng, -3.0, 3.0));
                const Complex ga = draw_complex(rng);
                c.params = {{"rho", rho}, {"sigma", si}, {"alpha", al}, {"beta", be}, {"gamma", ga}};
                if (!pole_safe({rho, al - si - rho + 1.0, al - si + 1.0, ga})) continue;
                if (!integer_safe({ga - al - be, al - be, ga - al, be - al})) continue;
                break;
            }
            case IdentityId::GaussValue: {
                const Complex al = draw_complex(rng), be = draw_complex(rng);
                const Complex ga = al + be + Complex(uni(rng, 0.15, 3.0), uni(rng, -3.0, 3.0));
                c.params = {{"alpha", al}, {"beta", be}, {"gamma", ga}};
                if (!pole_safe({ga, ga - al - be, ga - al, ga - be})) continue;
                break;
            }
            case IdentityId::A7: {
                c.params = {{"mu", draw_complex(rng)}, {"nu", draw_complex(rng)}};
                break;
            }
        }
        if (case_valid(c)) return c;
    }
    throw DomainError("draw_case: rejection sampling failed for " + identity_name(id));
}

IdentityCase invalid_case(IdentityId id) {
    IdentityCase c;
    c.id = id;
    switch (id) {
        case IdentityId::A1:
            c.params = {{"alpha", 1.0}, {"beta", 1.0}, {"lambda", Complex(-0.5, 1.0)},
                        {"mu", Complex(1.0, 0.0)}, {"nu", Complex(1.0, 0.0)}};
            break;
        case IdentityId::EulerTransf:
            c.params = {{"alpha", Complex(1.0, 0.5)}, {"beta", Complex(1.0, 0.0)},
                        {"gamma", Complex(2.0, 0.0)}, {"x", 1.2}};
            break;
        case IdentityId::EulerIntRep:
            c.params = {{"alpha", Complex(1.0, 0.0)}, {"beta", Complex(-0.2, 0.3)},
                        {"gamma", Complex(2.0, 0.0)}, {"x", 0.5}};
            break;
        case IdentityId::A4:
            c.params = {{"mu", Complex(1.0, 0.0)}, {"nu", Complex(0.0, 1.0)}, {"beta", 0.3}};
            break;
        case IdentityId::Pfaff:
            c.params = {{"alpha", Complex(1.0, 0.5)}, {"beta", Complex(1.0, 0.0)},
                        {"gamma", Complex(2.0, 0.0)}, {"x", 1.3}};
            break;
        case IdentityId::GR7512:
            c.params = {{"rho", Complex(1.0, 0.0)}, {"sigma", Complex(-0.5, 0.0)},
                        {"alpha", Complex(1.0, 0.0)}, {"beta", Complex(1.0, 0.0)},
                        {"gamma", Complex(3.0, 0.0)}};
            break;
        case IdentityId::A5:
            c.params = {{"rho", Complex(-0.3, 0.0)}, {"sigma", Complex(0.5, 0.0)},
                        {"alpha", Complex(2.0, 0.0)}, {"beta", Complex(2.0, 0.0)},
                        {"gamma", Complex(1.0, 0.0)}};
            break;
        case IdentityId::GaussValue:
            c.params = {{"alpha", Complex(1.0, 0.0)}, {"beta", Complex(1.0, 0.0)},
                        {"gamma", Complex(1.5, 0.0)}};
            break;
        case IdentityId::A7:
            c.params = {{"mu", Complex(1.0, 0.0)}, {"nu", Complex(-1.0, 0.0)}};
            break;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Derivation ladder
// ---------------------------------------------------------------------------

namespace {

struct LadderContext {
    double p, pp, ppp, q;
    Complex lam, nu;
    double pref_pi;  // pi^{(p+q)/2}

    // the 2F1 of stages 1-2 and its Euler-transformed version of stages 3-4
    Complex f1a, f1b, f1c;
    Complex f3a, f3b;
    // the 2F1 of stages 6-7
    Complex f6a, f6b, f6c;

    explicit LadderContext(const SpacePair& sp, const SpectralParams& params) {
        p = sp.p();
        pp = sp.p_prime();
        ppp = sp.p_dprime();
        q = sp.q();
        lam = params.lambda;
        nu = params.nu;
        pref_pi = std::pow(kPi, 0.5 * (p + q));
        f1a = -(2.0 * nu - pp - 2.0 * q) / 4.0;
        f1b = q / 2.0;
        f1c = (2.0 * lam - 2.0 * nu + 2.0 * pp + ppp + 4.0 * q) / 4.0;
        f3a = (2.0 * lam + p + 2.0 * q) / 4.0;
        f3b = (2.0 * lam - 2.0 * nu + 2.0 * pp + ppp + 2.0 * q) / 4.0;
        f6a = (2.0 * lam + 2.0 * nu + ppp) / 8.0;
        f6b = (2.0 * lam + 2.0 * nu + ppp + 4.0) / 8.0;
        f6c = (2.0 * lam + p + 2.0 * q + 2.0) / 4.0;
    }

    // argument 1 - (1+u)^2/u^2 computed without cancellation
    static double arg_w(double u) { return -(2.0 * u + 1.0) / (u * u); }
};

}  // namespace

LadderReport derivation_ladder(const SpacePair& sp, const SpectralParams& params, double tol) {
    if (sp.p_prime() <= 0 || sp.q() <= 0)
        throw InvalidCaseError(
            "derivation_ladder requires p' > 0 and q > 0; degenerate axes are checked "
            "endpoint-to-endpoint via a_value_numeric vs a_value_closed");
    check_convergence(sp, params);

    const LadderContext cx(sp, params);
    const double p = cx.p, pp = cx.pp, ppp = cx.ppp, q = cx.q;
    const Complex lam = cx.lam, nu = cx.nu;
    const double stage_tol = tol * 0.2;

    LadderReport rep;
    rep.transitions = {"A1 (t-integral)",
                       "polar substitution (r,s) = (x cos th, x sin th)",
                       "A7 + Euler transformation",
                       "substitution y = (1+x^2)/x^2",
                       "Euler integral representation",
                       "A4 (inner y-integral)",
                       "substitution x = 1/t",
                       "A5 + Gauss value + duplication"};

    auto push = [&rep](const std::string& label, Complex v, double err) {
        rep.stages.push_back({label, v, err});
    };

    // stage 0: the defining integral (3-axis radial reduction)
    {
        QuadResult r = a_value_numeric(sp, params, stage_tol);
        push("stage0", r.value, r.abs_err);
    }

    const Complex c1n = cx.f3b;  // (2l-2v+2p'+p''+2q)/4
    const Complex c1d = cx.f1c;  // (2l-2v+2p'+p''+4q)/4

    // stage 1: after the t-integral
    {
        const Complex pref = cx.pref_pi / std::pow(2.0, q - 2.0) *
                             gamma_ratio({c1n}, {Complex(pp / 2.0), Complex(ppp / 2.0), c1d});
        auto f = [&](const double* v) -> Complex {
            const double r = v[0], s = v[1];
            const double u = r * r + s * s;
            return std::pow(r, pp - 1.0) * powc(s, lam - nu + ppp / 2.0 - 1.0) *
                   powc(u, nu - pp / 2.0 - q) * powc(1.0 + u, -lam - p / 2.0) *
                   gauss_2f1(cx.f1a, cx.f1b, cx.f1c, LadderContext::arg_w(u));
        };
        const double wsum = (nu.real() - pp / 2.0 - q) + (-lam.real() - p / 2.0);
        std::vector<Axis> axes(2);
        axes[0].domain = Domain::ZeroToInf;
        axes[0].hints = {{Singularity::At::Lower, pp - 1.0},
                         {Singularity::At::Upper, 2.0 * wsum + pp - 1.0}};
        axes[1].domain = Domain::ZeroToInf;
        axes[1].hints = {{Singularity::At::Lower, (lam - nu).real() + ppp / 2.0 - 1.0},
                         {Singularity::At::Upper, 2.0 * wsum + (lam - nu).real() + ppp / 2.0 - 1.0}};
        QuadResult r = integrate_axes(f, axes, stage_tol);
        push("stage1", pref * r.value, std::abs(pref) * r.abs_err);
    }

    // stage 2: polar substitution; product of a theta-integral and an x-integral
    {
        const Complex pref = cx.pref_pi / std::pow(2.0, q - 2.0) *
                             gamma_ratio({c1n}, {Complex(pp / 2.0), Complex(ppp / 2.0), c1d});
        auto fth = [&](double th) {
            return powc(std::cos(th), pp - 1.0) * powc(std::sin(th), lam - nu + ppp / 2.0 - 1.0);
        };
        std::vector<Singularity> hth{{Singularity::At::Lower, (lam - nu).real() + ppp / 2.0 - 1.0},
                                     {Singularity::At::Upper, pp - 1.0}};
        QuadResult rth = integrate_1d(fth, Domain::ZeroToHalfPi, hth, quad_opts(stage_tol));

        auto fx = [&](double x) {
            const double u = x * x;
            return powc(x, lam + nu + ppp / 2.0 - 2.0 * q - 1.0) * powc(1.0 + u, -lam - p / 2.0) *
                   gauss_2f1(cx.f1a, cx.f1b, cx.f1c, LadderContext::arg_w(u));
        };
        const double flo = (lam + nu).real() + ppp / 2.0 - 2.0 * q - 1.0 +
                           4.0 * std::min(cx.f1a.real(), cx.f1b.real());
        const double fup = (nu - lam).real() + ppp / 2.0 - 2.0 * q - p - 1.0;
        std::vector<Singularity> hx{{Singularity::At::Lower, flo}, {Singularity::At::Upper, fup}};
        QuadResult rx = integrate_1d(fx, Domain::ZeroToInf, hx, quad_opts(stage_tol));

        const Complex v = pref * rth.value * rx.value;
        push("stage2", v, std::abs(v) * 2.0 * stage_tol);
    }

    // stage 3: theta-integral evaluated by A7, Euler transformation applied
    {
        const Complex pref =
            cx.pref_pi / std::pow(2.0, q - 1.0) *
            gamma_ratio({c1n, (2.0 * lam - 2.0 * nu + ppp) / 4.0},
                        {Complex(ppp / 2.0), c1d, (2.0 * lam - 2.0 * nu + 2.0 * pp + ppp) / 4.0});
        auto f = [&](double x) {
            const double u = x * x;
            return powc(x, -lam + nu - pp - ppp / 2.0 - 2.0 * q - 1.0) *
                   gauss_2f1(cx.f3a, cx.f3b, cx.f1c, LadderContext::arg_w(u));
        };
        const double flo = (-lam + nu).real() - pp - ppp / 2.0 - 2.0 * q - 1.0 +
                           4.0 * std::min(cx.f3a.real(), cx.f3b.real());
        const double fup = (nu - lam).real() - pp - ppp / 2.0 - 2.0 * q - 1.0;
        std::vector<Singularity> h{{Singularity::At::Lower, flo}, {Singularity::At::Upper, fup}};
        QuadResult r = integrate_1d(f, Domain::ZeroToInf, h, quad_opts(stage_tol));
        push("stage3", pref * r.value, std::abs(pref) * r.abs_err);
    }

    // stage 4: substitution y = (1+x^2)/x^2
    const Complex yexp = (2.0 * lam - 2.0 * nu + 2.0 * pp + ppp + 4.0 * q - 4.0) / 4.0;
    {
        const Complex pref =
            cx.pref_pi / std::pow(2.0, q) *
            gamma_ratio({c1n, (2.0 * lam - 2.0 * nu + ppp) / 4.0},
                        {Complex(ppp / 2.0), c1d, (2.0 * lam - 2.0 * nu + 2.0 * pp + ppp) / 4.0});
        auto f = [&](double y) {
            return powc(y - 1.0, yexp) * gauss_2f1(cx.f3a, cx.f3b, cx.f1c, -(y - 1.0) * (y + 1.0));
        };
        const double fup = yexp.real() - 2.0 * std::min(cx.f3a.real(), cx.f3b.real());
        std::vector<Singularity> h{{Singularity::At::Lower, yexp.real()},
                                   {Singularity::At::Upper, fup}};
        QuadResult r = integrate_1d(f, Domain::OneToInf, h, quad_opts(stage_tol));
        push("stage4", pref * r.value, std::abs(pref) * r.abs_err);
    }

    // stage 5: Euler integral representation; double integral over (t, y)
    {
        const Complex pref =
            cx.pref_pi / std::pow(2.0, q) *
            gamma_ratio({(2.0 * lam - 2.0 * nu + ppp) / 4.0},
                        {Complex(ppp / 2.0), Complex(q / 2.0),
                         (2.0 * lam - 2.0 * nu + 2.0 * pp + ppp) / 4.0});
        const Complex texp = (2.0 * lam - 2.0 * nu + 2.0 * pp + ppp + 2.0 * q - 4.0) / 4.0;
        const Complex uexp = (2.0 * nu - pp - 2.0 * q) / 4.0;
        auto f = [&](const double* v) -> Complex {
            const double t = v[0], y = v[1];
            return powc(t, texp) * powc(1.0 + t, uexp) * powc(y - 1.0, yexp) *
                   powc(1.0 + t * y * y, -cx.f3a);
        };
        std::vector<Axis> axes(2);
        axes[0].domain = Domain::ZeroToInf;
        axes[0].hints = {{Singularity::At::Lower,
                          (2.0 * (lam - nu).real() + 2.0 * pp + ppp - 8.0) / 8.0},
                         {Singularity::At::Upper, texp.real() + uexp.real() - cx.f3a.real()}};
        axes[1].domain = Domain::OneToInf;
        axes[1].hints = {{Singularity::At::Lower, yexp.real()},
                         {Singularity::At::Upper, yexp.real() - 2.0 * cx.f3a.real()}};
        QuadResult r = integrate_axes(f, axes, stage_tol);
        push("stage5", pref * r.value, std::abs(pref) * r.abs_err);
    }

    // stage 6: inner y-integral by A4
    const Complex pref56 =
        cx.pref_pi / std::pow(2.0, q) *
        gamma_ratio({(2.0 * lam - 2.0 * nu + ppp) / 4.0, c1d, (2.0 * lam + 2.0 * nu + ppp) / 4.0},
                    {Complex(ppp / 2.0), Complex(q / 2.0),
                     (2.0 * lam - 2.0 * nu + 2.0 * pp + ppp) / 4.0,
                     (2.0 * lam + p + 2.0 * q) / 2.0});
    {
        const Complex texp = -(2.0 * nu - pp + 4.0) / 4.0;
        const Complex uexp = (2.0 * nu - pp - 2.0 * q) / 4.0;
        auto f = [&](double t) {
            return powc(t, texp) * powc(1.0 + t, uexp) *
                   gauss_2f1(cx.f6a, cx.f6b, cx.f6c, -1.0 / t);
        };
        const double flo = texp.real() + cx.f6a.real();
        const double fup = texp.real() + uexp.real();
        std::vector<Singularity> h{{Singularity::At::Lower, flo}, {Singularity::At::Upper, fup}};
        QuadResult r = integrate_1d(f, Domain::ZeroToInf, h, quad_opts(stage_tol));
        push("stage6", pref56 * r.value, std::abs(pref56) * r.abs_err);
    }

    // stage 7: substitution x = 1/t
    {
        const Complex uexp = (2.0 * nu - pp - 2.0 * q) / 4.0;
        auto f = [&](double x) {
            return std::pow(x, 0.5 * (q - 2.0)) * powc(1.0 + x, uexp) *
                   gauss_2f1(cx.f6a, cx.f6b, cx.f6c, -x);
        };
        const double fup = 0.5 * (q - 2.0) + uexp.real() - cx.f6a.real();
        std::vector<Singularity> h{{Singularity::At::Lower, 0.5 * (q - 2.0)},
                                   {Singularity::At::Upper, fup}};
        QuadResult r = integrate_1d(f, Domain::ZeroToInf, h, quad_opts(stage_tol));
        push("stage7", pref56 * r.value, std::abs(pref56) * r.abs_err);
    }

    // stage 8: the closed form
    push("stage8", a_value_closed(sp, params), 0.0);

    rep.pair_relerr.resize(rep.stages.size() - 1);
    for (std::size_t k = 0; k + 1 < rep.stages.size(); ++k) {
        rep.pair_relerr[k] = relative_difference(rep.stages[k].value, rep.stages[k + 1].value);
        rep.max_pairwise_relerr = std::max(rep.max_pairwise_relerr, rep.pair_relerr[k]);
    }
    return rep;
}

}  // namespace rankone
