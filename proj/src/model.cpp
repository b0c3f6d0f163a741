#include "rankone/model.hpp"

#include <algorithm>
#include <cmath>

#include "rankone/specfun.hpp"

namespace rankone {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SpacePair::SpacePair(Field field_, int n_, int m_) : field(field_), n(n_), m(m_) {
    if (n < 2) throw DomainError("SpacePair: n must be >= 2");
    if (m < 1 || m >= n) throw DomainError("SpacePair: m must satisfy 1 <= m < n");
    if (field == Field::Octonion && n != 2)
        throw DomainError("SpacePair: the octonionic space exists only for n = 2");
}

double SpacePair::unitarity_radius() const {
    if (field == Field::Real || field == Field::Complex) return rho();
    return 0.5 * ((n - 1) * d() + 2);
}

double SpacePair::unitarity_radius_h() const {
    if (field == Field::Real || field == Field::Complex) return rho_h();
    return 0.5 * ((m - 1) * d() + 2);
}

SpectralMode SpectralParams::mode(const SpacePair& sp) const {
    if (is_tempered()) return SpectralMode::Tempered;
    const bool real_pair = std::abs(lambda.imag()) < 1e-12 && std::abs(nu.imag()) < 1e-12;
    if (real_pair && std::abs(lambda.real()) < sp.unitarity_radius() &&
        std::abs(nu.real()) < sp.unitarity_radius_h())
        return SpectralMode::Complementary;
    return SpectralMode::General;
}

Complex phi_spherical(const SpacePair& sp, Complex lambda, const NilpotentPoint& p) {
    if (p.x.length() != sp.n - 1 || p.field() != sp.field)
        throw DimensionError("phi_spherical: point does not live on the G-side group");
    const double xs = p.x.norm_sq();
    const double base = (1.0 + xs) * (1.0 + xs) + 4.0 * p.z.norm_sq();
    return powc(base, -(lambda + sp.rho()) / 2.0);
}

Complex psi_spherical(const SpacePair& sp, Complex nu, const NilpotentPoint& p) {
    if (p.x.length() != sp.m - 1 || p.field() != sp.field)
        throw DimensionError("psi_spherical: point does not live on the H-side group");
    const double ys = p.x.norm_sq();
    const double base = (1.0 + ys) * (1.0 + ys) + 4.0 * p.z.norm_sq();
    return powc(base, -(nu + sp.rho_h()) / 2.0);
}

namespace {

NilpotentPoint embed_h_point(const SpacePair& sp, const NilpotentPoint& h) {
    if (h.x.length() != sp.m - 1) throw DimensionError("kernel: H-side point must have m-1 entries");
    DivisionVector x = DivisionVector::zero(sp.field, sp.n - 1);
    for (int i = 0; i < h.x.length(); ++i) x.entries[static_cast<std::size_t>(i)] = h.x.entries[static_cast<std::size_t>(i)];
    return NilpotentPoint(std::move(x), h.z);
}

Complex checked_pow(double base, Complex expo, const char* what) {
    if (base == 0.0 && expo.real() <= 0.0) throw DomainError(std::string("kernel singular locus: ") + what);
    return powc(base, expo);
}

}  // namespace

Complex kernel(const SpacePair& sp, Complex lambda, Complex nu, const NilpotentPoint& p,
               const NilpotentPoint& h) {
    if (p.x.length() != sp.n - 1) throw DimensionError("kernel: G-side point must have n-1 entries");
    const NilpotentPoint diff = group_mul(group_inverse(p), embed_h_point(sp, h));
    const double nn = nnorm(diff);

    double x2_sq = 0.0;
    for (int i = sp.m - 1; i < sp.n - 1; ++i) x2_sq += p.x.entries[static_cast<std::size_t>(i)].norm_sq();
    const double x2 = std::sqrt(x2_sq);

    const Complex e1 = -2.0 * (nu + sp.rho_h());
    const Complex e2 = (lambda - sp.rho()) + (nu + sp.rho_h());
    return checked_pow(nn, e1, "coincidence point") * checked_pow(x2, e2, "x2 = 0");
}

void check_convergence(const SpacePair& sp, const SpectralParams& params) {
    const double pp = sp.p_prime();
    const double ppp = sp.p_dprime();
    const double p = sp.p();
    const double q = sp.q();
    const double dlmn = (params.lambda - params.nu).real();
    const double slmn = (params.lambda + params.nu).real();

    if (!(dlmn + ppp / 2.0 > 0.0))
        throw DivergenceError("model integral diverges on the x2 = 0 axis");
    if (!(slmn + ppp / 2.0 > 0.0))
        throw DivergenceError("model integral diverges at the origin");

    double bound = ppp / 2.0 - p - 2.0 * q;                      // anisotropic ray
    bound = std::max(bound, -(p + pp) / 2.0 - q);                // t ray
    bound = std::max(bound, ppp / 2.0 - pp - p - 4.0 * q);       // s ray
    bound = std::max(bound, -(p + 4.0 * q) / 2.0);               // r ray
    if (!(dlmn > bound))
        throw DivergenceError("model integral diverges at infinity");
}

namespace {

double sphere_prefactor(int k) {
    // vol(S^{k-1}) = 2 pi^{k/2} / Gamma(k/2)
    return 2.0 * std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k);
}

struct RadialForm {
    std::vector<Axis> axes;
    double prefactor;
    std::function<Complex(const double*)> integrand;
    bool has_r, has_t;
};

RadialForm build_radial_form(const SpacePair& sp, const SpectralParams& params) {
    const double pp = sp.p_prime();
    const double ppp = sp.p_dprime();
    const double p = sp.p();
    const double q = sp.q();
    const Complex lam = params.lambda;
    const Complex nu = params.nu;

    RadialForm form;
    form.has_r = sp.p_prime() > 0;
    form.has_t = sp.q() > 0;

    const Complex w1 = (2.0 * nu - pp - 2.0 * q) / 4.0;
    const Complex w2 = -(2.0 * lam + p + 2.0 * q) / 4.0;
    const Complex s_exp = lam - nu + ppp / 2.0 - 1.0;

    double pref = sphere_prefactor(static_cast<int>(ppp));
    if (form.has_r) pref *= sphere_prefactor(static_cast<int>(pp));
    if (form.has_t) pref *= sphere_prefactor(static_cast<int>(q)) * std::pow(2.0, -q);
    form.prefactor = pref;

    const bool has_r = form.has_r;
    const bool has_t = form.has_t;
    form.integrand = [=](const double* v) -> Complex {
        int i = 0;
        const double r = has_r ? v[i++] : 0.0;
        const double s = v[i++];
        const double t = has_t ? v[i] : 0.0;
        const double u = r * r + s * s;
        const double A = u * u + t * t;
        const double B = (1.0 + u) * (1.0 + u) + t * t;
        Complex val = powc(A, w1) * powc(B, w2) * powc(s, s_exp);
        if (has_r) val *= std::pow(r, pp - 1.0);
        if (has_t) val *= std::pow(t, q - 1.0);
        return val;
    };

    const double wsum = w1.real() + w2.real();
    if (form.has_r) {
        Axis ar;
        ar.domain = Domain::ZeroToInf;
        ar.hints.push_back({Singularity::At::Lower, pp - 1.0});
        ar.hints.push_back({Singularity::At::Upper, 4.0 * wsum + pp - 1.0});
        form.axes.push_back(ar);
    }
    {
        Axis as;
        as.domain = Domain::ZeroToInf;
        const double lo = form.has_r ? s_exp.real()
                                     : (lam + nu).real() + ppp / 2.0 - 1.0;
        as.hints.push_back({Singularity::At::Lower, lo});
        as.hints.push_back({Singularity::At::Upper, 4.0 * wsum + s_exp.real()});
        form.axes.push_back(as);
    }
    if (form.has_t) {
        Axis at;
        at.domain = Domain::ZeroToInf;
        at.hints.push_back({Singularity::At::Lower, q - 1.0});
        at.hints.push_back({Singularity::At::Upper, 2.0 * wsum + q - 1.0});
        form.axes.push_back(at);
    }
    return form;
}

}  // namespace

QuadResult a_value_numeric(const SpacePair& sp, const SpectralParams& params, double tol) {
    check_convergence(sp, params);
    const RadialForm form = build_radial_form(sp, params);
    QuadOptions opt;
    opt.rel_tol = tol;
    QuadResult r = integrate_axes(form.integrand, form.axes, opt);
    r.value *= form.prefactor;
    r.abs_err *= form.prefactor;
    return r;
}

Complex a_value_closed(const SpacePair& sp, const SpectralParams& params) {
    const double pp2 = sp.p_dprime();
    const double p = sp.p();
    const double q = sp.q();
    const Complex l2 = 2.0 * params.lambda;
    const Complex v2 = 2.0 * params.nu;
    try {
        return std::pow(kPi, 0.5 * (p + q)) *
               gamma_ratio({(l2 - v2 + pp2) / 4.0, (l2 + v2 + pp2) / 4.0, (l2 + p + 2.0 * q + 2.0) / 4.0},
                           {Complex(pp2 / 2.0), (l2 + p + 2.0 * q) / 2.0, (l2 + p + 2.0) / 4.0});
    } catch (const PoleError& e) {
        throw PoleError(std::string("a_value_closed: ") + e.what());
    }
}

QuadResult normalization_constant(const SpacePair& sp, double tol) {
    const double pp = sp.p_prime();
    const double q = sp.q();
    const double rho_h = sp.rho_h();

    const bool has_u = pp > 0;
    const bool has_t = q > 0;
    if (!has_u && !has_t) return {Complex(1.0, 0.0), 0.0, 0};  // zero-dimensional H-side

    double pref = 1.0;
    if (has_u) pref *= sphere_prefactor(static_cast<int>(pp));
    if (has_t) pref *= sphere_prefactor(static_cast<int>(q)) * std::pow(2.0, -q);

    std::vector<Axis> axes;
    if (has_u) {
        Axis a;
        a.domain = Domain::ZeroToInf;
        a.hints.push_back({Singularity::At::Lower, pp - 1.0});
        a.hints.push_back({Singularity::At::Upper, -4.0 * rho_h + pp - 1.0});
        axes.push_back(a);
    }
    if (has_t) {
        Axis a;
        a.domain = Domain::ZeroToInf;
        a.hints.push_back({Singularity::At::Lower, q - 1.0});
        a.hints.push_back({Singularity::At::Upper, -2.0 * rho_h + q - 1.0});
        axes.push_back(a);
    }

    auto f = [&](const double* v) -> Complex {
        int i = 0;
        const double u = has_u ? v[i++] : 0.0;
        const double t = has_t ? v[i] : 0.0;
        const double base = (1.0 + u * u) * (1.0 + u * u) + t * t;
        Complex val = powc(base, Complex(-rho_h));
        if (has_u) val *= std::pow(u, pp - 1.0);
        if (has_t) val *= std::pow(t, q - 1.0);
        return val;
    };

    QuadOptions opt;
    opt.rel_tol = tol;
    QuadResult r = integrate_axes(f, axes, opt);
    r.value *= pref;
    r.abs_err *= pref;
    return r;
}

Complex ell_mod_special_value(const SpacePair& sp, const SpectralParams& params) {
    const QuadResult norm = normalization_constant(sp, 1e-10);
    return norm.value * a_value_closed(sp, params);
}

Complex special_value_structure(const SpacePair& sp, const SpectralParams& params) {
    const Complex l = params.lambda;
    const Complex v = params.nu;
    const double rho = sp.rho();
    const double rho_h = sp.rho_h();
    const double d = sp.d();
    return gamma_ratio({(l + rho + 1.0) / 2.0, (l + rho - v - rho_h) / 2.0, (l + rho + v - rho_h) / 2.0},
                       {(l + rho - d + 2.0) / 2.0, l + rho});
}

double ell_mod_envelope(const SpacePair& sp, const SpectralParams& params) {
    if (!params.is_tempered()) throw DomainError("ell_mod_envelope requires tempered parameters");
    const double t = std::abs(params.lambda.imag());
    const double u = std::abs(params.nu.imag());
    const double nd = sp.dim_g();
    const double nm_d = sp.p_dprime();
    const double log_env = (1.0 - 0.5 * nd) * std::log1p(t) +
                           (0.25 * nm_d - 0.5) * std::log1p(std::abs(t * t - u * u)) +
                           0.5 * kPi * t - 0.25 * kPi * (std::abs(t + u) + std::abs(t - u));
    return std::exp(log_env);
}

// ---------------------------------------------------------------------------
// Monte Carlo cross-check (m = 1 spaces: the x1 block is absent)
// ---------------------------------------------------------------------------

namespace {

// Gamma variate, shape alpha > 0, scale 1 (Marsaglia-Tsang; own uniforms).
double mc_gamma(std::mt19937_64& rng, double alpha) {
    if (alpha < 1.0) {
        const double u = mc_uniform(rng);
        return mc_gamma(rng, alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = mc_normal(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = mc_uniform(rng);
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

double mc_beta(std::mt19937_64& rng, double a, double b) {
    const double x = mc_gamma(rng, a);
    const double y = mc_gamma(rng, b);
    return x / (x + y);
}

double log_beta_pdf(double x, double a, double b) {
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) + std::lgamma(a + b) -
           std::lgamma(a) - std::lgamma(b);
}

void unit_sphere(std::mt19937_64& rng, int k, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(k));
    if (k == 1) {
        out[0] = mc_uniform(rng) < 0.5 ? -1.0 : 1.0;
        return;
    }
    double nrm = 0.0;
    for (auto& c : out) {
        c = mc_normal(rng);
        nrm += c * c;
    }
    nrm = std::sqrt(nrm);
    for (auto& c : out) c /= nrm;
}

}  // namespace

QuadResult a_value_mc(const SpacePair& sp, const SpectralParams& params, long long samples,
                      std::uint64_t seed) {
    if (sp.m != 1)
        throw DomainError("a_value_mc: the adapted importance sampler covers m = 1 spaces");
    check_convergence(sp, params);

    const int pdim = sp.p();      // = p'' here
    const int qdim = sp.q();
    const double rho = sp.rho();
    const double rho_h = sp.rho_h();
    const Complex lam = params.lambda;
    const Complex nu = params.nu;
    const Complex w_gauge = (nu - rho_h) / 2.0;              // exponent of |x|^4+4|z|^2
    const Complex w_x2 = (lam - rho) - (nu - rho_h);         // exponent of |x_2| = |x|
    const Complex w_phi = -(lam + rho) / 2.0;

    // anisotropic homogeneity of the integrand at the origin and at infinity
    const double alpha = w_x2.real();
    const double h0 = 4.0 * w_gauge.real() + alpha;
    const double hinf = h0 + 4.0 * w_phi.real();
    const double Q = pdim + 2.0 * qdim;  // homogeneous dimension

    const double gamma0 = h0 + Q;        // R ~ U^{1/gamma0} near the origin
    const double tail = -(hinf + Q);     // R ~ Pareto(tail) at infinity
    if (gamma0 <= 0.0 || tail <= 0.0)
        throw DivergenceError("a_value_mc: importance exponents out of range");

    const int dim = pdim + qdim;

    const double kSphereP = sphere_prefactor(pdim);
    const double kSphereQ = qdim > 0 ? sphere_prefactor(qdim) : 1.0;

    // angular Beta parameters on mu = sin(phi)^2 along the gauge sphere
    const double beta_a = 0.5 * qdim;
    const double beta_b_main = 0.25 * (pdim + alpha);
    const double beta_b_flat = 0.25 * pdim;

    McSampler sampler;
    sampler.dim = dim;
    sampler.draw = [=](std::mt19937_64& rng, std::vector<double>& v, double& dens) {
        v.resize(static_cast<std::size_t>(dim));

        // gauge radius R from a half/half power + Pareto mixture
        const bool near = mc_uniform(rng) < 0.5;
        double R;
        if (near) {
            R = std::pow(mc_uniform(rng), 1.0 / gamma0);
        } else {
            R = std::pow(mc_uniform(rng), -1.0 / tail);
        }
        const double gR = 0.5 * (R <= 1.0 ? gamma0 * std::pow(R, gamma0 - 1.0) : 0.0) +
                          0.5 * (R >= 1.0 ? tail * std::pow(R, -tail - 1.0) : 0.0);

        double s, tz, gphi = 1.0, jac;
        double cphi = 1.0, sphi = 0.0;
        if (qdim > 0) {
            // position on the gauge sphere: |x| = R cos^{1/2}(phi), 2|z| = R^2 sin(phi)
            const bool main = mc_uniform(rng) < 0.8;
            const double mu = main ? mc_beta(rng, beta_a, beta_b_main) : mc_beta(rng, beta_a, beta_b_flat);
            sphi = std::sqrt(mu);
            cphi = std::sqrt(1.0 - mu);
            // density of phi from the Beta density of mu = sin^2(phi)
            const double pdf_mu = 0.8 * std::exp(log_beta_pdf(mu, beta_a, beta_b_main)) +
                                  0.2 * std::exp(log_beta_pdf(mu, beta_a, beta_b_flat));
            gphi = pdf_mu * 2.0 * sphi * cphi;  // d mu = 2 sin cos d phi
            s = R * std::sqrt(cphi);
            tz = 0.5 * R * R * sphi;  // |z|
            // |d(s,|z|)/d(R,phi)| = R^2 cos^{-1/2}(phi) / 2
            jac = 0.5 * R * R / std::sqrt(cphi);
        } else {
            s = R;
            tz = 0.0;
            jac = 1.0;
        }

        std::vector<double> dir;
        unit_sphere(rng, pdim, dir);
        for (int i = 0; i < pdim; ++i) v[static_cast<std::size_t>(i)] = s * dir[static_cast<std::size_t>(i)];
        if (qdim > 0) {
            unit_sphere(rng, qdim, dir);
            for (int i = 0; i < qdim; ++i) v[static_cast<std::size_t>(pdim + i)] = tz * dir[static_cast<std::size_t>(i)];
        }

        // density w.r.t. Lebesgue measure on R^dim
        double surf = kSphereP * std::pow(s, pdim - 1.0);
        if (qdim > 0) surf *= kSphereQ * std::pow(tz, qdim - 1.0);
        dens = gR * gphi / (jac * surf);
        if (qdim == 0) dens = gR / surf;
    };

    auto f = [=](const double* v) -> Complex {
        double xs = 0.0;
        for (int i = 0; i < pdim; ++i) xs += v[i] * v[i];
        double zs = 0.0;
        for (int i = 0; i < qdim; ++i) zs += v[pdim + i] * v[pdim + i];
        const double gauge4 = xs * xs + 4.0 * zs;
        const double phib = (1.0 + xs) * (1.0 + xs) + 4.0 * zs;
        return powc(gauge4, w_gauge) * powc(std::sqrt(xs), w_x2) * powc(phib, w_phi);
    };

    McConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    return integrate_mc(f, sampler, cfg);
}

}  // namespace rankone
