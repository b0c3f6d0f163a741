#include "rankone/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace rankone {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct IntervalResult {
    Complex value;
    double err;
};

// Evaluate GK15 on [a,b]; throws on non-finite integrand values.
IntervalResult gk15(const Integrand1D& f, double a, double b, long long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    Complex fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * kXgk[j]);
        fv[14 - j] = f(c + h * kXgk[j]);
    }
    fv[7] = f(c);
    evals += 15;
    for (int j = 0; j < 15; ++j) {
        if (!std::isfinite(fv[j].real()) || !std::isfinite(fv[j].imag()))
            throw QuadratureError("integrand returned a non-finite value");
    }

    Complex resk{};
    Complex resg{};
    double resabs = 0.0;
    for (int j = 0; j < 8; ++j) {
        const Complex sum = (j == 7) ? fv[7] : fv[j] + fv[14 - j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * ((j == 7) ? std::abs(fv[7]) : std::abs(fv[j]) + std::abs(fv[14 - j]));
    }
    // Gauss points are the odd-index Kronrod points
    for (int j = 0; j < 4; ++j) {
        const int k = 2 * j + 1;
        resg += kWg[j] * ((k == 7) ? fv[7] : fv[k] + fv[14 - k]);
    }

    const Complex mean = resk * 0.5;
    double resasc = 0.0;
    for (int j = 0; j < 8; ++j) {
        if (j == 7)
            resasc += kWgk[j] * std::abs(fv[7] - mean);
        else
            resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    }
    resasc *= h;

    double err = std::abs(resk - resg) * h;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * h;
    err = std::max(err, round_floor);

    return {resk * h, err};
}

struct Piece {
    Integrand1D g;  // transformed integrand on [0,1]
};

int substitution_order(double exponent) {
    // u = v^k so that the transformed endpoint behaviour v^{k(e+1)-1} is C^1.
    if (exponent >= 0.9) return 1;
    const double k = 2.0 / (exponent + 1.0);
    return static_cast<int>(std::min(40.0, std::max(1.0, std::ceil(k))));
}

// Builds the list of transformed pieces over [0,1] for a domain + hints.
std::vector<Piece> build_pieces(const Integrand1D& f, Domain domain,
                                const std::vector<Singularity>& hints) {
    // domain map u in (0,1) -> x, with weight dx/du
    std::function<double(double)> map_x;
    std::function<double(double)> map_w;
    bool infinite_upper = false;
    switch (domain) {
        case Domain::ZeroToOne:
            map_x = [](double u) { return u; };
            map_w = [](double) { return 1.0; };
            break;
        case Domain::ZeroToHalfPi:
            map_x = [](double u) { return 1.5707963267948966 * u; };
            map_w = [](double) { return 1.5707963267948966; };
            break;
        case Domain::ZeroToInf:
            map_x = [](double u) { return u / (1.0 - u); };
            map_w = [](double u) { const double d = 1.0 - u; return 1.0 / (d * d); };
            infinite_upper = true;
            break;
        case Domain::OneToInf:
            map_x = [](double u) { return 1.0 + u / (1.0 - u); };
            map_w = [](double u) { const double d = 1.0 - u; return 1.0 / (d * d); };
            infinite_upper = true;
            break;
    }

    auto g = [f, map_x, map_w](double u) -> Complex { return f(map_x(u)) * map_w(u); };

    // endpoint exponents of g on [0,1]
    double e_lo = 0.0;
    double e_up = infinite_upper ? 0.0 : 0.0;
    bool lo_sing = false;
    bool up_sing = false;
    for (const auto& h : hints) {
        if (h.at == Singularity::At::Lower) {
            e_lo = h.exponent;
            lo_sing = e_lo < 0.9;
        } else {
            if (infinite_upper) {
                // f ~ x^e: g ~ (1-u)^{-e-2}
                e_up = -h.exponent - 2.0;
            } else {
                e_up = h.exponent;
            }
            up_sing = e_up < 0.9;
        }
    }
    if (infinite_upper && !up_sing) {
        // Without a decay hint, still regularize the u->1 end mildly: the
        // default map already compresses tails; no substitution.
    }

    std::vector<Piece> pieces;
    if (!lo_sing && !up_sing) {
        pieces.push_back({g});
        return pieces;
    }
    if (lo_sing && !up_sing) {
        const int k = substitution_order(e_lo);
        if (k == 1) {
            pieces.push_back({g});
        } else {
            const double kd = k;
            pieces.push_back({[g, kd](double v) -> Complex {
                const double u = std::pow(v, kd);
                return g(u) * kd * std::pow(v, kd - 1.0);
            }});
        }
        return pieces;
    }
    if (!lo_sing && up_sing) {
        const int k = substitution_order(e_up);
        if (k == 1) {
            pieces.push_back({g});
        } else {
            const double kd = k;
            pieces.push_back({[g, kd](double v) -> Complex {
                const double u = 1.0 - std::pow(v, kd);
                return g(u) * kd * std::pow(v, kd - 1.0);
            }});
        }
        return pieces;
    }
    // both endpoints singular: split at 1/2 and substitute on each half
    {
        const double klo = substitution_order(e_lo);
        pieces.push_back({[g, klo](double v) -> Complex {
            const double u = 0.5 * std::pow(v, klo);
            return g(u) * 0.5 * klo * std::pow(v, klo - 1.0);
        }});
        const double kup = substitution_order(e_up);
        pieces.push_back({[g, kup](double v) -> Complex {
            const double u = 1.0 - 0.5 * std::pow(v, kup);
            return g(u) * 0.5 * kup * std::pow(v, kup - 1.0);
        }});
    }
    return pieces;
}

struct Node {
    double err;
    long long id;
    bool operator<(const Node& o) const {
        if (err != o.err) return err < o.err;
        return id > o.id;  // older interval wins ties
    }
};

struct Stored {
    int piece;
    double a, b;
    Complex value;
    double err;
};

}  // namespace

QuadResult integrate_1d(const Integrand1D& f, Domain domain,
                        const std::vector<Singularity>& hints, const QuadOptions& opt) {
    const std::vector<Piece> pieces = build_pieces(f, domain, hints);

    long long evals = 0;
    std::vector<Stored> store;
    std::priority_queue<Node> heap;

    Complex total{};
    double total_err = 0.0;

    const int kSeedSplit = 8;
    for (int p = 0; p < static_cast<int>(pieces.size()); ++p) {
        for (int s = 0; s < kSeedSplit; ++s) {
            const double a = static_cast<double>(s) / kSeedSplit;
            const double b = static_cast<double>(s + 1) / kSeedSplit;
            IntervalResult r = gk15(pieces[static_cast<std::size_t>(p)].g, a, b, evals);
            const long long id = static_cast<long long>(store.size());
            store.push_back({p, a, b, r.value, r.err});
            heap.push({r.err, id});
            total += r.value;
            total_err += r.err;
        }
    }

    auto target = [&]() { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };

    while (total_err > target()) {
        if (evals >= opt.max_evals)
            throw QuadratureError("quadrature did not converge within the evaluation budget");
        if (heap.empty()) break;
        const Node top = heap.top();
        heap.pop();
        Stored& iv = store[static_cast<std::size_t>(top.id)];
        if (iv.err != top.err) continue;  // stale heap entry
        if (iv.b - iv.a < 1e-15) {
            // cannot subdivide further; accept this interval's estimate
            iv.err = 0.0;  // drop from the refinement set
            total_err = 0.0;
            for (const auto& s : store) total_err += s.err;
            continue;
        }
        const double mid = 0.5 * (iv.a + iv.b);
        const Piece& pc = pieces[static_cast<std::size_t>(iv.piece)];
        IntervalResult left = gk15(pc.g, iv.a, mid, evals);
        IntervalResult right = gk15(pc.g, mid, iv.b, evals);

        total += left.value + right.value - iv.value;
        total_err += left.err + right.err - iv.err;

        const long long rid = static_cast<long long>(store.size());
        const int piece = iv.piece;
        const double b = iv.b;
        iv.b = mid;
        iv.value = left.value;
        iv.err = left.err;
        heap.push({left.err, top.id});
        store.push_back({piece, mid, b, right.value, right.err});
        heap.push({right.err, rid});
    }

    // deterministic final reduction: sort by (piece, a) and Kahan-sum
    std::sort(store.begin(), store.end(), [](const Stored& x, const Stored& y) {
        if (x.piece != y.piece) return x.piece < y.piece;
        return x.a < y.a;
    });
    Complex sum{};
    Complex comp{};
    double err_sum = 0.0;
    for (const auto& s : store) {
        const Complex y = s.value - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err_sum += s.err;
    }
    return {sum, err_sum, evals};
}

QuadResult integrate_axes(const std::function<Complex(const double*)>& f,
                          const std::vector<Axis>& axes, const QuadOptions& opt) {
    if (axes.empty() || axes.size() > 3) throw DomainError("integrate_axes supports 1 to 3 axes");

    long long evals_total = 0;
    std::vector<double> point(axes.size(), 0.0);

    // Per-depth scale tracking: once an inner integral's magnitude is known,
    // later inner solves at the same depth get an absolute floor so that
    // near-zero inner values cannot stall a pure relative target.
    std::vector<double> scale(axes.size(), 0.0);

    // inner tolerances tighten with depth
    std::vector<double> rel(axes.size());
    rel[0] = opt.rel_tol;
    for (std::size_t k = 1; k < axes.size(); ++k) rel[k] = rel[k - 1] * 0.25;

    QuadResult outer_result;

    std::function<Complex(std::size_t)> level = [&](std::size_t depth) -> Complex {
        const std::size_t last = axes.size() - 1;
        Integrand1D fd;
        if (depth == last) {
            fd = [&, depth](double x) -> Complex {
                point[depth] = x;
                return f(point.data());
            };
        } else {
            fd = [&, depth](double x) -> Complex {
                point[depth] = x;
                return level(depth + 1);
            };
        }
        QuadOptions o;
        o.rel_tol = rel[depth];
        o.abs_tol = scale[depth] * rel[depth] * 1e-3;
        o.max_evals = opt.max_evals;
        QuadResult r = integrate_1d(fd, axes[depth].domain, axes[depth].hints, o);
        if (depth == last) evals_total += r.evals;
        scale[depth] = std::max(scale[depth], std::abs(r.value));
        if (depth == 0) {
            // expose outer result through side channel below
            outer_result = r;
        }
        return r.value;
    };

    level(0);
    QuadResult out = outer_result;
    out.evals = std::max(out.evals, evals_total);
    // inner solves meet their relative targets; account for them in the estimate
    if (axes.size() > 1) out.abs_err += rel[1] * 4.0 * std::abs(out.value);
    return out;
}

QuadResult integrate_radial3(const std::function<Complex(double, double, double)>& f,
                             const std::vector<Axis>& axes, double rel_tol) {
    if (axes.size() != 3) throw DomainError("integrate_radial3 expects exactly 3 axes");
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    return integrate_axes(
        [&f](const double* v) { return f(v[0], v[1], v[2]); }, axes, opt);
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

double mc_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double mc_normal(std::mt19937_64& rng) {
    // Box-Muller; one value per call keeps the stream layout simple
    const double u1 = mc_uniform(rng);
    const double u2 = mc_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

McSampler unit_box_sampler(int dim) {
    McSampler s;
    s.dim = dim;
    s.draw = [dim](std::mt19937_64& rng, std::vector<double>& x, double& dens) {
        x.resize(static_cast<std::size_t>(dim));
        for (auto& xi : x) xi = mc_uniform(rng);
        dens = 1.0;
    };
    return s;
}

McSampler gaussian_sampler(int dim) {
    McSampler s;
    s.dim = dim;
    s.draw = [dim](std::mt19937_64& rng, std::vector<double>& x, double& dens) {
        x.resize(static_cast<std::size_t>(dim));
        double q = 0.0;
        for (auto& xi : x) {
            xi = mc_normal(rng);
            q += xi * xi;
        }
        dens = std::pow(6.283185307179586, -0.5 * dim) * std::exp(-0.5 * q);
    };
    return s;
}

QuadResult integrate_mc(const std::function<Complex(const double*)>& f,
                        const McSampler& sampler, const McConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> x;
    double dens = 0.0;

    Complex sum{};
    Complex comp{};
    double sumsq = 0.0;
    double se_half = -1.0;
    const long long n = cfg.samples;

    for (long long i = 0; i < n; ++i) {
        sampler.draw(rng, x, dens);
        Complex w = f(x.data()) / dens;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw QuadratureError("monte carlo integrand returned a non-finite weight");
        const Complex y = w - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        sumsq += std::norm(w);

        if (i + 1 == n / 2) {
            const double m = static_cast<double>(i + 1);
            const Complex mean = sum / m;
            const double var = std::max(0.0, sumsq / m - std::norm(mean));
            se_half = std::sqrt(var / m);
        }
    }

    const double m = static_cast<double>(n);
    const Complex mean = sum / m;
    const double var = std::max(0.0, sumsq / m - std::norm(mean));
    const double se = std::sqrt(var / m);

    if (n >= 10000 && se_half > 0.0 && se > 0.9 * se_half)
        throw QuadratureError("monte carlo standard error failed to shrink as samples^{-1/2}");

    return {mean, 3.0 * se, n};
}

}  // namespace rankone
