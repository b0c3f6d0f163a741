// rankone: special values of spherical pairing integrals on rank-one
// symmetric spaces, hypergeometric identity suites, and asymptotic envelope
// checks.
//
// Commands: special-value, verify-identities, ladder, asymptotics, exponents,
// selftest. Reports are CSV or newline-delimited JSON; reruns with the same
// configuration are byte-identical. Relative output paths honor
// $RANKONE_OUT_DIR.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankone/bounds.hpp"
#include "rankone/identities.hpp"
#include "rankone/model.hpp"
#include "rankone/report.hpp"
#include "rankone/specfun.hpp"

namespace {

using namespace rankone;

constexpr std::uint64_t kDefaultSeed = 20240915ULL;

struct GridSpec {
    double lo = 10.0, hi = 100.0, step = 10.0;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &g.lo, &g.hi, &g.step) != 3 || g.step <= 0.0)
        throw CLI::ValidationError("--grid", "expected lo:hi:step with step > 0");
    return g;
}

std::vector<SpacePair> spaces_up_to(int nmax) {
    std::vector<SpacePair> out;
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
        for (int n = 2; n <= nmax; ++n)
            for (int m = 1; m < n; ++m) out.emplace_back(f, n, m);
    }
    out.emplace_back(Field::Octonion, 2, 1);
    return out;
}

void emit(const Report& report, const std::string& out, ReportFormat format) {
    write_file_atomic(resolve_out_path(out), render_report(report, format));
}

// ---------------------------------------------------------------------------

struct SpecialValueCmd {
    std::string field = "C";
    int n = 2, m = 1;
    std::vector<double> lambda_im{0.0};
    std::vector<double> nu_im{0.0};
    double lambda_re = 0.0, nu_re = 0.0;
    double tol = 1e-6;
    long long mc_samples = 4'000'000;
    std::uint64_t seed = kDefaultSeed;
    std::string out = "special_value.csv";
    std::string format = "csv";
    int jobs = 1;

    int run() const {
        const SpacePair sp(field_from_string(field), n, m);
        const bool use_mc = sp.field == Field::Octonion;

        struct Point {
            double li, vi;
        };
        std::vector<Point> points;
        for (double li : lambda_im)
            for (double vi : nu_im) points.push_back({li, vi});

        Report rep;
        rep.columns = {"field", "n", "m", "lambda_im", "nu_im", "closed_re", "closed_im",
                       "numeric_re", "numeric_im", "abs_err", "relerr", "pass"};
        rep.rows = run_ordered(points.size(), jobs, [&](std::size_t i) -> Row {
            const SpectralParams params{Complex(lambda_re, points[i].li), Complex(nu_re, points[i].vi)};
            const Complex closed = a_value_closed(sp, params);
            QuadResult numeric;
            if (use_mc)
                numeric = a_value_mc(sp, params, mc_samples, seed);
            else
                numeric = a_value_numeric(sp, params, tol * 0.2);
            const double relerr = std::abs(numeric.value - closed) / std::abs(closed);
            const bool pass = use_mc ? std::abs(numeric.value - closed) <= numeric.abs_err
                                     : relerr <= tol;
            Row row;
            row["field"] = field;
            row["n"] = n;
            row["m"] = m;
            row["lambda_im"] = points[i].li;
            row["nu_im"] = points[i].vi;
            row["closed_re"] = closed.real();
            row["closed_im"] = closed.imag();
            row["numeric_re"] = numeric.value.real();
            row["numeric_im"] = numeric.value.imag();
            row["abs_err"] = numeric.abs_err;
            row["relerr"] = relerr;
            row["pass"] = pass;
            return row;
        });
        emit(rep, out, report_format_from_string(format));
        for (const Row& r : rep.rows)
            if (!r["pass"].get<bool>()) return 3;
        return 0;
    }
};

struct VerifyIdentitiesCmd {
    std::vector<std::string> only;
    int draws = 100;
    double tol = 1e-8;
    std::uint64_t seed = kDefaultSeed;
    std::string out = "identities.jsonl";
    std::string format = "json";
    int jobs = 1;

    int run() const {
        std::vector<IdentityId> ids;
        if (only.empty())
            ids = all_identities();
        else
            for (const auto& s : only) ids.push_back(identity_from_string(s));

        // draw all cases up front (sequentially, so the row set is independent
        // of the worker count), then verify in parallel
        std::vector<IdentityCase> cases;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            std::mt19937_64 rng(seed + 1000ULL * static_cast<std::uint64_t>(k));
            for (int d = 0; d < draws; ++d) cases.push_back(draw_case(ids[k], rng));
        }

        Report rep;
        rep.columns = {"id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "relerr", "pass"};
        rep.rows = run_ordered(cases.size(), jobs, [&](std::size_t i) -> Row {
            const IdentityReport r = verify_identity(cases[i], tol);
            Row row;
            row["id"] = identity_name(cases[i].id);
            Row params;
            for (const auto& [k, v] : cases[i].params) {
                params[k] = {v.real(), v.imag()};
            }
            row["params"] = params;
            row["lhs_re"] = r.lhs.real();
            row["lhs_im"] = r.lhs.imag();
            row["rhs_re"] = r.rhs.real();
            row["rhs_im"] = r.rhs.imag();
            row["relerr"] = r.relerr;
            row["pass"] = r.pass;
            return row;
        });
        emit(rep, out, report_format_from_string(format));
        for (const Row& r : rep.rows)
            if (!r["pass"].get<bool>()) return 3;
        return 0;
    }
};

struct LadderCmd {
    std::string field = "C";
    int n = 3, m = 2;
    double lambda_im = 0.0, nu_im = 0.0;
    double tol = 1e-6;
    std::string out = "ladder.csv";
    std::string format = "csv";

    int run() const {
        const SpacePair sp(field_from_string(field), n, m);
        const SpectralParams params = SpectralParams::tempered(lambda_im, nu_im);
        const LadderReport lr = derivation_ladder(sp, params, tol);

        Report rep;
        rep.columns = {"stage", "value_re", "value_im", "abs_err", "relerr_to_prev",
                       "transition_from_prev", "pass"};
        for (std::size_t k = 0; k < lr.stages.size(); ++k) {
            Row row;
            row["stage"] = lr.stages[k].label;
            row["value_re"] = lr.stages[k].value.real();
            row["value_im"] = lr.stages[k].value.imag();
            row["abs_err"] = lr.stages[k].abs_err;
            row["relerr_to_prev"] = k == 0 ? 0.0 : lr.pair_relerr[k - 1];
            row["transition_from_prev"] = k == 0 ? std::string("-") : lr.transitions[k - 1];
            row["pass"] = k == 0 ? true : lr.pair_relerr[k - 1] <= tol;
            rep.rows.push_back(row);
        }
        emit(rep, out, report_format_from_string(format));
        return lr.max_pairwise_relerr <= tol ? 0 : 3;
    }
};

struct AsymptoticsCmd {
    std::string field = "C";
    int n = 2, m = 1;
    std::string grid = "10:100:10";
    double band_lo = 0.0, band_hi = 0.0;  // 0 = not checked
    std::string out = "asymptotics.csv";
    std::string format = "csv";

    int run() const {
        const SpacePair sp(field_from_string(field), n, m);
        const GridSpec g = parse_grid(grid);
        const double norm = normalization_constant(sp, 1e-10).value.real();
        const bool check_band = band_lo > 0.0 && band_hi > 0.0;

        Report rep;
        rep.columns = {"field", "n", "m", "lambda_im", "nu_im", "ell_abs", "envelope", "ratio"};
        if (check_band) rep.columns.push_back("pass");
        bool all_pass = true;
        for (double t = g.lo; t <= g.hi + 1e-9; t += g.step) {
            for (double u = g.lo; u <= g.hi + 1e-9; u += g.step) {
                const SpectralParams params = SpectralParams::tempered(t, u);
                const double ell = std::abs(norm * a_value_closed(sp, params));
                const double env = ell_mod_envelope(sp, params);
                const double ratio = ell / env;
                Row row;
                row["field"] = field;
                row["n"] = n;
                row["m"] = m;
                row["lambda_im"] = t;
                row["nu_im"] = u;
                row["ell_abs"] = ell;
                row["envelope"] = env;
                row["ratio"] = ratio;
                if (check_band) {
                    const bool ok = ratio >= band_lo && ratio <= band_hi;
                    row["pass"] = ok;
                    all_pass = all_pass && ok;
                }
                rep.rows.push_back(row);
            }
        }
        emit(rep, out, report_format_from_string(format));
        return all_pass ? 0 : 3;
    }
};

struct ExponentsCmd {
    bool all_spaces = false;
    std::string field = "C";
    int n = 2, m = 1;
    int nmax = 4;
    std::string out = "exponents.csv";
    std::string format = "csv";

    int run() const {
        std::vector<SpacePair> sps;
        if (all_spaces)
            sps = spaces_up_to(nmax);
        else
            sps.emplace_back(field_from_string(field), n, m);

        Report rep;
        rep.columns = {"field", "n", "m", "pow_b", "rate_b_pi", "pow_a", "rate_a_pi",
                       "match_b", "match_a", "pass"};
        bool all_pass = true;
        for (const SpacePair& sp : sps) {
            const DerivationReport dr = derive_corollaries(sp);
            const bool pass = dr.matches_fixed_f && dr.matches_fixed_g;
            all_pass = all_pass && pass;
            Row row;
            row["field"] = field_to_string(sp.field);
            row["n"] = sp.n;
            row["m"] = sp.m;
            row["pow_b"] = dr.derived_fixed_f.pow_b.str();
            row["rate_b_pi"] = dr.derived_fixed_f.rate_b.str();
            row["pow_a"] = dr.derived_fixed_g.pow_a.str();
            row["rate_a_pi"] = dr.derived_fixed_g.rate_a.str();
            row["match_b"] = dr.matches_fixed_f;
            row["match_a"] = dr.matches_fixed_g;
            row["pass"] = pass;
            rep.rows.push_back(row);
        }
        emit(rep, out, report_format_from_string(format));
        return all_pass ? 0 : 3;
    }
};

struct SelftestCmd {
    std::string out = "selftest_report.csv";
    std::string format = "csv";

    int run() const {
        Report rep;
        rep.columns = {"kind", "case", "observed", "expected", "relerr", "pass"};
        bool all_pass = true;
        auto add = [&](const std::string& kind, const std::string& name, double observed,
                       double expected, double tol) {
            const double denom = std::max(std::abs(expected), 1e-300);
            const double relerr = std::abs(observed - expected) / denom;
            const bool pass = relerr <= tol;
            all_pass = all_pass && pass;
            Row row;
            row["kind"] = kind;
            row["case"] = name;
            row["observed"] = observed;
            row["expected"] = expected;
            row["relerr"] = relerr;
            row["pass"] = pass;
            rep.rows.push_back(row);
        };

        // closed-form anchors against quadrature
        {
            const SpacePair r21(Field::Real, 2, 1);
            const SpacePair c21(Field::Complex, 2, 1);
            const SpectralParams zero = SpectralParams::tempered(0.0, 0.0);
            add("anchor", "R,2,1 numeric vs closed", a_value_numeric(r21, zero, 1e-8).value.real(),
                a_value_closed(r21, zero).real(), 1e-6);
            add("anchor", "C,2,1 numeric vs closed", a_value_numeric(c21, zero, 1e-8).value.real(),
                a_value_closed(c21, zero).real(), 1e-6);
        }
        // seeded identity draws
        for (IdentityId id : all_identities()) {
            std::mt19937_64 rng(42u + static_cast<unsigned>(id));
            for (int k = 0; k < 2; ++k) {
                const IdentityCase c = draw_case(id, rng);
                const IdentityReport r = verify_identity(c, 1e-8);
                add("identity", identity_name(id) + "#" + std::to_string(k), r.relerr, 0.0, 1.0);
                all_pass = all_pass && r.pass;
                rep.rows.back()["pass"] = r.pass;
            }
        }
        // exponent derivation
        for (const SpacePair& sp : spaces_up_to(3)) {
            const DerivationReport dr = derive_corollaries(sp);
            const bool pass = dr.matches_fixed_f && dr.matches_fixed_g;
            all_pass = all_pass && pass;
            Row row;
            row["kind"] = "exponents";
            row["case"] = field_to_string(sp.field) + "," + std::to_string(sp.n) + "," +
                          std::to_string(sp.m);
            row["observed"] = dr.derived_fixed_f.pow_b.str() + ";" + dr.derived_fixed_g.pow_a.str();
            row["expected"] = dr.stated.fixed_f.pow_b.str() + ";" + dr.stated.fixed_g.pow_a.str();
            row["relerr"] = 0.0;
            row["pass"] = pass;
            rep.rows.push_back(row);
        }
        emit(rep, out, report_format_from_string(format));
        return all_pass ? 0 : 3;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Model period integrals on rank-one symmetric spaces over R, C, H, O:\n"
        "closed-form special values vs quadrature, hypergeometric identity\n"
        "verification, and asymptotic envelope checks."};
    app.require_subcommand(1);
    app.set_config("--config")->expected(1);

    SpecialValueCmd sv;
    auto* c_sv = app.add_subcommand("special-value", "closed form vs quadrature / Monte Carlo");
    c_sv->add_option("--field", sv.field, "R, C, H or O")->required();
    c_sv->add_option("--n", sv.n)->required();
    c_sv->add_option("--m", sv.m)->required();
    c_sv->add_option("--lambda-im", sv.lambda_im, "imaginary parts of lambda (grid)");
    c_sv->add_option("--nu-im", sv.nu_im, "imaginary parts of nu (grid)");
    c_sv->add_option("--lambda-re", sv.lambda_re);
    c_sv->add_option("--nu-re", sv.nu_re);
    c_sv->add_option("--tol", sv.tol);
    c_sv->add_option("--mc-samples", sv.mc_samples);
    c_sv->add_option("--seed", sv.seed);
    c_sv->add_option("--out", sv.out);
    c_sv->add_option("--format", sv.format);
    c_sv->add_option("--jobs", sv.jobs);

    VerifyIdentitiesCmd vi;
    auto* c_vi = app.add_subcommand("verify-identities", "integral-identity suite");
    c_vi->add_option("--only", vi.only, "restrict to these identity ids");
    c_vi->add_option("--draws", vi.draws);
    c_vi->add_option("--tol", vi.tol);
    c_vi->add_option("--seed", vi.seed);
    c_vi->add_option("--out", vi.out);
    c_vi->add_option("--format", vi.format);
    c_vi->add_option("--jobs", vi.jobs);

    LadderCmd la;
    auto* c_la = app.add_subcommand("ladder", "stagewise derivation consistency");
    c_la->add_option("--field", la.field)->required();
    c_la->add_option("--n", la.n)->required();
    c_la->add_option("--m", la.m)->required();
    c_la->add_option("--lambda-im", la.lambda_im);
    c_la->add_option("--nu-im", la.nu_im);
    c_la->add_option("--tol", la.tol);
    c_la->add_option("--out", la.out);
    c_la->add_option("--format", la.format);

    AsymptoticsCmd as_cmd;
    auto* c_as = app.add_subcommand("asymptotics", "special value / envelope ratio sweep");
    c_as->add_option("--field", as_cmd.field)->required();
    c_as->add_option("--n", as_cmd.n)->required();
    c_as->add_option("--m", as_cmd.m)->required();
    c_as->add_option("--grid", as_cmd.grid, "lo:hi:step for |lambda|, |nu|");
    c_as->add_option("--band-lo", as_cmd.band_lo);
    c_as->add_option("--band-hi", as_cmd.band_hi);
    c_as->add_option("--out", as_cmd.out);
    c_as->add_option("--format", as_cmd.format);

    ExponentsCmd ex;
    auto* c_ex = app.add_subcommand("exponents", "corollary exponents from the square-sum bound");
    c_ex->add_flag("--all-spaces", ex.all_spaces);
    c_ex->add_option("--field", ex.field);
    c_ex->add_option("--n", ex.n);
    c_ex->add_option("--m", ex.m);
    c_ex->add_option("--nmax", ex.nmax);
    c_ex->add_option("--out", ex.out);
    c_ex->add_option("--format", ex.format);

    SelftestCmd st;
    auto* c_st = app.add_subcommand("selftest", "fixed deterministic battery");
    c_st->add_option("--out", st.out);
    c_st->add_option("--format", st.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_sv->parsed()) return sv.run();
        if (c_vi->parsed()) return vi.run();
        if (c_la->parsed()) return la.run();
        if (c_as->parsed()) return as_cmd.run();
        if (c_ex->parsed()) return ex.run();
        if (c_st->parsed()) return st.run();
    } catch (const rankone::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rankone::DimensionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
