#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rankone/errors.hpp"

namespace rankone {

using Complex = std::complex<double>;

/// Value with an error estimate from the rule's error model and the
/// number of integrand evaluations spent.
struct QuadResult {
    Complex value{};
    double abs_err = 0.0;
    long long evals = 0;
};

enum class Domain { ZeroToInf, OneToInf, ZeroToOne, ZeroToHalfPi };

/// Declares integrable power behaviour of the integrand at an endpoint.
/// Lower, or Upper of a finite domain: f ~ dist^exponent with exponent > -1.
/// Upper of an infinite domain: f ~ x^exponent with exponent < -1 (decay).
struct Singularity {
    enum class At { Lower, Upper };
    At at;
    double exponent;
};

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    long long max_evals = 1'000'000;  // subdivision budget per axis set
};

using Integrand1D = std::function<Complex(double)>;

QuadResult integrate_1d(const Integrand1D& f, Domain domain,
                        const std::vector<Singularity>& hints, const QuadOptions& opt);

inline QuadResult integrate_1d(const Integrand1D& f, Domain domain,
                               const std::vector<Singularity>& hints, double rel_tol) {
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    return integrate_1d(f, domain, hints, opt);
}

struct Axis {
    Domain domain = Domain::ZeroToInf;
    std::vector<Singularity> hints;
};

/// Tensorized nested adaptive rule over 1..3 axes; coordinates are passed to
/// f in axis order.
QuadResult integrate_axes(const std::function<Complex(const double*)>& f,
                          const std::vector<Axis>& axes, const QuadOptions& opt);

inline QuadResult integrate_axes(const std::function<Complex(const double*)>& f,
                                 const std::vector<Axis>& axes, double rel_tol) {
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    return integrate_axes(f, axes, opt);
}

/// The exact 3-D radial integrator for polar-reduced model integrands on (0,inf)^3.
QuadResult integrate_radial3(const std::function<Complex(double, double, double)>& f,
                             const std::vector<Axis>& axes, double rel_tol);

// ---------------------------------------------------------------------------
// Monte Carlo cross-checker
// ---------------------------------------------------------------------------

/// A sampler draws a point in R^dim together with its probability density.
struct McSampler {
    int dim = 0;
    std::function<void(std::mt19937_64&, std::vector<double>&, double&)> draw;
};

McSampler unit_box_sampler(int dim);
McSampler gaussian_sampler(int dim);

struct McConfig {
    long long samples = 1'000'000;
    std::uint64_t seed = 20240915ULL;
};

/// Importance-sampled mean with abs_err = 3 standard errors. Deterministic
/// for fixed seed. Throws if the standard error fails to shrink ~ n^{-1/2}.
QuadResult integrate_mc(const std::function<Complex(const double*)>& f,
                        const McSampler& sampler, const McConfig& cfg);

// uniform in (0,1), strictly; used by all samplers so results do not depend
// on implementation-defined std distributions
double mc_uniform(std::mt19937_64& rng);
double mc_normal(std::mt19937_64& rng);

}  // namespace rankone
