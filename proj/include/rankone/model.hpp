#pragma once

#include <complex>

#include "rankone/algebra.hpp"
#include "rankone/quad.hpp"

namespace rankone {

/// The configuration (F, n, m) with all derived constants.
/// Constraints: n >= 2, 1 <= m < n, and F = O forces n = 2.
struct SpacePair {
    Field field;
    int n;
    int m;

    SpacePair(Field field_, int n_, int m_);

    int d() const { return field_dim(field); }
    int p() const { return (n - 1) * d(); }
    int p_prime() const { return (m - 1) * d(); }
    int p_dprime() const { return (n - m) * d(); }
    int q() const { return d() - 1; }
    double rho() const { return 0.5 * (n * d() + d() - 2); }
    double rho_h() const { return 0.5 * (m * d() + d() - 2); }
    int dim_g() const { return n * d(); }  // N
    int dim_h() const { return m * d(); }  // M

    /// Unitarity radius of the spherical dual: rho for R, C; ((n-1)d+2)/2 for H, O.
    double unitarity_radius() const;
    /// Same constant for the H-side pair (F, m).
    double unitarity_radius_h() const;
};

enum class SpectralMode { Tempered, Complementary, General };

/// The Langlands parameter pair (lambda, nu).
struct SpectralParams {
    Complex lambda;
    Complex nu;

    static SpectralParams tempered(double lambda_im, double nu_im) {
        return {Complex(0.0, lambda_im), Complex(0.0, nu_im)};
    }

    SpectralMode mode(const SpacePair& sp) const;
    bool is_tempered() const {
        return std::abs(lambda.real()) < 1e-12 && std::abs(nu.real()) < 1e-12;
    }
};

/// Spherical vector phi_lambda(x,z) = ((1+|x|^2)^2+4|z|^2)^{-(lambda+rho)/2}.
Complex phi_spherical(const SpacePair& sp, Complex lambda, const NilpotentPoint& p);

/// H-side spherical vector psi_nu on points with m-1 vector entries.
Complex psi_spherical(const SpacePair& sp, Complex nu, const NilpotentPoint& p);

/// Kernel K_{lambda,nu}((x,z),(y,w)) =
///   N((-x,-z)(y,w))^{-2(nu+rho_H)} |x_2|^{(lambda-rho)+(nu+rho_H)}.
/// h lives on the H-side (m-1 entries) and is embedded as the first m-1
/// coordinates.
Complex kernel(const SpacePair& sp, Complex lambda, Complex nu, const NilpotentPoint& p,
               const NilpotentPoint& h);

/// Checks the power-counting conditions (origin, x2-axis, infinity) for
/// absolute convergence of the model integral; throws DivergenceError if
/// violated.
void check_convergence(const SpacePair& sp, const SpectralParams& params);

/// A_{lambda,-nu} phi_lambda(0,0) by the exact polar reduction (1-3 axes,
/// degenerate axes dropped with their prefactors).
QuadResult a_value_numeric(const SpacePair& sp, const SpectralParams& params, double tol);

/// The closed form
///   pi^{(p+q)/2} G((2l-2v+p'')/4) G((2l+2v+p'')/4) G((2l+p+2q+2)/4)
///     / [G(p''/2) G((2l+p+2q)/2) G((2l+p+2)/4)].
Complex a_value_closed(const SpacePair& sp, const SpectralParams& params);

/// Full-dimensional Monte Carlo cross-check of the same integral (m = 1 spaces).
QuadResult a_value_mc(const SpacePair& sp, const SpectralParams& params, long long samples,
                      std::uint64_t seed);

/// int_{N_H} ((1+|y|^2)^2+4|w|^2)^{-rho_H} d(y,w); equals 1 for the
/// zero-dimensional H-side (F = R, m = 1).
QuadResult normalization_constant(const SpacePair& sp, double tol);

/// normalization_constant x a_value_closed.
Complex ell_mod_special_value(const SpacePair& sp, const SpectralParams& params);

/// The Gamma-quotient
///   G((l+rho+1)/2) G((l+rho-v-rho_H)/2) G((l+rho+v-rho_H)/2)
///     / [G((l+rho-d+2)/2) G(l+rho)];
/// ell_mod_special_value divided by this is constant in (lambda, nu).
Complex special_value_structure(const SpacePair& sp, const SpectralParams& params);

/// (1+|l|)^{1-nd/2} (1+|l^2-v^2|)^{(n-m)d/4-1/2} e^{pi|l|/2}
///   e^{-(pi/4)(|l+v|+|l-v|)}, tempered parameters only.
double ell_mod_envelope(const SpacePair& sp, const SpectralParams& params);

}  // namespace rankone
