#pragma once

#include <complex>
#include <initializer_list>

#include "rankone/errors.hpp"

namespace rankone {

using Complex = std::complex<double>;

/// t^w for t > 0 via exp(w ln t); the only complex power the library needs,
/// so there is never a branch choice to make.
Complex powc(double t, Complex w);

/// Principal-branch log Gamma (Lanczos in log space, reflection for Re z < 1/2).
/// Throws PoleError within 1e-9 of a non-positive integer.
Complex log_gamma(Complex z);

/// exp(sum log_gamma(num) - sum log_gamma(den)).
Complex gamma_ratio(std::initializer_list<Complex> num, std::initializer_list<Complex> den);

/// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), computed in log space.
Complex beta(Complex a, Complex b);

/// Gauss 2F1 for complex parameters and real argument x <= 1.
/// Series for |x| <= 1/2, linear transformations elsewhere, Gauss value at 1.
Complex gauss_2f1(Complex a, Complex b, Complex c, double x);

/// 3F2 at unit argument; requires Re(b1+b2-a1-a2-a3) > 0.
Complex f3f2_unit(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2);

/// (1+|b|)^{a-1/2} e^{-pi|b|/2}.
double stirling_envelope(double a, double b);

/// Distance from z to the nearest non-positive integer (Gamma pole set).
double gamma_pole_distance(Complex z);

/// Distance from z to the nearest integer (validity guard for the
/// hypergeometric connection formulas).
double integer_distance(Complex z);

}  // namespace rankone
