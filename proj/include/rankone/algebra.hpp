#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rankone/errors.hpp"

namespace rankone {

/// The four normed division algebras over the reals.
enum class Field : std::uint8_t { Real, Complex, Quaternion, Octonion };

int field_dim(Field f);
Field field_from_string(const std::string& s);  // "R", "C", "H", "O"
std::string field_to_string(Field f);

/// An element of R, C, H or O as coefficients over the Cayley-Dickson basis
/// e0 = 1, e1..e_{d-1} imaginary units.
class DivisionElement {
  public:
    explicit DivisionElement(Field f) : field_(f) {}

    static DivisionElement zero(Field f) { return DivisionElement(f); }
    static DivisionElement one(Field f) { return basis(f, 0); }
    static DivisionElement basis(Field f, int k);
    static DivisionElement scalar(Field f, double value);

    Field field() const { return field_; }
    int dim() const { return field_dim(field_); }

    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    double re() const { return c_[0]; }
    DivisionElement conj() const;

    double norm_sq() const;
    double norm() const;

    DivisionElement operator-() const;
    DivisionElement& operator+=(const DivisionElement& o);
    DivisionElement& operator-=(const DivisionElement& o);
    DivisionElement& operator*=(double s);

    friend DivisionElement operator+(DivisionElement a, const DivisionElement& b) { return a += b; }
    friend DivisionElement operator-(DivisionElement a, const DivisionElement& b) { return a -= b; }
    friend DivisionElement operator*(DivisionElement a, double s) { return a *= s; }
    friend DivisionElement operator*(double s, DivisionElement a) { return a *= s; }

  private:
    Field field_;
    std::array<double, 8> c_{};
};

/// Cayley-Dickson product with the convention (a,b)(c,e) = (ac - conj(e)b, ea + b conj(c)).
/// Sign conventions vary between sources; tests depend on this one.
DivisionElement mul(const DivisionElement& a, const DivisionElement& b);

/// A vector over F; length n-1 on the G-side, m-1 on the H-side.
struct DivisionVector {
    std::vector<DivisionElement> entries;

    static DivisionVector zero(Field f, int len);

    Field field() const;
    int length() const { return static_cast<int>(entries.size()); }

    double norm_sq() const;

    friend DivisionVector operator+(const DivisionVector& a, const DivisionVector& b);
    DivisionVector operator-() const;
};

/// x*y = sum_i conj(x_i) y_i.
DivisionElement inner(const DivisionVector& x, const DivisionVector& y);

/// A point (x, z) of the 2-step nilpotent group on F^{n-1} + Im F.
/// Invariant: Re z = 0 (for F = R this forces z = 0).
struct NilpotentPoint {
    DivisionVector x;
    DivisionElement z;

    NilpotentPoint(DivisionVector x_, DivisionElement z_);

    static NilpotentPoint identity(Field f, int len);

    Field field() const { return z.field(); }
};

/// Group law (x,z)(x',z') = (x+x', z+z'+(x*x' - x'*x)/2).
NilpotentPoint group_mul(const NilpotentPoint& a, const NilpotentPoint& b);

/// (x,z)^{-1} = (-x,-z).
NilpotentPoint group_inverse(const NilpotentPoint& p);

/// Homogeneous gauge (|x|^4 + 4|z|^2)^{1/4}.
double nnorm(const NilpotentPoint& p);

}  // namespace rankone
