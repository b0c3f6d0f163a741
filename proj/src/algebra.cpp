#include "rankone/algebra.hpp"

#include <cmath>

namespace rankone {

int field_dim(Field f) {
    switch (f) {
        case Field::Real: return 1;
        case Field::Complex: return 2;
        case Field::Quaternion: return 4;
        case Field::Octonion: return 8;
    }
    throw DomainError("unknown field");
}

Field field_from_string(const std::string& s) {
    if (s == "R") return Field::Real;
    if (s == "C") return Field::Complex;
    if (s == "H") return Field::Quaternion;
    if (s == "O") return Field::Octonion;
    throw DomainError("field must be one of R, C, H, O (got '" + s + "')");
}

std::string field_to_string(Field f) {
    switch (f) {
        case Field::Real: return "R";
        case Field::Complex: return "C";
        case Field::Quaternion: return "H";
        case Field::Octonion: return "O";
    }
    throw DomainError("unknown field");
}

DivisionElement DivisionElement::basis(Field f, int k) {
    if (k < 0 || k >= field_dim(f)) throw DimensionError("basis index out of range");
    DivisionElement e(f);
    e.c_[static_cast<std::size_t>(k)] = 1.0;
    return e;
}

DivisionElement DivisionElement::scalar(Field f, double value) {
    DivisionElement e(f);
    e.c_[0] = value;
    return e;
}

DivisionElement DivisionElement::conj() const {
    DivisionElement r = *this;
    for (int i = 1; i < dim(); ++i) r.c_[static_cast<std::size_t>(i)] = -r.c_[static_cast<std::size_t>(i)];
    return r;
}

double DivisionElement::norm_sq() const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += c_[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)];
    return s;
}

double DivisionElement::norm() const { return std::sqrt(norm_sq()); }

DivisionElement DivisionElement::operator-() const {
    DivisionElement r = *this;
    for (int i = 0; i < dim(); ++i) r.c_[static_cast<std::size_t>(i)] = -r.c_[static_cast<std::size_t>(i)];
    return r;
}

DivisionElement& DivisionElement::operator+=(const DivisionElement& o) {
    if (field_ != o.field_) throw DimensionError("algebra dimension mismatch in +");
    for (int i = 0; i < dim(); ++i) c_[static_cast<std::size_t>(i)] += o.c_[static_cast<std::size_t>(i)];
    return *this;
}

DivisionElement& DivisionElement::operator-=(const DivisionElement& o) {
    if (field_ != o.field_) throw DimensionError("algebra dimension mismatch in -");
    for (int i = 0; i < dim(); ++i) c_[static_cast<std::size_t>(i)] -= o.c_[static_cast<std::size_t>(i)];
    return *this;
}

DivisionElement& DivisionElement::operator*=(double s) {
    for (int i = 0; i < dim(); ++i) c_[static_cast<std::size_t>(i)] *= s;
    return *this;
}

namespace {

// Doubling recursion on raw coefficient blocks of size d:
// (a,b)(c,e) = (ac - conj(e)b, ea + b conj(c)).
void cd_mul(const double* a, const double* b, double* out, int d) {
    if (d == 1) {
        out[0] = a[0] * b[0];
        return;
    }
    const int h = d / 2;
    const double* a1 = a;
    const double* a2 = a + h;
    const double* b1 = b;
    const double* b2 = b + h;

    std::array<double, 4> t1{}, t2{}, tmp{};

    // conj of a half-block in place of a copy
    auto conj_half = [h](const double* src, double* dst) {
        dst[0] = src[0];
        for (int i = 1; i < h; ++i) dst[i] = -src[i];
    };

    std::array<double, 4> cb2{}, cb1{};
    conj_half(b2, cb2.data());
    conj_half(b1, cb1.data());

    // first half: a1*b1 - conj(b2)*a2
    cd_mul(a1, b1, t1.data(), h);
    cd_mul(cb2.data(), a2, tmp.data(), h);
    for (int i = 0; i < h; ++i) out[i] = t1[i] - tmp[i];

    // second half: b2*a1 + a2*conj(b1)
    cd_mul(b2, a1, t2.data(), h);
    cd_mul(a2, cb1.data(), tmp.data(), h);
    for (int i = 0; i < h; ++i) out[h + i] = t2[i] + tmp[i];
}

}  // namespace

DivisionElement mul(const DivisionElement& a, const DivisionElement& b) {
    if (a.field() != b.field()) throw DimensionError("algebra dimension mismatch in mul");
    const int d = a.dim();
    std::array<double, 8> va{}, vb{}, vo{};
    for (int i = 0; i < d; ++i) {
        va[static_cast<std::size_t>(i)] = a[i];
        vb[static_cast<std::size_t>(i)] = b[i];
    }
    cd_mul(va.data(), vb.data(), vo.data(), d);
    DivisionElement r(a.field());
    for (int i = 0; i < d; ++i) r[i] = vo[static_cast<std::size_t>(i)];
    return r;
}

DivisionVector DivisionVector::zero(Field f, int len) {
    DivisionVector v;
    v.entries.assign(static_cast<std::size_t>(len), DivisionElement::zero(f));
    return v;
}

Field DivisionVector::field() const {
    if (entries.empty()) throw DimensionError("field() of empty vector");
    return entries.front().field();
}

double DivisionVector::norm_sq() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.norm_sq();
    return s;
}

DivisionVector operator+(const DivisionVector& a, const DivisionVector& b) {
    if (a.length() != b.length()) throw DimensionError("vector length mismatch in +");
    DivisionVector r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
    return r;
}

DivisionVector DivisionVector::operator-() const {
    DivisionVector r = *this;
    for (auto& e : r.entries) e = -e;
    return r;
}

DivisionElement inner(const DivisionVector& x, const DivisionVector& y) {
    if (x.length() != y.length()) throw DimensionError("vector length mismatch in inner");
    if (x.entries.empty()) throw DimensionError("inner of empty vectors");
    DivisionElement s = DivisionElement::zero(x.field());
    for (std::size_t i = 0; i < x.entries.size(); ++i) s += mul(x.entries[i].conj(), y.entries[i]);
    return s;
}

NilpotentPoint::NilpotentPoint(DivisionVector x_, DivisionElement z_) : x(std::move(x_)), z(z_) {
    for (const auto& e : x.entries)
        if (e.field() != z.field()) throw DimensionError("x entries and z from different algebras");
    z[0] = 0.0;  // Im-part constraint
}

NilpotentPoint NilpotentPoint::identity(Field f, int len) {
    return NilpotentPoint(DivisionVector::zero(f, len), DivisionElement::zero(f));
}

NilpotentPoint group_mul(const NilpotentPoint& a, const NilpotentPoint& b) {
    if (a.x.length() != b.x.length()) throw DimensionError("vector length mismatch in group_mul");
    DivisionVector x = a.x + b.x;
    DivisionElement z = a.z + b.z;
    if (a.x.length() > 0) {
        DivisionElement comm = inner(a.x, b.x) - inner(b.x, a.x);
        z += 0.5 * comm;
    }
    z[0] = 0.0;
    return NilpotentPoint(std::move(x), z);
}

NilpotentPoint group_inverse(const NilpotentPoint& p) { return NilpotentPoint(-p.x, -p.z); }

double nnorm(const NilpotentPoint& p) {
    const double xs = p.x.norm_sq();
    const double zs = p.z.norm_sq();
    return std::pow(xs * xs + 4.0 * zs, 0.25);
}

}  // namespace rankone
