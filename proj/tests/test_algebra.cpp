#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "rankone/algebra.hpp"
#include "rankone/quad.hpp"

using namespace rankone;

namespace {

// Independent oracle: basis multiplication table built by integer doubling,
// kept separate from the library's coefficient arithmetic.
void table_mul(const int* a, const int* b, int* out, int d) {
    if (d == 1) {
        out[0] = a[0] * b[0];
        return;
    }
    const int h = d / 2;
    std::array<int, 4> cb1{}, cb2{}, t1{}, t2{}, tmp{};
    cb1[0] = b[0];
    cb2[0] = b[h];
    for (int i = 1; i < h; ++i) {
        cb1[i] = -b[i];
        cb2[i] = -b[h + i];
    }
    table_mul(a, b, t1.data(), h);
    table_mul(cb2.data(), a + h, tmp.data(), h);
    for (int i = 0; i < h; ++i) out[i] = t1[i] - tmp[i];
    table_mul(b + h, a, t2.data(), h);
    table_mul(a + h, cb1.data(), tmp.data(), h);
    for (int i = 0; i < h; ++i) out[h + i] = t2[i] + tmp[i];
}

// e_i * e_j as (sign, index)
std::pair<int, int> basis_product(int i, int j, int d) {
    std::array<int, 8> a{}, b{}, out{};
    a[static_cast<std::size_t>(i)] = 1;
    b[static_cast<std::size_t>(j)] = 1;
    table_mul(a.data(), b.data(), out.data(), d);
    for (int k = 0; k < d; ++k) {
        if (out[static_cast<std::size_t>(k)] != 0) return {out[static_cast<std::size_t>(k)], k};
    }
    return {0, -1};
}

DivisionElement random_element(Field f, std::mt19937_64& rng) {
    DivisionElement e(f);
    for (int i = 0; i < e.dim(); ++i) e[i] = 2.0 * mc_uniform(rng) - 1.0;
    return e;
}

DivisionVector random_vector(Field f, int len, std::mt19937_64& rng) {
    DivisionVector v = DivisionVector::zero(f, len);
    for (auto& e : v.entries) e = random_element(f, rng);
    return v;
}

NilpotentPoint random_point(Field f, int len, std::mt19937_64& rng) {
    DivisionElement z = random_element(f, rng);
    z[0] = 0.0;
    return NilpotentPoint(random_vector(f, len, rng), z);
}

double dist(const DivisionElement& a, const DivisionElement& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double dist(const NilpotentPoint& a, const NilpotentPoint& b) {
    double s = dist(a.z, b.z);
    for (int i = 0; i < a.x.length(); ++i)
        s += dist(a.x.entries[static_cast<std::size_t>(i)], b.x.entries[static_cast<std::size_t>(i)]);
    return s;
}

}  // namespace

TEST_CASE("division algebra basis products match the doubling-table oracle") {
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion, Field::Octonion}) {
        const int d = field_dim(f);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const auto [sign, idx] = basis_product(i, j, d);
                const DivisionElement prod = mul(DivisionElement::basis(f, i), DivisionElement::basis(f, j));
                for (int k = 0; k < d; ++k) {
                    const double expected = (k == idx) ? static_cast<double>(sign) : 0.0;
                    CHECK(prod[k] == doctest::Approx(expected).epsilon(1e-15));
                }
            }
        }
    }
}

TEST_CASE("named basis products") {
    // i*i = -1 in C
    const auto c = mul(DivisionElement::basis(Field::Complex, 1), DivisionElement::basis(Field::Complex, 1));
    CHECK(c[0] == -1.0);
    CHECK(c[1] == 0.0);
    // i*j = k in H
    const auto h = mul(DivisionElement::basis(Field::Quaternion, 1), DivisionElement::basis(Field::Quaternion, 2));
    CHECK(h[3] == 1.0);
    // (e1 e2) e4 and e1 (e2 e4) are opposite in O
    const auto e1 = DivisionElement::basis(Field::Octonion, 1);
    const auto e2 = DivisionElement::basis(Field::Octonion, 2);
    const auto e4 = DivisionElement::basis(Field::Octonion, 4);
    const auto lhs = mul(mul(e1, e2), e4);
    const auto rhs = mul(e1, mul(e2, e4));
    CHECK(std::abs(lhs[7]) == 1.0);
    CHECK(lhs[7] == -rhs[7]);
}

TEST_CASE("conjugation, norm multiplicativity, alternativity") {
    std::mt19937_64 rng(123);
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion, Field::Octonion}) {
        for (int trial = 0; trial < 500; ++trial) {
            const DivisionElement a = random_element(f, rng);
            const DivisionElement b = random_element(f, rng);

            CHECK(dist(a.conj().conj(), a) == 0.0);

            // |ab| = |a||b| within 8 ulps
            const double nab = mul(a, b).norm();
            const double prod = a.norm() * b.norm();
            CHECK(std::abs(nab - prod) <= 8.0 * std::abs(prod) * 1.1102230246251565e-16);

            // a conj(a) = |a|^2 e0
            const DivisionElement aa = mul(a, a.conj());
            CHECK(aa[0] == doctest::Approx(a.norm_sq()).epsilon(1e-13));
            for (int k = 1; k < aa.dim(); ++k) CHECK(std::abs(aa[k]) < 1e-14);

            // Re(ab) = Re(ba)
            CHECK(mul(a, b).re() == doctest::Approx(mul(b, a).re()).epsilon(1e-12));

            // alternativity x(xy) = (xx)y
            const DivisionElement l = mul(a, mul(a, b));
            const DivisionElement r = mul(mul(a, a), b);
            CHECK(dist(l, r) < 1e-13 * (1.0 + a.norm_sq() * b.norm()));

            // associator vanishes identically below the octonions
            if (f != Field::Octonion) {
                const DivisionElement c = random_element(f, rng);
                CHECK(dist(mul(mul(a, b), c), mul(a, mul(b, c))) < 1e-13);
            }
        }
    }
}

TEST_CASE("Moufang identity holds in the octonions") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const DivisionElement x = random_element(Field::Octonion, rng);
        const DivisionElement y = random_element(Field::Octonion, rng);
        const DivisionElement z = random_element(Field::Octonion, rng);
        // z(x(zy)) = ((zx)z)y
        const DivisionElement lhs = mul(z, mul(x, mul(z, y)));
        const DivisionElement rhs = mul(mul(mul(z, x), z), y);
        CHECK(dist(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("nilpotent group law") {
    std::mt19937_64 rng(5);
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion, Field::Octonion}) {
        const int len = f == Field::Octonion ? 1 : 2;
        const NilpotentPoint e = NilpotentPoint::identity(f, len);
        for (int trial = 0; trial < 200; ++trial) {
            const NilpotentPoint p1 = random_point(f, len, rng);
            const NilpotentPoint p2 = random_point(f, len, rng);
            const NilpotentPoint p3 = random_point(f, len, rng);

            // identity and inverse
            CHECK(dist(group_mul(e, p1), p1) == 0.0);
            CHECK(dist(group_mul(p1, group_inverse(p1)), e) < 1e-15);

            // associativity (finite check: the group is 2-step nilpotent)
            const NilpotentPoint l = group_mul(group_mul(p1, p2), p3);
            const NilpotentPoint r = group_mul(p1, group_mul(p2, p3));
            CHECK(dist(l, r) < 1e-14);

            // z stays imaginary
            CHECK(group_mul(p1, p2).z.re() == 0.0);
        }
    }
}

TEST_CASE("explicit complex group product") {
    // ((1), 0) * ((e1), 0) = ((1+e1), e1)
    DivisionVector x1 = DivisionVector::zero(Field::Complex, 1);
    x1.entries[0] = DivisionElement::one(Field::Complex);
    DivisionVector x2 = DivisionVector::zero(Field::Complex, 1);
    x2.entries[0] = DivisionElement::basis(Field::Complex, 1);
    const NilpotentPoint p = group_mul(NilpotentPoint(x1, DivisionElement::zero(Field::Complex)),
                                       NilpotentPoint(x2, DivisionElement::zero(Field::Complex)));
    CHECK(p.x.entries[0][0] == 1.0);
    CHECK(p.x.entries[0][1] == 1.0);
    CHECK(p.z[0] == 0.0);
    CHECK(p.z[1] == 1.0);
}

TEST_CASE("nnorm values and scaling covariance") {
    const Field f = Field::Complex;
    const NilpotentPoint zero = NilpotentPoint::identity(f, 1);
    CHECK(nnorm(zero) == 0.0);

    DivisionVector x = DivisionVector::zero(f, 1);
    x.entries[0] = DivisionElement::scalar(f, 2.0);
    CHECK(nnorm(NilpotentPoint(x, DivisionElement::zero(f))) == doctest::Approx(2.0));

    DivisionElement z = DivisionElement::zero(f);
    z[1] = 3.0;
    CHECK(nnorm(NilpotentPoint(DivisionVector::zero(f, 1), z)) ==
          doctest::Approx(std::sqrt(2.0) * std::sqrt(3.0)));

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const NilpotentPoint p = random_point(f, 2, rng);
        const double t = 0.1 + 5.0 * mc_uniform(rng);
        DivisionVector xs = p.x;
        for (auto& e : xs.entries) e *= t;
        DivisionElement zs = p.z;
        zs *= t * t;
        CHECK(nnorm(NilpotentPoint(xs, zs)) == doctest::Approx(t * nnorm(p)).epsilon(1e-12));
    }
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(mul(DivisionElement::one(Field::Real), DivisionElement::one(Field::Complex)),
                    DimensionError);
    DivisionVector a = DivisionVector::zero(Field::Complex, 1);
    DivisionVector b = DivisionVector::zero(Field::Complex, 2);
    CHECK_THROWS_AS(inner(a, b), DimensionError);
    CHECK_THROWS_AS(group_mul(NilpotentPoint(a, DivisionElement::zero(Field::Complex)),
                              NilpotentPoint(b, DivisionElement::zero(Field::Complex))),
                    DimensionError);
}
