#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmock/thetafn.hpp"
#include "test_util.hpp"

using namespace qmock;
using testutil::qmono;
using testutil::series_eq;

namespace {

Series jj(const QExp& a, const QExp& m, int D, const QExp& order) {
    return theta_shorthand({ThetaRef::J, a, m}, D, order);
}
Series jjbar(const QExp& a, const QExp& m, int D, const QExp& order) {
    return theta_shorthand({ThetaRef::Jbar, a, m}, D, order);
}
Series jm(const QExp& m, int D, const QExp& order) {
    return theta_shorthand({ThetaRef::Jm, QExp(0), m}, D, order);
}

} // namespace

TEST_CASE("finite Pochhammer products") {
    CHECK(series_eq(pochhammer_finite(qmono(7), 0, qmono(1), 1, 20),
                    Series::constant(CycRat(1), 1, 20), QExp(20)));
    // (q;q)_3 = (1-q)(1-q^2)(1-q^3)
    Series p = pochhammer_finite(qmono(1), 3, qmono(1), 1, 20);
    Series expect = one_minus(CycRat(1), QExp(1), 1, 20) * one_minus(CycRat(1), QExp(2), 1, 20) *
                    one_minus(CycRat(1), QExp(3), 1, 20);
    CHECK(series_eq(p, expect, QExp(9)));
    // (-q;q^2)_2 against a direct product
    Series p2 = pochhammer_finite(qmono(1, 1, -1), 2, qmono(2), 1, 20);
    Series e2 = one_minus(CycRat(-1), QExp(1), 1, 20) * one_minus(CycRat(-1), QExp(3), 1, 20);
    CHECK(series_eq(p2, e2, QExp(8)));
}

TEST_CASE("pochdual") {
    // pochdual(0, 3) = -q^6
    Series p = pochdual(Monomial::make_zero(), 3, qmono(1), 1, 30);
    Series e(1, 30);
    e.add_coeff_ticks(6, CycRat(-1));
    CHECK(series_eq(p, e, QExp(30)));
    // pochdual(1, 2) = (1-q)(1-q^2)
    Series p2 = pochdual(Monomial::one(), 2, qmono(1), 1, 30);
    Series e2 = one_minus(CycRat(1), QExp(1), 1, 30) * one_minus(CycRat(1), QExp(2), 1, 30);
    CHECK(series_eq(p2, e2, QExp(30)));
    // pochdual(-q, 3) = (q/a;q)_3 a^3 at a = -q
    Monomial a = qmono(1, 1, -1);
    Series lhs = pochdual(a, 3, qmono(1), 1, 30);
    Series rhs = pochhammer_finite(qmono(1) * a.inverse(), 3, qmono(1), 1, 30) *
                 Series::monomial(a.pow(3), 1, Series::kInf);
    CHECK(series_eq(lhs, rhs, QExp(20)));
}

TEST_CASE("infinite Pochhammer") {
    // (q;q)_inf is supported on generalized pentagonal numbers with signs
    Series e = pochhammer_infinite(qmono(1), qmono(1), 1, QExp(15));
    Series expect(1, 15);
    expect.add_coeff_ticks(0, CycRat(1));
    for (long long k = 1;; ++k) {
        long long p1 = k * (3 * k - 1) / 2, p2 = k * (3 * k + 1) / 2;
        if (p1 > 15 && p2 > 15) break;
        CycRat sign = (k % 2 != 0) ? CycRat(-1) : CycRat(1);
        if (p1 <= 15) expect.add_coeff_ticks(p1, sign);
        if (p2 <= 15) expect.add_coeff_ticks(p2, sign);
    }
    CHECK(series_eq(e, expect, QExp(15)));

    CHECK(series_eq(pochhammer_infinite(Monomial::make_zero(), qmono(1), 1, QExp(10)),
                    Series::constant(CycRat(1), 1, 10), QExp(10)));
    CHECK_THROWS_AS(pochhammer_infinite(qmono(1), qmono(0), 1, QExp(10)), NonConvergentProduct);
}

TEST_CASE("jacobi triple product: product equals bilateral sum") {
    CHECK(jacobi_j(Monomial::one(), qmono(1), 1, QExp(25)).terms().empty()); // j(1;q) = 0

    Series prod = jacobi_j(qmono(3, 1, -1), qmono(8), 1, QExp(50), JacobiForm::Product);
    Series sum = jacobi_j(qmono(3, 1, -1), qmono(8), 1, QExp(50), JacobiForm::Sum);
    CHECK(series_eq(prod, sum, QExp(50)));

    testutil::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Monomial x = rng.monomial(true, 0, 6);
        Monomial base = qmono(rng.pick(1, 5));
        Series p = jacobi_j(x, base, 1, QExp(40), JacobiForm::Product);
        Series s = jacobi_j(x, base, 1, QExp(40), JacobiForm::Sum);
        CHECK(series_eq(p, s, QExp(40)));
    }
}

TEST_CASE("j functional equations") {
    testutil::Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        Monomial x = rng.monomial(true, 1, 4);
        Monomial base = qmono(1);
        QExp ord(40);
        Series jx = jacobi_j(x, base, 1, QExp(60));
        for (long long n = -3; n <= 3; ++n) {
            // j(q^n x;q) = (-1)^n q^{-n(n-1)/2} x^{-n} j(x;q)
            Series lhs = jacobi_j(base.pow(n) * x, base, 1, QExp(60));
            Monomial pref = x.pow(-n) * base.pow(-n * (n - 1) / 2);
            if (n % 2 != 0) pref = -pref;
            Series rhs = jx * Series::monomial(pref, 1, Series::kInf);
            CHECK(series_eq(lhs, rhs, ord));
        }
        // j(x;q) = j(q/x;q) = -x j(x^{-1};q)
        Series alt1 = jacobi_j(base / x, base, 1, QExp(60));
        Series alt2 = -(jacobi_j(x.inverse(), base, 1, QExp(60)) * Series::monomial(x, 1, Series::kInf));
        CHECK(series_eq(jx, alt1, ord));
        CHECK(series_eq(jx, alt2, ord));
    }
}

TEST_CASE("the J shorthand table") {
    const QExp ord(60);
    const int D = 1;
    Series J1 = jm(QExp(1), D, ord), J2 = jm(QExp(2), D, ord), J3 = jm(QExp(3), D, ord);
    Series J4 = jm(QExp(4), D, ord), J6 = jm(QExp(6), D, ord), J12 = jm(QExp(12), D, ord);

    // Jbar_{0,1} = 2 Jbar_{1,4} = 2 J_2^2/J_1
    CHECK(series_eq(jjbar(QExp(0), QExp(1), D, ord), jjbar(QExp(1), QExp(4), D, ord).scaled(CycRat(2)), ord));
    CHECK(series_eq(jjbar(QExp(0), QExp(1), D, ord) * J1, (J2 * J2).scaled(CycRat(2)), ord));
    // Jbar_{1,2} = J_2^5/(J_1^2 J_4^2)
    CHECK(series_eq(jjbar(QExp(1), QExp(2), D, ord) * J1 * J1 * J4 * J4, J2.pow(5), ord));
    // J_{1,2} = J_1^2/J_2
    CHECK(series_eq(jj(QExp(1), QExp(2), D, ord) * J2, J1 * J1, ord));
    // Jbar_{1,3} = J_2 J_3^2/(J_1 J_6)
    CHECK(series_eq(jjbar(QExp(1), QExp(3), D, ord) * J1 * J6, J2 * J3 * J3, ord));
    // J_{1,4} = J_1 J_4/J_2
    CHECK(series_eq(jj(QExp(1), QExp(4), D, ord) * J2, J1 * J4, ord));
    // J_{1,6} = J_1 J_6^2/(J_2 J_3)
    CHECK(series_eq(jj(QExp(1), QExp(6), D, ord) * J2 * J3, J1 * J6 * J6, ord));
    // Jbar_{1,6} = J_2^2 J_3 J_12/(J_1 J_4 J_6)
    CHECK(series_eq(jjbar(QExp(1), QExp(6), D, ord) * J1 * J4 * J6, J2 * J2 * J3 * J12, ord));
}

TEST_CASE("reciprocal theta expansion") {
    const QExp ord(40);
    // z = -1: sum equals J_1^3 / j(-1;q)
    Series lhs = reciprocal_theta(-Monomial::one(), qmono(1), 1, ord);
    Series j1 = jm(QExp(1), 1, ord);
    Series rhs = j1.pow(3) * jacobi_j(-Monomial::one(), qmono(1), 1, ord).inverted();
    CHECK(series_eq(lhs, rhs, QExp(30)));

    // q -> q^2, z = -q: equals J_1^2 J_4^2 / J_2^2
    Series lhs2 = reciprocal_theta(qmono(1, 1, -1), qmono(2), 1, ord);
    Series rhs2 = jm(QExp(1), 1, ord).pow(2) * jm(QExp(4), 1, ord).pow(2) *
                  jm(QExp(2), 1, ord).pow(2).inverted();
    CHECK(series_eq(lhs2, rhs2, QExp(30)));

    CHECK_THROWS_AS(reciprocal_theta(qmono(1), qmono(1), 1, ord), PoleError);
}
