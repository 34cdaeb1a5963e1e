#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "qmock/oracle.hpp"
#include "qmock/series.hpp"
#include "qmock/thetafn.hpp"
#include "test_util.hpp"

using namespace qmock;
using testutil::qmono;

TEST_CASE("cyclotomic basics") {
    CycRat i = CycRat::zeta24_pow(6);
    CHECK(i * i == CycRat(-1));
    CHECK(CycRat::zeta24_pow(24) == CycRat(1));
    CHECK(CycRat::zeta24_pow(8) == CycRat::zeta(3));
    CHECK(CycRat::zeta24_pow(4) == CycRat::zeta(6));
    CHECK(CycRat::zeta24_pow(3) == CycRat::zeta(8));

    // zeta_3 + zeta_3^2 = -1
    CycRat z3 = CycRat::zeta(3);
    CHECK(z3 + z3 * z3 == CycRat(-1));
}

TEST_CASE("cyclotomic inverse and division") {
    // (1 - zeta_6) / (1 + zeta_6) against the numeric embedding
    CycRat z6 = CycRat::zeta(6);
    CycRat v = (CycRat(1) - z6) / (CycRat(1) + z6);
    std::complex<double> expect = (1.0 - std::polar(1.0, M_PI / 3)) / (1.0 + std::polar(1.0, M_PI / 3));
    CHECK(std::abs(v.to_complex() - expect) < 1e-12);
    CHECK_THROWS_AS(CycRat().inverse(), DivisionByZero);
}

TEST_CASE("cyclotomic arithmetic matches the numeric embedding") {
    std::mt19937 eng(7);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        CycRat a, b;
        for (int k = 0; k < 8; ++k) {
            a += CycRat(Rational(coord(eng))) * CycRat::zeta24_pow(k);
            b += CycRat(Rational(coord(eng))) * CycRat::zeta24_pow(k);
        }
        CycRat s = a * b + a - b;
        std::complex<double> expect = a.to_complex() * b.to_complex() + a.to_complex() - b.to_complex();
        CHECK(std::abs(s.to_complex() - expect) < 1e-10);
        if (!b.is_zero()) {
            CycRat q = a / b;
            CHECK(std::abs(q.to_complex() - a.to_complex() / b.to_complex()) < 1e-10);
            CHECK(q * b == a);
        }
    }
}

TEST_CASE("monomial series construction") {
    Series s = Series::monomial(qmono(1, 2), 2, 20);
    CHECK(s.coeff(QExp(1, 2)) == CycRat(1));
    CHECK(s.min_exp() == QExp(1, 2));
    CHECK_THROWS_AS(Series::monomial(qmono(1, 3), 2, 20), DenominatorMismatch);

    Series z = Series::monomial(Monomial::make_zero(), 1, 10);
    CHECK(z.terms().empty());

    // -zeta_6 q^3 over D=1
    Monomial m = qmono(3, 1, -1, 4);
    Series t = Series::monomial(m, 1, 10);
    CHECK(t.coeff(QExp(3)) == -CycRat::zeta24_pow(4));
}

TEST_CASE("series ring operations") {
    const int D = 1;
    const long long vt = 30;
    // (1 - q) * sum q^n = 1
    Series geo = geometric_expand(CycRat(1), QExp(1), D, QExp(vt));
    Series one_minus_q = one_minus(CycRat(1), QExp(1), D, Series::kInf);
    Series prod = one_minus_q * geo;
    CHECK(testutil::series_eq(prod, Series::constant(CycRat(1), D, vt), QExp(vt)));

    Series s = geo + one_minus_q;
    CHECK(testutil::series_eq(s + (-s), Series::zero(D, vt), QExp(vt)));
}

TEST_CASE("ring axioms on random sparse series") {
    testutil::Rng rng(11);
    auto random_series = [&](int D, long long vt) {
        Series s(D, vt);
        for (int k = 0; k < 6; ++k)
            s.add_coeff_ticks(rng.pick(0, vt), CycRat(Rational((long)rng.pick(-3, 3))) *
                                                   CycRat::zeta24_pow(rng.pick(0, 23)));
        return s;
    };
    for (int trial = 0; trial < 25; ++trial) {
        Series a = random_series(1, 25), b = random_series(1, 25), c = random_series(1, 25);
        CHECK(testutil::series_eq((a * b) * c, a * (b * c), QExp(20)));
        CHECK(testutil::series_eq(a * (b + c), a * b + a * c, QExp(20)));
        CHECK(testutil::series_eq(a * b, b * a, QExp(25)));
        CHECK(testutil::series_eq(a + b, b + a, QExp(25)));
    }
}

TEST_CASE("multiplication agrees with a naive convolution oracle") {
    testutil::Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        Series a(1, 40), b(1, 40);
        for (int k = 0; k < 5; ++k) {
            a.add_coeff_ticks(rng.pick(0, 30), CycRat(Rational((long)rng.pick(-5, 5))));
            b.add_coeff_ticks(rng.pick(0, 30), CycRat(Rational((long)rng.pick(-5, 5))));
        }
        Series prod = a * b;
        Series naive(1, prod.valid_to());
        for (const auto& [t1, c1] : a.terms())
            for (const auto& [t2, c2] : b.terms()) naive.add_coeff_ticks(t1 + t2, c1 * c2);
        CHECK(testutil::series_eq(prod, naive, QExp(prod.valid_to())));
    }
}

TEST_CASE("inversion") {
    const int D = 1;
    // invert(1 - q) = geometric series
    Series s = one_minus(CycRat(1), QExp(1), D, 40);
    Series inv = s.inverted();
    CHECK(testutil::series_eq(inv, geometric_expand(CycRat(1), QExp(1), D, QExp(40)), QExp(40)));

    // coefficients of 1/(q;q)_inf are partition numbers
    Series euler = pochhammer_infinite(qmono(1), qmono(1), D, QExp(40));
    Series pinv = euler.inverted();
    for (int n = 0; n <= 40; ++n) {
        CHECK(pinv.coeff_ticks(n) == CycRat(Rational((long)oracle::partition_count(n))));
    }
    CHECK(oracle::partition_count(5) == 7);

    // Laurent shift: invert(q^2 (1-q)) = q^{-2} sum q^n
    Series shifted = s.shifted(2);
    Series sinv = shifted.inverted();
    CHECK(sinv.min_exp() == QExp(-2));
    CHECK(testutil::series_eq(sinv * shifted, Series::constant(CycRat(1), D, sinv.valid_to()),
                              QExp(sinv.valid_to())));

    CHECK_THROWS_AS(Series::zero(1, 10).inverted(), ZeroSeries);
}

TEST_CASE("inverse times original is one for random units") {
    testutil::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Series s(1, 50);
        s.add_coeff_ticks(0, CycRat(Rational((long)rng.pick(1, 4))));
        for (int k = 0; k < 6; ++k)
            s.add_coeff_ticks(rng.pick(1, 40), CycRat(Rational((long)rng.pick(-3, 3))));
        Series inv = s.inverted();
        Series prod = s * inv;
        CHECK(testutil::series_eq(prod, Series::constant(CycRat(1), 1, prod.valid_to()),
                                  QExp(prod.valid_to())));
    }
}

TEST_CASE("substitutions") {
    Series p(1, 10);
    p.add_coeff_ticks(0, CycRat(1));
    p.add_coeff_ticks(1, CycRat(1));
    p.add_coeff_ticks(2, CycRat(1));
    Series n = p.subst_q_neg();
    CHECK(n.coeff_ticks(1) == CycRat(-1));
    CHECK(n.coeff_ticks(2) == CycRat(1));

    Series cube = p.subst_q_pow(3);
    CHECK(cube.coeff_ticks(3) == CycRat(1));
    CHECK(cube.coeff_ticks(1).is_zero());

    Series frac = Series::monomial(qmono(1, 2), 2, 10);
    CHECK_THROWS_AS(frac.subst_q_neg(), FractionalExponentNegation);
}

TEST_CASE("equality comparison with validity") {
    Series a = Series::constant(CycRat(1), 1, 45);
    Series b = Series::constant(CycRat(1), 1, 45);
    b.add_coeff_ticks(41, CycRat(1));
    CHECK(testutil::series_eq(a, b, QExp(40))); // beyond comparison window
    auto mm = Series::equal_up_to(a, b, QExp(45));
    CHECK(!mm.equal);
    CHECK(mm.exponent == QExp(41));
    CHECK_THROWS_AS(Series::equal_up_to(a, b, QExp(50)), InsufficientValidity);
}

TEST_CASE("validity is independent of the construction margin") {
    // recompute with a larger truncation margin and compare the window
    for (int extra = 0; extra <= 10; extra += 10) {
        Series a = pochhammer_infinite(qmono(1), qmono(1), 1, QExp(30)).inverted();
        Series b = pochhammer_infinite(qmono(1), qmono(1), 1, QExp(30 + extra)).inverted();
        CHECK(testutil::series_eq(a, b, QExp(30)));
    }
}

TEST_CASE("geometric expansion conventions") {
    // 1/(1 - q^{-1}) = -q - q^2 - ... (rewrite via w^{-1})
    Series g = geometric_expand(CycRat(1), QExp(-1), 1, QExp(10));
    CHECK(g.coeff_ticks(0).is_zero());
    CHECK(g.coeff_ticks(1) == CycRat(-1));
    CHECK(g.coeff_ticks(5) == CycRat(-1));
    // e = 0 branch: 1/(1-(-1)) = 1/2
    Series h = geometric_expand(CycRat(-1), QExp(0), 1, QExp(10));
    CHECK(h.coeff_ticks(0) == CycRat(Rational(1, 2)));
    CHECK_THROWS_AS(geometric_expand(CycRat(1), QExp(0), 1, QExp(10)), PoleError);
}
