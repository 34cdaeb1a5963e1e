#include "qmock/conversion.hpp"

#include <numeric>

namespace qmock {

namespace {

long long binom2(long long u) { return u * (u - 1) / 2; }

Series mono_series(const Monomial& m, int D) { return Series::monomial(m, D, Series::kInf); }

} // namespace

static Series g_abc_raw(long long a, long long b, long long c, const Monomial& x, const Monomial& y,
                        const Monomial& base, const Monomial& z1, const Monomial& z0, int D, const QExp& order) {
    long long disc = b * b - a * c;
    if (disc == 0) throw NonGenericParameters("g_{a,b,c} needs b^2 != ac");
    Series acc(D, (order.num * D) / order.den);
    for (long long t = 0; t < a; ++t) {
        Monomial pref = (-y).pow(t) * base.pow(c * binom2(t));
        Series jt = jacobi_j(base.pow(b * t) * x, base.pow(a), D, order);
        Monomial marg = -(base.pow(a * binom2(b + 1) - c * binom2(a + 1) - t * disc) *
                          (-y).pow(a) / (-x).pow(b));
        Series mt = appell_m(marg, base.pow(a * disc), z0, D, order);
        acc += mono_series(pref, D) * jt * mt;
    }
    for (long long t = 0; t < c; ++t) {
        Monomial pref = (-x).pow(t) * base.pow(a * binom2(t));
        Series jt = jacobi_j(base.pow(b * t) * y, base.pow(c), D, order);
        Monomial marg = -(base.pow(c * binom2(b + 1) - a * binom2(c + 1) - t * disc) *
                          (-x).pow(c) / (-y).pow(b));
        Series mt = appell_m(marg, base.pow(c * disc), z1, D, order);
        acc += mono_series(pref, D) * jt * mt;
    }
    return acc;
}

static Series phi_np_raw(long long n, long long p, const Monomial& x, const Monomial& y, const Monomial& base,
                         int D, const QExp& order) {
    if (std::gcd(n, p) != 1) throw NonGenericParameters("Phi_{n,p} needs gcd(n,p)=1");
    if (n % 2 == 0) throw NonGenericParameters("Phi_{n,p} implemented for odd n");
    long long ot = (order.num * D) / order.den;
    // prefactor J_{p^2(2n+p)}^3 / Jbar_{0, np(2n+p)}
    Monomial qm = base;
    Series pref = pochhammer_infinite(qm.pow(p * p * (2 * n + p)), qm.pow(p * p * (2 * n + p)), D, order).pow(3);
    Series jbar = jacobi_j(-Monomial::one(), qm.pow(n * p * (2 * n + p)), D, order);
    pref *= jbar.inverted();
    Series acc(D, ot);
    const long long h1 = (n - 1) / 2, h2 = (n + 1) / 2;
    for (long long rs = 0; rs < p; ++rs) {
        for (long long ss = 0; ss < p; ++ss) {
            // n odd: r = r*, s = s* (the fractional part vanishes)
            long long r = rs, s = ss;
            long long u = r - h1, v = s + h2;
            Monomial m = qm.pow(n * binom2(u) + (n + p) * u * v + n * binom2(v));
            m = m * (-x).pow(u) * (-y).pow(v);
            Series t = mono_series(m, D);
            t *= jacobi_j(-(qm.pow(n * p * (s - r)) * x.pow(n) / y.pow(n)), qm.pow(n * p * p), D, order);
            t *= jacobi_j(qm.pow(p * (2 * n + p) * (r + s) + p * (n + p)) * x.pow(p) * y.pow(p),
                          qm.pow(p * p * (2 * n + p)), D, order);
            Series d1 = jacobi_j(qm.pow(p * (2 * n + p) * r + p * (n + p) / 2) * (-y).pow(n + p) / (-x).pow(n),
                                 qm.pow(p * p * (2 * n + p)), D, order);
            Series d2 = jacobi_j(qm.pow(p * (2 * n + p) * s + p * (n + p) / 2) * (-x).pow(n + p) / (-y).pow(n),
                                 qm.pow(p * p * (2 * n + p)), D, order);
            if (d1.terms().empty() || d2.terms().empty())
                throw PoleError("Phi_{n,p}: denominator theta vanishes");
            t *= d1.inverted();
            t *= d2.inverted();
            acc += t;
        }
    }
    return pref * acc;
}

static Series theta_n2_raw(long long n, const Monomial& x, const Monomial& y, const Monomial& base,
                           int D, const QExp& order) {
    if (n % 2 == 0 || n < 1) throw NonGenericParameters("Theta_{n,2} needs odd n >= 1");
    Monomial qm = base;
    const long long n1 = 4 * (n + 1);
    Series num = mono_series(y.pow((n + 1) / 2), D);
    num *= jacobi_j(qm.pow(2 * n), qm.pow(4 * n), D, order);            // J_{2n,4n}
    num *= jacobi_j(qm.pow(n1), qm.pow(2 * n1), D, order);              // J_{4(n+1),8(n+1)}
    num *= jacobi_j(y / x, qm.pow(n1), D, order);
    num *= jacobi_j(qm.pow(n + 2) * x * y, qm.pow(n1), D, order);
    num *= jacobi_j(qm.pow(2 * n) / (x.pow(2) * y.pow(2)), qm.pow(2 * n1), D, order);
    Series den = mono_series(qm.pow((n * n - 3) / 2) * x.pow((n - 3) / 2), D);
    den *= jacobi_j(y.pow(n) / x.pow(n), qm.pow(4 * n * (n + 1)), D, order);
    den *= jacobi_j(-(qm.pow(n + 2) * x.pow(2)), qm.pow(n1), D, order);
    den *= jacobi_j(-(qm.pow(n + 2) * y.pow(2)), qm.pow(n1), D, order);
    if (den.terms().empty()) throw PoleError("Theta_{n,2}: denominator theta vanishes");
    return num * den.inverted();
}

Series g_abc(long long a, long long b, long long c, const Monomial& x, const Monomial& y,
             const Monomial& base, const Monomial& z1, const Monomial& z0, int D, const QExp& order) {
    return ensure_validity(
        [&](const QExp& w) { return g_abc_raw(a, b, c, x, y, base, z1, z0, D, w); }, D, order);
}

Series phi_np(long long n, long long p, const Monomial& x, const Monomial& y, const Monomial& base,
              int D, const QExp& order) {
    return ensure_validity(
        [&](const QExp& w) { return phi_np_raw(n, p, x, y, base, D, w); }, D, order);
}

Series theta_n2(long long n, const Monomial& x, const Monomial& y, const Monomial& base,
                int D, const QExp& order) {
    return ensure_validity(
        [&](const QExp& w) { return theta_n2_raw(n, x, y, base, D, w); }, D, order);
}

ConversionReport fm_identity_coprime(long long n, long long p, const Monomial& x, const Monomial& y,
                                     const Monomial& base, int D, const QExp& order) {
    Series lhs = hecke_f({n, n + p, n}, x, y, base, D, order);
    Monomial minus1;
    minus1.sign = -1;
    Series rhs = g_abc(n, n + p, n, x, y, base, minus1, minus1, D, order) +
                 phi_np(n, p, x, y, base, D, order);
    ConversionReport rep;
    rep.order = order;
    rep.mismatch = Series::equal_up_to(lhs, rhs, order);
    rep.pass = rep.mismatch.equal;
    return rep;
}

ConversionReport fm_identity_odd(long long n, const Monomial& x, const Monomial& y,
                                 const Monomial& base, int D, const QExp& order) {
    Monomial z1 = y.pow(n) / x.pow(n);
    Monomial z0 = x.pow(n) / y.pow(n);
    Series lhs = hecke_f({n, n + 2, n}, x, y, base, D, order);
    Series rhs = g_abc(n, n + 2, n, x, y, base, z1, z0, D, order) -
                 theta_n2(n, x, y, base, D, order);
    ConversionReport rep;
    rep.order = order;
    rep.mismatch = Series::equal_up_to(lhs, rhs, order);
    rep.pass = rep.mismatch.equal;
    return rep;
}

} // namespace qmock
