#include "qmock/blocks.hpp"

#include <cmath>

namespace qmock {

namespace {

long long ticks_floor(const QExp& e, int D) { return (e.num * D) / e.den; }

// one bilateral Appell-Lerch term: coeff_mono * geom(1/(1 - pole_mono)),
// returns false (without touching acc) when its minimal exponent exceeds ot
bool add_lerch_term(Series& acc, const Monomial& num, const Monomial& pole, int D, long long ot) {
    if (pole.is_one())
        throw PoleError("Appell-Lerch denominator vanishes (non-generic parameters)");
    long long base_t = ticks_floor(num.exponent, D);
    QExp pe = pole.exponent;
    long long extra = 0;
    if (pe < QExp(0)) extra = ticks_floor(-pe, D);
    if (base_t + extra > ot) return false;
    Series g = geometric_expand(pole.coeff(), pe, D, QExp(ot - base_t, D));
    acc += g.shifted(base_t).scaled(num.coeff());
    return true;
}

Series lerch_sum(const Monomial& x, const Monomial& base, const Monomial& z, bool false_variant,
                 int D, const QExp& order) {
    if (x.zero || z.zero) throw PoleError("m(x,q,z) requires nonzero x, z");
    long long ot = ticks_floor(order, D);
    Series acc(D, ot);
    auto term = [&](long long r) -> bool {
        Monomial num = base.pow(r * (r - 1) / 2) * z.pow(r);
        if (r % 2 != 0) num = -num;
        if (false_variant && r < 0) num = -num;
        Monomial pole = base.pow(r - 1) * x * z;
        return add_lerch_term(acc, num, pole, D, ot);
    };
    for (long long r = 0, misses = 0; misses < 4; ++r)
        misses = term(r) ? 0 : misses + 1;
    for (long long r = -1, misses = 0; misses < 4; --r)
        misses = term(r) ? 0 : misses + 1;
    return acc;
}

} // namespace

Series appell_m(const Monomial& x, const Monomial& base, const Monomial& z, int D, const QExp& order) {
    Series sum = lerch_sum(x, base, z, false, D, order);
    Series jz = jacobi_j(z, base, D, order);
    if (jz.terms().empty())
        throw PoleError("m(x,q,z): j(z;q) vanishes (z an integral power of q)");
    return sum * jz.inverted();
}

Series false_m(const Monomial& x, const Monomial& base, const Monomial& z, int D, const QExp& order) {
    return lerch_sum(x, base, z, true, D, order);
}

namespace {

Series quadrant_sum(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& base,
                    int D, long long ot, bool negative_quadrant, bool with_sg, long long slack) {
    // negative quadrant handled via (r,s) -> (-r-1, -s-1)
    Series acc(D, ot);
    QExp be = base.exponent, xe = x.exponent, ye = y.exponent;
    auto exp_of = [&](long long r, long long s) -> QExp {
        long long quad = p.a * (r * (r - 1) / 2) + p.b * r * s + p.c * (s * (s - 1) / 2);
        return be * quad + xe * r + ye * s;
    };
    auto term_mono = [&](long long r, long long s) -> Monomial {
        long long quad = p.a * (r * (r - 1) / 2) + p.b * r * s + p.c * (s * (s - 1) / 2);
        Monomial m = base.pow(quad) * x.pow(r) * y.pow(s);
        if ((r + s) % 2 != 0) m = -m;
        if (negative_quadrant && with_sg) m = -m;
        return m;
    };
    const long long hard_cap = 8 * (long long)(std::sqrt((double)std::max(1LL, ot)) + 4) + 64;
    long long empty_rows = 0;
    for (long long i = 0;; ++i) {
        long long r = negative_quadrant ? -1 - i : i;
        bool row_hit = false;
        long long empty_cells = 0;
        for (long long jj = 0;; ++jj) {
            long long s = negative_quadrant ? -1 - jj : jj;
            QExp e = exp_of(r, s);
            if (ticks_floor(e, D) <= ot) {
                Monomial m = term_mono(r, s);
                acc.add_coeff_ticks(ticks_floor(m.exponent, D), m.coeff());
                row_hit = true;
                empty_cells = 0;
            } else {
                if (++empty_cells >= 2 + slack) break;
            }
            if (jj > hard_cap)
                throw UnboundedEnumeration("Hecke sum: inner index does not leave the truncation window");
        }
        if (row_hit) empty_rows = 0;
        else if (++empty_rows >= 2 + slack) break;
        if (i > hard_cap)
            throw UnboundedEnumeration("Hecke sum: outer index does not leave the truncation window");
    }
    return acc;
}

} // namespace

Series hecke_f(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& base,
               int D, const QExp& order, long long bound_slack) {
    if (x.zero || y.zero) throw PoleError("f_{a,b,c} requires nonzero x, y");
    long long ot = ticks_floor(order, D);
    Series pos = quadrant_sum(p, x, y, base, D, ot, false, true, bound_slack);
    Series neg = quadrant_sum(p, x, y, base, D, ot, true, true, bound_slack);
    return pos + neg;
}

Series false_f(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& base,
               int D, const QExp& order, long long bound_slack) {
    if (x.zero || y.zero) throw PoleError("fbar_{a,b,c} requires nonzero x, y");
    long long ot = ticks_floor(order, D);
    Series pos = quadrant_sum(p, x, y, base, D, ot, false, false, bound_slack);
    Series neg = quadrant_sum(p, x, y, base, D, ot, true, false, bound_slack);
    return pos + neg;
}

static Series h_block_raw(const Monomial& x, const Monomial& base, int D, const QExp& order) {
    if (x.zero) throw PoleError("h(x,q) requires nonzero x");
    long long ot = ticks_floor(order, D);
    Series acc(D, ot);
    auto term = [&](long long n) -> bool {
        Monomial num = base.pow(n * (n + 1));
        if (n % 2 != 0) num = -num;
        Monomial pole = base.pow(n) * x;
        return add_lerch_term(acc, num, pole, D, ot);
    };
    for (long long n = 0, misses = 0; misses < 4; ++n)
        misses = term(n) ? 0 : misses + 1;
    for (long long n = -1, misses = 0; misses < 4; --n)
        misses = term(n) ? 0 : misses + 1;
    Series jq = jacobi_j(base, base.pow(2), D, order);
    return acc * jq.inverted();
}

static Series k_block_raw(const Monomial& x, const Monomial& base, int D, const QExp& order) {
    if (x.zero) throw PoleError("k(x,q) requires nonzero x");
    long long ot = ticks_floor(order, D);
    Series acc(D, ot);
    Monomial x2 = x.pow(2);
    auto term = [&](long long n) -> bool {
        Monomial num = base.pow(n * (2 * n + 1));
        Monomial pole = base.pow(2 * n) * x2;
        return add_lerch_term(acc, num, pole, D, ot);
    };
    for (long long n = 0, misses = 0; misses < 4; ++n)
        misses = term(n) ? 0 : misses + 1;
    for (long long n = -1, misses = 0; misses < 4; --n)
        misses = term(n) ? 0 : misses + 1;
    Series jb = jacobi_j(-base, base.pow(4), D, order);
    Series pref = Series::monomial(x.inverse(), D, Series::kInf);
    return acc * jb.inverted() * pref;
}

Series h_block(const Monomial& x, const Monomial& base, int D, const QExp& order) {
    return ensure_validity([&](const QExp& w) { return h_block_raw(x, base, D, w); }, D, order);
}

Series k_block(const Monomial& x, const Monomial& base, int D, const QExp& order) {
    return ensure_validity([&](const QExp& w) { return k_block_raw(x, base, D, w); }, D, order);
}

} // namespace qmock
