#include "qmock/oracle.hpp"

#include <cmath>
#include <vector>

namespace qmock {
namespace oracle {

namespace {

// everything here is written against the defining displays, sharing no helper
// with the production modules beyond the raw Series container

long long ticks(const QExp& e, int D) { return (e.num * D) / e.den; }

void acc_mono(Series& s, const Monomial& m, int D) {
    if (m.zero) return;
    s.add_coeff_ticks(ticks(m.exponent, D), m.coeff());
}

// 1/(1 - pole) * lead accumulated into s, expanded by |q| < 1
void acc_geom_term(Series& s, const Monomial& lead, const Monomial& pole, int D, long long ot) {
    if (pole.is_one()) throw PoleError("oracle: vanishing denominator");
    long long lt = ticks(lead.exponent, D);
    QExp pe = pole.exponent;
    if (pe.num == 0) {
        CycRat inv = (CycRat(1) - pole.coeff()).inverse();
        s.add_coeff_ticks(lt, lead.coeff() * inv);
        return;
    }
    if (QExp(0) < pe) {
        Monomial term = lead;
        while (ticks(term.exponent, D) <= ot) {
            acc_mono(s, term, D);
            term = term * pole;
        }
    } else {
        Monomial ip = pole.inverse();
        Monomial term = -(lead * ip);
        while (ticks(term.exponent, D) <= ot) {
            acc_mono(s, term, D);
            term = term * ip;
        }
    }
}

} // namespace

Series oracle_hecke(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& base,
                    int D, const QExp& order) {
    long long ot = ticks(order, D);
    // bound: exponent >= min(a,c)/2 * (r^2 + s^2) - linear terms; double the
    // safe radius rather than proving sharpness
    long long R = 2 * (long long)(std::sqrt((double)(2 * std::max(1LL, ot))) + 8);
    Series s(D, ot);
    for (long long r = -R; r <= R; ++r) {
        for (long long ss = -R; ss <= R; ++ss) {
            bool pos = (r >= 0 && ss >= 0), negq = (r < 0 && ss < 0);
            if (!pos && !negq) continue;
            long long quad = p.a * (r * (r - 1) / 2) + p.b * r * ss + p.c * (ss * (ss - 1) / 2);
            Monomial m = base.pow(quad) * x.pow(r) * y.pow(ss);
            if ((r + ss) % 2 != 0) m = -m;
            if (negq) m = -m;
            acc_mono(s, m, D);
        }
    }
    return s;
}

Series oracle_false_hecke(const HeckeParams& p, const Monomial& x, const Monomial& y,
                          const Monomial& base, int D, const QExp& order) {
    long long ot = ticks(order, D);
    long long R = 2 * (long long)(std::sqrt((double)(2 * std::max(1LL, ot))) + 8);
    Series s(D, ot);
    for (long long r = -R; r <= R; ++r) {
        for (long long ss = -R; ss <= R; ++ss) {
            if (!((r >= 0 && ss >= 0) || (r < 0 && ss < 0))) continue;
            long long quad = p.a * (r * (r - 1) / 2) + p.b * r * ss + p.c * (ss * (ss - 1) / 2);
            Monomial m = base.pow(quad) * x.pow(r) * y.pow(ss);
            if ((r + ss) % 2 != 0) m = -m;
            acc_mono(s, m, D);
        }
    }
    return s;
}

namespace {

Series oracle_lerch(const Monomial& x, const Monomial& base, const Monomial& z, bool false_variant,
                    int D, const QExp& order) {
    long long ot = ticks(order, D);
    long long R = 2 * (long long)(std::sqrt((double)(2 * std::max(1LL, ot))) + 8);
    Series s(D, ot);
    for (long long r = -R; r <= R; ++r) {
        Monomial lead = base.pow(r * (r - 1) / 2) * z.pow(r);
        if (r % 2 != 0) lead = -lead;
        if (false_variant && r < 0) lead = -lead;
        acc_geom_term(s, lead, base.pow(r - 1) * x * z, D, ot);
    }
    return s;
}

// independent j(z; base) via the triple product, multiplying polynomially
Series oracle_jacobi(const Monomial& z, const Monomial& base, int D, long long ot) {
    Series r = Series::constant(CycRat(1), D, ot);
    auto mul_factor = [&](const Monomial& f) {
        Series nf(D, ot);
        nf.add_coeff_ticks(0, CycRat(1));
        if (!f.zero) nf.add_coeff_ticks(ticks(f.exponent, D), -f.coeff());
        r *= nf;
    };
    long long bt = ticks(base.exponent, D);
    if (bt <= 0) throw PoleError("oracle: jacobi base must have positive exponent");
    long long zt = ticks(z.exponent, D);
    long long K = (ot + std::abs(zt)) / bt + 2;
    for (long long k = 0; k <= K; ++k) mul_factor(z * base.pow(k));
    for (long long k = 1; k <= K; ++k) mul_factor(base.pow(k) / z);
    for (long long k = 1; k * bt <= ot; ++k) mul_factor(base.pow(k));
    return r;
}

} // namespace

Series oracle_m(const Monomial& x, const Monomial& base, const Monomial& z, int D, const QExp& order) {
    long long ot = ticks(order, D);
    Series sum = oracle_lerch(x, base, z, false, D, order);
    Series j = oracle_jacobi(z, base, D, ot);
    if (j.terms().empty()) throw PoleError("oracle: j(z;q) vanishes");
    return sum * j.inverted();
}

Series oracle_false_m(const Monomial& x, const Monomial& base, const Monomial& z, int D, const QExp& order) {
    return oracle_lerch(x, base, z, true, D, order);
}

Series oracle_eulerian(const std::string& id, int D, const QExp& order) {
    long long ot = ticks(order, D);
    // direct term-by-term summation with per-term polynomial inversion
    auto poch = [&](const Monomial& x0, const Monomial& b, long long n) {
        Series r = Series::constant(CycRat(1), D, Series::kInf);
        Monomial f = x0;
        for (long long k = 0; k < n; ++k) {
            Series nf(D, Series::kInf);
            nf.add_coeff_ticks(0, CycRat(1));
            nf.add_coeff_ticks(ticks(f.exponent, D), -f.coeff());
            r *= nf;
            f = f * b;
        }
        return r;
    };
    auto qm = [&](long long num, long long den = 1) { return Monomial::q_pow(QExp(num, den)); };
    Series acc(D, ot);
    if (id == "f3") {
        for (long long n = 0; n * n <= ot; ++n) {
            Series den = poch(-qm(1), qm(1), n);
            den = (Series(D, ot) + den * den).inverted();
            acc += (Series(D, ot) + Series::monomial(qm(n * n), D, Series::kInf)) * den;
        }
        return acc;
    }
    if (id == "mu2_companion") {
        for (long long n = 0; n * (n - 1) / 2 <= ot; ++n) {
            Series den = Series(D, ot) + poch(-qm(1), qm(1), n);
            acc += (Series(D, ot) + Series::monomial(qm(n * (n - 1) / 2), D, Series::kInf)) *
                   den.inverted();
        }
        return acc;
    }
    if (id == "sigma_ADH") {
        for (long long n = 0; n * (n + 1) / 2 <= ot; ++n) {
            Series den = Series(D, ot) + poch(-qm(1), qm(1), n);
            acc += (Series(D, ot) + Series::monomial(qm(n * (n + 1) / 2), D, Series::kInf)) *
                   den.inverted();
        }
        return acc;
    }
    if (id == "nu3") {
        for (long long n = 0; n * (n + 1) <= ot; ++n) {
            Series den = Series(D, ot) + poch(-qm(1), qm(2), n + 1);
            acc += (Series(D, ot) + Series::monomial(qm(n * (n + 1)), D, Series::kInf)) *
                   den.inverted();
        }
        return acc;
    }
    if (id == "omega3") {
        for (long long n = 0; 2 * n * (n + 1) <= ot; ++n) {
            Series den = poch(qm(1), qm(2), n + 1);
            den = (Series(D, ot) + den * den).inverted();
            acc += (Series(D, ot) + Series::monomial(qm(2 * n * (n + 1)), D, Series::kInf)) * den;
        }
        return acc;
    }
    if (id == "F1_5") {
        for (long long n = 0; 2 * n * (n + 1) <= ot; ++n) {
            Series den = Series(D, ot) + poch(qm(1), qm(2), n + 1);
            acc += (Series(D, ot) + Series::monomial(qm(2 * n * (n + 1)), D, Series::kInf)) *
                   den.inverted();
        }
        return acc;
    }
    throw EvalError("oracle_eulerian: no oracle for " + id);
}

long long partition_count(int n) {
    std::vector<long long> p(n + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int v = part; v <= n; ++v) p[v] += p[v - part];
    return p[n];
}

} // namespace oracle
} // namespace qmock
