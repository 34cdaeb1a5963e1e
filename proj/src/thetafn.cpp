#include "qmock/thetafn.hpp"

namespace qmock {

Series pochhammer_finite(const Monomial& x, long long n, const Monomial& base, int D, long long vt) {
    if (n < 0) throw EvalError("negative Pochhammer length");
    Series r = Series::constant(CycRat(1), D, vt);
    if (x.zero) return r;
    Monomial f = x;
    for (long long k = 0; k < n; ++k) {
        r *= one_minus(f.coeff(), f.exponent, D, Series::kInf);
        f = f * base;
    }
    return r;
}

Series pochdual(const Monomial& x, long long n, const Monomial& base, int D, long long vt) {
    if (n < 0) throw EvalError("negative Pochhammer length");
    Series r = Series::constant(CycRat(1), D, vt);
    Monomial f = base;
    for (long long k = 1; k <= n; ++k) {
        Series factor = Series::monomial(-f, D, Series::kInf);
        if (!x.zero) factor += Series::monomial(x, D, Series::kInf);
        r *= factor;
        f = f * base;
    }
    return r;
}

// total weight of the Laurent (negative-exponent) factors of (x;base)_inf
static long long poch_inf_deficit(const Monomial& x, const Monomial& base, int D) {
    if (x.zero) return 0;
    long long d = 0;
    Monomial f = x;
    while (true) {
        long long ft = (f.exponent.num * D) / f.exponent.den;
        if (ft >= 0) break;
        d += -ft;
        f = f * base;
    }
    return d;
}

Series pochhammer_infinite(const Monomial& x, const Monomial& base, int D, const QExp& order) {
    long long ot = (order.num * D) / order.den;
    if (!x.zero) {
        QExp be = base.exponent;
        if (!(QExp(0) < be))
            throw NonConvergentProduct("infinite Pochhammer base must have positive q-exponent");
        ot += poch_inf_deficit(x, base, D); // widen so validity still reaches `order`
    }
    Series r = Series::constant(CycRat(1), D, ot);
    if (x.zero) return r;
    Monomial f = x;
    while (true) {
        long long ft = (f.exponent.num * D) / f.exponent.den;
        if (ft > ot) break;
        r *= one_minus(f.coeff(), f.exponent, D, Series::kInf);
        f = f * base;
    }
    return r;
}

Series jacobi_j(const Monomial& x, const Monomial& base, int D, const QExp& order, JacobiForm form) {
    if (x.zero) throw PoleError("j(0; q) is undefined");
    long long ot = (order.num * D) / order.den;
    if (form == JacobiForm::Product) {
        long long deficit = poch_inf_deficit(x, base, D) +
                            poch_inf_deficit(base * x.inverse(), base, D);
        QExp wide(ot + deficit, D);
        Series r = pochhammer_infinite(x, base, D, wide);
        r *= pochhammer_infinite(base * x.inverse(), base, D, wide);
        r *= pochhammer_infinite(base, base, D, wide);
        return r;
    }
    // bilateral sum: sum_n (-1)^n base^{n(n-1)/2} x^n
    Series r(D, ot);
    auto add_term = [&](long long n) -> bool {
        Monomial t = base.pow(n * (n - 1) / 2) * x.pow(n);
        if (n % 2 != 0) t = -t;
        long long tt = (t.exponent.num * D) / t.exponent.den;
        if (tt > ot) return false;
        r.add_coeff_ticks(tt, t.coeff());
        return true;
    };
    for (long long n = 0, misses = 0; misses < 4; ++n)
        misses = add_term(n) ? 0 : misses + 1;
    for (long long n = -1, misses = 0; misses < 4; --n)
        misses = add_term(n) ? 0 : misses + 1;
    return r;
}

Series theta_shorthand(const ThetaRef& ref, int D, const QExp& order) {
    switch (ref.kind) {
        case ThetaRef::J:
            return jacobi_j(Monomial::q_pow(ref.a), Monomial::q_pow(ref.m), D, order);
        case ThetaRef::Jbar:
            return jacobi_j(-Monomial::q_pow(ref.a), Monomial::q_pow(ref.m), D, order);
        case ThetaRef::Jm:
            return pochhammer_infinite(Monomial::q_pow(ref.m), Monomial::q_pow(ref.m), D, order);
    }
    throw EvalError("bad ThetaRef");
}

Series reciprocal_theta(const Monomial& z, const Monomial& base, int D, const QExp& order) {
    if (z.zero) throw PoleError("reciprocal theta at z=0");
    long long ot = (order.num * D) / order.den;
    Series r(D, ot);
    auto add_term = [&](long long n) -> bool {
        // (-1)^n base^{n(n+1)/2} / (1 - base^n z)
        Monomial num = base.pow(n * (n + 1) / 2);
        if (n % 2 != 0) num = -num;
        Monomial den = base.pow(n) * z;
        if (den.is_one()) throw PoleError("reciprocal theta: z is an integral power of the base");
        long long base_t = (num.exponent.num * D) / num.exponent.den;
        QExp de = den.exponent;
        long long extra = 0;
        if (de < QExp(0)) extra = (-de.num) * (D / de.den); // expansion starts at q^{-e}
        if (base_t + extra > ot) return false;
        Series g = geometric_expand(den.coeff(), de, D, QExp(ot - base_t, D));
        r += g.shifted(base_t).scaled(num.coeff());
        return true;
    };
    for (long long n = 0, misses = 0; misses < 4; ++n)
        misses = add_term(n) ? 0 : misses + 1;
    for (long long n = -1, misses = 0; misses < 4; --n)
        misses = add_term(n) ? 0 : misses + 1;
    return r;
}

} // namespace qmock
