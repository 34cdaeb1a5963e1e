#include "qmock/hypergeom.hpp"

#include <functional>
#include <vector>

#include "qmock/thetafn.hpp"

namespace qmock {

namespace {

long long ticks_floor(const QExp& e, int D) { return (e.num * D) / e.den; }

Series mono_series(const Monomial& m, int D) { return Series::monomial(m, D, Series::kInf); }

// multiply acc by 1/(1 - f) for a monomial factor f; PoleError if f == 1
Series div_one_minus(const Series& acc, const Monomial& f, int D, long long ot) {
    if (f.zero) return acc;
    if (f.is_one()) throw PoleError("vanishing Pochhammer factor in a denominator");
    return acc * geometric_expand(f.coeff(), f.exponent, D, QExp(ot, D));
}

} // namespace

Series phi_eval(const PhiSpec& spec, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    const long long r = (long long)spec.uppers.size();
    const long long s = (long long)spec.lowers.size();
    const long long corr = 1 + s - r;
    Series acc(D, ot);
    long long misses = 0;
    for (long long n = 0;; ++n) {
        if (spec.n_terminate && n > *spec.n_terminate) break;
        if (!spec.n_terminate && misses >= 4) break;
        // numerator: prod_i (a_i;q)_n, exact Laurent polynomial ((0;q)_n = 1)
        Series num = Series::constant(CycRat(1), D, Series::kInf);
        for (const auto& a : spec.uppers)
            num *= pochhammer_finite(a, n, spec.base, D, Series::kInf);
        if (num.terms().empty()) break; // a vanishing upper terminates the sum for good
        Monomial w = spec.argument.pow(n);
        if (corr != 0) {
            Monomial minus_one;
            minus_one.sign = -1;
            w = w * (minus_one.pow(n) * spec.base.pow(n * (n - 1) / 2)).pow(corr);
        }
        if (w.zero) break; // zero argument: only n = 0 contributes
        long long wt = (w.exponent.num * D) / w.exponent.den;
        long long m = num.min_exp_ticks() + wt;
        long long window = ot + std::max(0LL, -m);
        Series term = num * mono_series(w, D);
        term = Series(D, window) + term;
        for (long long k = 1; k <= n; ++k)
            term = div_one_minus(term, spec.base.pow(k), D, window);
        for (const auto& b : spec.lowers) {
            if (b.zero) continue; // (0;q)_n = 1
            for (long long k = 0; k < n; ++k)
                term = div_one_minus(term, b * spec.base.pow(k), D, window);
        }
        if (n > 0 && term.min_exp_ticks() > ot) ++misses; else misses = 0;
        acc += term;
        if (n > 100000) throw NonTruncatable("hypergeometric series does not truncate");
    }
    return acc;
}

Series alpha_ratio(const Monomial& alpha, long long j, const Monomial& base, int D, long long vt) {
    if (j == 0) return Series::constant(CycRat(1), D, vt);
    Monomial a2j = alpha * base.pow(2 * j);
    Series r = one_minus(a2j.coeff(), a2j.exponent, D, vt);
    return r * pochhammer_finite(alpha * base, j - 1, base, D, vt);
}

namespace closed_form {

namespace {

// prod over a list of monomials of (x;q)_j, as an exact polynomial
Series poch_list(std::initializer_list<Monomial> xs, long long j, const Monomial& base, int D) {
    Series r = Series::constant(CycRat(1), D, Series::kInf);
    for (const auto& x : xs) r *= pochhammer_finite(x, j, base, D, Series::kInf);
    return r;
}

// collect the factors of (x;q)_j for each x into `out`
void den_factors(std::vector<Monomial>& out, std::initializer_list<Monomial> xs, long long j,
                 const Monomial& base) {
    for (const auto& x : xs) {
        if (x.zero) continue;
        for (long long k = 0; k < j; ++k) out.push_back(x * base.pow(k));
    }
}

// exact_part / prod (1 - f): the geometric windows are widened by the Laurent
// deficit of the numerator so the result stays valid through `ot`
Series assemble(const Series& exact_part, const std::vector<Monomial>& dens, int D, long long ot) {
    if (exact_part.terms().empty()) return Series(D, Series::kInf);
    long long deficit = std::max(0LL, -exact_part.min_exp_ticks());
    long long W = ot + deficit;
    Series r = Series(D, W) + exact_part;
    for (const auto& f : dens) r = div_one_minus(r, f, D, W);
    return r;
}

} // namespace

Series sears32(long long n, const Monomial& alpha, const Monomial& beta, const Monomial& c,
               const Monomial& d, const Monomial& base, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    PhiSpec rhs;
    rhs.uppers = {base.pow(-n), alpha * base.pow(n), d / beta};
    rhs.lowers = {d, base * alpha / c};
    rhs.base = base;
    rhs.argument = base * beta / c;
    rhs.n_terminate = n;
    Series exact = Series::monomial((-c).pow(n) * base.pow(n * (n - 1) / 2), D, Series::kInf);
    exact *= pochhammer_finite(base * alpha / c, n, base, D, Series::kInf);
    std::vector<Monomial> dens;
    den_factors(dens, {c}, n, base);
    Series probe = phi_eval(rhs, D, QExp(ot, D));
    long long mphi = std::min(0LL, probe.min_exp_ticks());
    Series pref = assemble(exact, dens, D, ot - mphi);
    long long mpref = std::min(0LL, pref.min_exp_ticks());
    Series phi = (mpref == 0) ? probe : phi_eval(rhs, D, QExp(ot - mpref, D));
    return pref * phi;
}

Series hyper2(long long n, const Monomial& b, const Monomial& c, const Monomial& z,
              const Monomial& base, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    PhiSpec rhs;
    rhs.uppers = {base.pow(-n), b};
    rhs.lowers = {c};
    rhs.base = base;
    rhs.argument = z;
    rhs.n_terminate = n;
    Series exact = pochhammer_finite(c, n, base, D, Series::kInf);
    std::vector<Monomial> dens;
    den_factors(dens, {c / b}, n, base);
    Series probe = phi_eval(rhs, D, QExp(ot, D));
    long long mphi = std::min(0LL, probe.min_exp_ticks());
    Series pref = assemble(exact, dens, D, ot - mphi);
    long long mpref = std::min(0LL, pref.min_exp_ticks());
    Series phi = (mpref == 0) ? probe : phi_eval(rhs, D, QExp(ot - mpref, D));
    return pref * phi;
}

namespace {

// shared shape: sum_{j=0}^{n} alpha_ratio(j) * prod(upp;q)_j * w(j) * pref_exact
//               / [(q;q)_j prod(low;q)_j pref_dens],
// assembled per term so each window absorbs its own Laurent deficit
Series alpha_j_sum(long long n, const Monomial& alpha, std::initializer_list<Monomial> upp,
                   std::initializer_list<Monomial> low, const Monomial& base, int D, long long ot,
                   const std::function<Monomial(long long)>& wj, const Series& pref_exact,
                   const std::vector<Monomial>& pref_dens) {
    Series acc(D, Series::kInf);
    for (long long j = 0; j <= n; ++j) {
        Series exact = alpha_ratio(alpha, j, base, D, Series::kInf);
        if (exact.terms().empty()) break;
        exact *= poch_list(upp, j, base, D);
        exact *= Series::monomial(wj(j), D, Series::kInf);
        exact *= pref_exact;
        std::vector<Monomial> dens = pref_dens;
        den_factors(dens, {base}, j, base);
        den_factors(dens, low, j, base);
        acc += assemble(exact, dens, D, ot);
    }
    return acc;
}

} // namespace

Series liu313(long long n, const Monomial& alpha, const Monomial& c, const Monomial& d,
              const Monomial& base, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series pref = Series::monomial((-alpha).pow(n) * q.pow(n * (n + 1) / 2), D, Series::kInf) *
                  pochhammer_finite(q, n, q, D, Series::kInf);
    std::vector<Monomial> pdens;
    den_factors(pdens, {alpha * q}, n, q);
    return alpha_j_sum(n, alpha, {q / c, q / d}, {alpha * c, alpha * d}, base, D, ot,
                       [&](long long j) {
                           Monomial w = (c * d / q).pow(j) * q.pow(-j * (j + 1) / 2);
                           return (j % 2 != 0) ? -w : w;
                       },
                       pref, pdens);
}

Series meq1(long long n, const Monomial& alpha, const Monomial& c, const Monomial& d,
            const Monomial& base, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series pref = Series::monomial((q / c).pow(n), D, Series::kInf) *
                  poch_list({alpha * c, q}, n, q, D);
    std::vector<Monomial> pdens;
    den_factors(pdens, {q.pow(2) / c, alpha * q}, n, q);
    return alpha_j_sum(n, alpha, {q / c, q / d}, {alpha * c, alpha * d}, base, D, ot,
                       [&](long long j) {
                           Monomial w = (c * d / q).pow(j) * q.pow(-j * (j + 1) / 2);
                           return (j % 2 != 0) ? -w : w;
                       },
                       pref, pdens);
}

Series lem_limit(long long n, const Monomial& c, const Monomial& d, const Monomial& base,
                 int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    // the displayed form carries a (1-q^n) factor; the n = 0 value is 1
    if (n == 0) return Series::constant(CycRat(1), D, ot);
    Series pref = Series::monomial((q / c).pow(n), D, Series::kInf) *
                  one_minus(q.pow(n).coeff(), q.pow(n).exponent, D, Series::kInf) *
                  poch_list({c / q}, n, q, D);
    std::vector<Monomial> pdens;
    den_factors(pdens, {q.pow(2) / c}, n, q);

    Series acc(D, Series::kInf);
    // j = 0,1 folded into the displayed rational function
    {
        Series num = (mono_series(c, D) + mono_series(d, D)) * mono_series(q, D);
        num += mono_series(c * d, D) * (mono_series(q, D) - Series::constant(CycRat(2), D, Series::kInf));
        num -= mono_series(q.pow(3), D);
        num *= pref;
        // denominator (c-q)(d-q)(1-q) is a unit times monomial: invert exactly
        Series den = (mono_series(c, D) - mono_series(q, D)) * (mono_series(d, D) - mono_series(q, D)) *
                     one_minus(q.coeff(), q.exponent, D, Series::kInf);
        long long deficit = std::max(0LL, -num.min_exp_ticks()) + std::max(0LL, den.min_exp_ticks()) +
                            std::max(0LL, -den.min_exp_ticks());
        Series numw = Series(D, ot + deficit + 2) + num;
        Series t = numw * (Series(D, ot + deficit + 2) + den).inverted();
        for (const auto& f : pdens) t = div_one_minus(t, f, D, ot + deficit + 2);
        acc += t;
    }
    for (long long j = 2; j <= n; ++j) {
        Series exact = one_minus(q.pow(2 * j - 1).coeff(), q.pow(2 * j - 1).exponent, D, Series::kInf);
        exact *= poch_list({q / c, q / d}, j, q, D);
        Monomial w = (c * d).pow(j) * q.pow(-j * (j + 3) / 2);
        if (j % 2 != 0) w = -w;
        exact *= Series::monomial(w, D, Series::kInf);
        exact *= pref;
        std::vector<Monomial> dens = pdens;
        dens.push_back(q.pow(j));
        dens.push_back(q.pow(j - 1));
        den_factors(dens, {c / q, d / q}, j, q);
        acc += assemble(exact, dens, D, ot);
    }
    return acc;
}

Series eq1(long long n, const Monomial& alpha, const Monomial& c, const Monomial& base,
           int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series pref = Series::monomial((-alpha).pow(n) * q.pow(n * (n + 1) / 2), D, Series::kInf) *
                  pochhammer_finite(q, n, q, D, Series::kInf);
    std::vector<Monomial> pdens;
    den_factors(pdens, {alpha * q}, n, q);
    return alpha_j_sum(n, alpha, {q / c}, {alpha * c}, base, D, ot,
                       [&](long long j) { return (c / alpha).pow(j) * q.pow(-j * (j + 1)); },
                       pref, pdens);
}

Series meq2(long long n, const Monomial& alpha, const Monomial& c, const Monomial& base,
            int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series pref = Series::monomial((alpha / c).pow(n) * q.pow(n * n + 2 * n), D, Series::kInf) *
                  poch_list({alpha * c, q}, n, q, D);
    std::vector<Monomial> pdens;
    den_factors(pdens, {q.pow(2) / c, alpha * q}, n, q);
    return alpha_j_sum(n, alpha, {q / c}, {alpha * c}, base, D, ot,
                       [&](long long j) { return c.pow(j) * alpha.pow(-j) * q.pow(-j * j - j); },
                       pref, pdens);
}

Series lem_limit2(long long n, const Monomial& c, const Monomial& base, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    if (n == 0) return Series::constant(CycRat(1), D, ot);
    Series pref = Series::monomial(c.pow(-n) * q.pow(n * n + n), D, Series::kInf) *
                  one_minus(q.pow(n).coeff(), q.pow(n).exponent, D, Series::kInf) *
                  poch_list({c / q}, n, q, D);
    std::vector<Monomial> pdens;
    den_factors(pdens, {q.pow(2) / c}, n, q);

    Series acc(D, Series::kInf);
    {
        // (q - 2c + cq)/((1-q)(c-q))
        Series num = mono_series(q, D) - Series::constant(CycRat(2), D, Series::kInf) * mono_series(c, D) +
                     mono_series(c * q, D);
        num *= pref;
        Series den = one_minus(q.coeff(), q.exponent, D, Series::kInf) *
                     (mono_series(c, D) - mono_series(q, D));
        long long deficit = std::max(0LL, -num.min_exp_ticks()) + std::max(0LL, den.min_exp_ticks()) +
                            std::max(0LL, -den.min_exp_ticks());
        Series numw = Series(D, ot + deficit + 2) + num;
        Series t = numw * (Series(D, ot + deficit + 2) + den).inverted();
        for (const auto& f : pdens) t = div_one_minus(t, f, D, ot + deficit + 2);
        acc += t;
    }
    for (long long j = 2; j <= n; ++j) {
        Series exact = one_minus(q.pow(2 * j - 1).coeff(), q.pow(2 * j - 1).exponent, D, Series::kInf);
        exact *= poch_list({q / c}, j, q, D);
        exact *= Series::monomial(c.pow(j) * q.pow(-j * j), D, Series::kInf);
        exact *= pref;
        std::vector<Monomial> dens = pdens;
        dens.push_back(q.pow(j - 1));
        dens.push_back(q.pow(j));
        den_factors(dens, {c / q}, j, q);
        acc += assemble(exact, dens, D, ot);
    }
    return acc;
}

Series eqpro25(long long n, const Monomial& alpha, const Monomial& c, const Monomial& base,
               int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    return alpha_j_sum(n, alpha, {q / c}, {alpha * c}, base, D, ot,
                       [&](long long j) { return (alpha * c).pow(j) * q.pow(j * j - j); },
                       Series::constant(CycRat(1), D, Series::kInf), {});
}

Series meq3(long long n, const Monomial& alpha, const Monomial& c, const Monomial& base,
            int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series pref = Series::monomial((q / c).pow(n), D, Series::kInf) *
                  poch_list({alpha * c, q}, n, q, D);
    std::vector<Monomial> pdens;
    den_factors(pdens, {q.pow(2) / c, alpha * q}, n, q);
    return alpha_j_sum(n, alpha, {q / c}, {alpha * c}, base, D, ot,
                       [&](long long j) { return (alpha * c).pow(j) * q.pow(j * j - j); },
                       pref, pdens);
}

Series pfaff(long long n, const Monomial& a, const Monomial& b, const Monomial& c,
             const Monomial& base, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series exact = poch_list({b, c}, n, q, D) *
                   Series::monomial((a * q / (b * c)).pow(n), D, Series::kInf);
    std::vector<Monomial> dens;
    den_factors(dens, {a * q / b, a * q / c}, n, q);
    return assemble(exact, dens, D, ot);
}

Series liu_lemma41_lhs(long long n, const Monomial& a, const Monomial& c, const Monomial& base,
                       int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series acc(D, Series::kInf);
    for (long long k = 0; k <= n; ++k) {
        Series exact = poch_list({q.pow(-n), a * q.pow(n)}, k, q, D) *
                       Series::monomial(q.pow(k), D, Series::kInf);
        std::vector<Monomial> dens;
        den_factors(dens, {c * q}, k, q);
        acc += assemble(exact, dens, D, ot);
    }
    return acc;
}

Series liu_lemma41_rhs(long long n, const Monomial& a, const Monomial& c, const Monomial& base,
                       int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series pref = Series::monomial(a.pow(n) * q.pow(n * n), D, Series::kInf) *
                  poch_list({q}, n, q, D);
    std::vector<Monomial> pdens;
    den_factors(pdens, {c * q}, n, q);
    Series acc(D, Series::kInf);
    for (long long j = 0; j <= n; ++j) {
        Series exact = poch_list({c}, j, q, D) *
                       Series::monomial(a.pow(-j) * q.pow(j * (1 - n)), D, Series::kInf);
        exact *= pref;
        std::vector<Monomial> dens = pdens;
        den_factors(dens, {q}, j, q);
        acc += assemble(exact, dens, D, ot);
    }
    return acc;
}

Series qn_sum_rhs(long long n, const Monomial& base, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series r = Series(D, ot) + Series::monomial(q.pow(n), D, Series::kInf);
    if (n >= 1) {
        Series inner(D, Series::kInf);
        for (long long j = -(n - 1); j <= n - 1; ++j) {
            Monomial w = q.pow(-j * (3 * j + 1) / 2);
            if (j % 2 != 0) w = -w;
            inner += Series::monomial(w, D, Series::kInf);
        }
        Series tail = one_minus(q.pow(n).coeff(), q.pow(n).exponent, D, Series::kInf) *
                      Series::monomial(q.pow((3 * n * n - n) / 2), D, Series::kInf) * inner;
        if (n % 2 == 0) tail = -tail;
        r += tail;
    }
    return r;
}

Series watson_4phi3(long long n, const Monomial& alpha, const Monomial& a, const Monomial& b,
                    const Monomial& c, const Monomial& d, const Monomial& base, int D, const QExp& order) {
    long long ot = ticks_floor(order, D);
    Monomial q = base;
    Series exact = poch_list({alpha * q, alpha * a * b / q}, n, q, D);
    std::vector<Monomial> dens;
    den_factors(dens, {alpha * a, alpha * b}, n, q);
    PhiSpec spec;
    spec.uppers = {q.pow(-n), q / a, q / b, alpha * c * d / q};
    spec.lowers = {alpha * c, alpha * d, q.pow(2 - n) / (alpha * a * b)};
    spec.base = q;
    spec.argument = q;
    spec.n_terminate = n;
    Series probe = phi_eval(spec, D, QExp(ot, D));
    long long mphi = std::min(0LL, probe.min_exp_ticks());
    Series pref = assemble(exact, dens, D, ot - mphi);
    long long mpref = std::min(0LL, pref.min_exp_ticks());
    Series phi = (mpref == 0) ? probe : phi_eval(spec, D, QExp(ot - mpref, D));
    return pref * phi;
}

Series watson_8phi7(long long n, const Monomial& alpha, const Monomial& a, const Monomial& b,
                    const Monomial& c, const Monomial& d, const Monomial& base, int D, const QExp& order) {
    Monomial q = base;
    // very-well-poised in alpha: the sqrt entries are q*sqrt(alpha), -q*sqrt(alpha);
    // a rendering with sqrt(a) instead only matches when a = alpha
    Monomial sqal = alpha;
    if (alpha.sign < 0 || alpha.root_power % 2 != 0)
        throw EvalError("watson_8phi7 needs a square value for alpha");
    sqal.exponent = QExp(alpha.exponent.num, alpha.exponent.den * 2);
    sqal.root_power = alpha.root_power / 2;
    PhiSpec spec;
    spec.uppers = {q.pow(-n), q * sqal, -(q * sqal), alpha, q / a, q / b, q / c, q / d};
    spec.lowers = {sqal, -sqal, alpha * a, alpha * b, alpha * c, alpha * d, alpha * q.pow(n + 1)};
    spec.base = q;
    spec.argument = alpha.pow(2) * a * b * c * d * q.pow(n - 2);
    spec.n_terminate = n;
    return phi_eval(spec, D, order);
}

Series andrews611_rhs(long long n, const Monomial& half_base, int D, const QExp& order) {
    // the evaluated 3phi2 runs in base q^2, but the closed form is stated in q
    long long ot = ticks_floor(order, D);
    Monomial q = half_base;
    Series inner(D, Series::kInf);
    for (long long j = -n; j <= n; ++j) {
        Monomial w = q.pow(-j * j);
        if (j % 2 != 0) w = -w;
        inner += Series::monomial(w, D, Series::kInf);
    }
    Series r = inner * Series::monomial(q.pow(n * n + 2 * n), D, Series::kInf);
    if (n % 2 != 0) r = -r;
    return Series(D, ot) + r;
}

} // namespace closed_form

} // namespace qmock
