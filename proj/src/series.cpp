#include "qmock/series.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace qmock {

void QExp::normalize() {
    if (den == 0) throw DenominatorMismatch("zero exponent denominator");
    if (den < 0) { den = -den; num = -num; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

std::string QExp::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

CycRat Monomial::coeff() const {
    if (zero) return CycRat();
    CycRat c = CycRat::zeta24_pow(root_power);
    return sign < 0 ? -c : c;
}

Monomial Monomial::operator*(const Monomial& o) const {
    if (zero || o.zero) return make_zero();
    Monomial m;
    m.sign = sign * o.sign;
    m.root_power = root_power + o.root_power;
    m.exponent = exponent + o.exponent;
    m.canonicalize();
    return m;
}

Monomial Monomial::inverse() const {
    if (zero) throw DivisionByZero();
    Monomial m;
    m.sign = sign;
    m.root_power = -root_power;
    m.exponent = -exponent;
    m.canonicalize();
    return m;
}

Monomial Monomial::pow(long long k) const {
    if (zero) {
        if (k == 0) return one();
        if (k < 0) throw DivisionByZero();
        return make_zero();
    }
    Monomial m;
    m.sign = (k % 2 == 0) ? 1 : sign;
    long long rp = (long long)root_power * (k % 24);
    m.root_power = static_cast<int>(((rp % 24) + 24) % 24);
    m.exponent = QExp(exponent.num * k, exponent.den);
    m.canonicalize();
    return m;
}

bool Monomial::operator==(const Monomial& o) const {
    if (zero != o.zero) return false;
    if (zero) return true;
    return coeff() == o.coeff() && exponent == o.exponent;
}

void Series::check_D(int D) {
    if (D <= 0 || 24 % D != 0)
        throw DenominatorMismatch("series denominator must divide 24, got " + std::to_string(D));
}

Series Series::constant(const CycRat& c, int D, long long vt) {
    Series s(D, vt);
    if (!c.is_zero() && 0 <= vt) s.terms_[0] = c;
    return s;
}

Series Series::monomial(const Monomial& m, int D, long long vt) {
    Series s(D, vt);
    if (m.zero) return s;
    if ((m.exponent.num * D) % m.exponent.den != 0)
        throw DenominatorMismatch("exponent " + m.exponent.str() + " not representable over denominator " +
                                  std::to_string(D));
    long long t = m.exponent.num * (D / m.exponent.den);
    if (t <= vt) s.terms_[t] = m.coeff();
    return s;
}

CycRat Series::coeff_ticks(long long t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? CycRat() : it->second;
}

CycRat Series::coeff(const QExp& e) const {
    if ((e.num * D_) % e.den != 0) return CycRat();
    return coeff_ticks(e.num * (D_ / e.den));
}

void Series::set_coeff_ticks(long long t, const CycRat& c) {
    if (c.is_zero()) terms_.erase(t);
    else if (t <= valid_to_) terms_[t] = c;
}

void Series::add_coeff_ticks(long long t, const CycRat& c) {
    if (t > valid_to_ || c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Series::truncate_to_validity() {
    terms_.erase(terms_.upper_bound(valid_to_), terms_.end());
}

Series Series::lifted(int newD) const {
    if (newD == D_) return *this;
    if (newD % D_ != 0)
        throw DenominatorMismatch("cannot lift denominator " + std::to_string(D_) + " to " + std::to_string(newD));
    check_D(newD);
    long long f = newD / D_;
    Series s(newD, valid_to_ >= kInf ? kInf : valid_to_ * f);
    for (const auto& [t, c] : terms_) s.terms_[t * f] = c;
    return s;
}

Series Series::operator-() const {
    Series s(*this);
    for (auto& [t, c] : s.terms_) c = -c;
    return s;
}

namespace {
inline long long add_sat(long long a, long long b) {
    if (a >= Series::kInf || b >= Series::kInf) return Series::kInf;
    long long r = a + b;
    return r >= Series::kInf ? Series::kInf : r;
}
} // namespace

Series operator+(const Series& a, const Series& b) {
    int D = std::lcm(a.D_, b.D_);
    if (D != a.D_) return a.lifted(D) + b;
    if (D != b.D_) return a + b.lifted(D);
    Series r(D, std::min(a.valid_to_, b.valid_to_));
    r.terms_ = a.terms_;
    for (const auto& [t, c] : b.terms_) {
        auto [it, fresh] = r.terms_.try_emplace(t, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    r.truncate_to_validity();
    return r;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    int D = std::lcm(a.D_, b.D_);
    if (D != a.D_) return a.lifted(D) * b;
    if (D != b.D_) return a * b.lifted(D);
    long long vt = std::min(add_sat(a.valid_to_, b.min_exp_ticks()),
                            add_sat(b.valid_to_, a.min_exp_ticks()));
    Series r(D, vt);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    // iterate the shorter series on the outside
    const Series& s1 = a.terms_.size() <= b.terms_.size() ? a : b;
    const Series& s2 = a.terms_.size() <= b.terms_.size() ? b : a;
    for (const auto& [t1, c1] : s1.terms_) {
        if (add_sat(t1, s2.min_exp_ticks()) > vt) break;
        for (const auto& [t2, c2] : s2.terms_) {
            long long t = t1 + t2;
            if (t > vt) break;
            r.add_coeff_ticks(t, c1 * c2);
        }
    }
    return r;
}

Series Series::scaled(const CycRat& c) const {
    Series r(D_, valid_to_);
    if (c.is_zero()) return r;
    for (const auto& [t, v] : terms_) r.terms_[t] = v * c;
    return r;
}

Series Series::shifted(long long ticks) const {
    Series r(D_, add_sat(valid_to_, ticks));
    for (const auto& [t, v] : terms_) r.terms_[t + ticks] = v;
    r.truncate_to_validity();
    return r;
}

Series Series::pow(long long k) const {
    if (k < 0) return inverted().pow(-k);
    // start from an all-valid 1 and let multiplication shrink validity
    Series acc = Series::constant(CycRat(1), D_, kInf);
    Series base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

Series Series::inverted() const {
    if (terms_.empty()) throw ZeroSeries();
    long long e0 = min_exp_ticks();
    CycRat c0 = terms_.begin()->second;
    long long vt = valid_to_ == kInf ? kInf : valid_to_ - 2 * e0;
    if (vt < 0) throw ZeroSeries();
    // u = s * c0^{-1} q^{-e0} = 1 + t with t.min_exp > 0
    CycRat c0inv = c0.inverse();
    Series u(D_, valid_to_ == kInf ? kInf : valid_to_ - e0);
    for (const auto& [t, c] : terms_) u.terms_[t - e0] = c * c0inv;
    long long w = u.valid_to_ == kInf ? vt : u.valid_to_;
    // standard power-series reciprocal: b_0 = 1, b_n = -sum_{j>0} a_j b_{n-j}
    Series t = u;
    t.terms_.erase(0);
    if (w >= kInf && !t.terms_.empty())
        throw EvalError("cannot invert an untruncated series without a target order");
    Series inv(D_, w);
    inv.terms_[0] = CycRat(1);
    if (!t.terms_.empty()) {
        std::map<long long, CycRat> b{{0, CycRat(1)}};
        // iterate increasing exponents: compute each b_n on demand
        // collect candidate exponents as sums of existing ones lazily via loop
        for (long long n = 1; n <= w; ++n) {
            CycRat acc;
            for (const auto& [j, aj] : t.terms_) {
                if (j > n) break;
                auto it = b.find(n - j);
                if (it != b.end()) acc += aj * it->second;
            }
            if (!acc.is_zero()) b[n] = -acc;
        }
        inv.terms_.clear();
        for (auto& [n, c] : b)
            if (!c.is_zero()) inv.terms_[n] = c;
    }
    // result = c0^{-1} q^{-e0} * inv
    Series r(D_, vt);
    for (const auto& [t2, c] : inv.terms_) {
        long long tt = t2 - e0;
        if (tt <= vt) r.terms_[tt] = c * c0inv;
    }
    return r;
}

Series Series::subst_q_neg() const {
    Series r(D_, valid_to_);
    for (const auto& [t, c] : terms_) {
        if (t % D_ != 0) throw FractionalExponentNegation();
        long long e = t / D_;
        r.terms_[t] = (e % 2 == 0) ? c : -c;
    }
    return r;
}

Series Series::subst_q_pow(long long k) const {
    if (k < 1) throw EvalError("q -> q^k substitution requires k >= 1");
    Series r(D_, valid_to_ == kInf ? kInf : valid_to_ * k);
    for (const auto& [t, c] : terms_) r.terms_[t * k] = c;
    return r;
}

Series::Mismatch Series::equal_up_to(const Series& a, const Series& b, const QExp& order) {
    int D = std::lcm(a.D_, b.D_);
    Series aa = a.lifted(D), bb = b.lifted(D);
    long long ot = (order.num * D) / order.den;
    if (aa.valid_to_ < ot || bb.valid_to_ < ot)
        throw InsufficientValidity("comparison up to q^" + order.str() + " exceeds tracked validity (lhs " +
                                   QExp(aa.valid_to_, D).str() + ", rhs " + QExp(bb.valid_to_, D).str() + ")");
    Mismatch mm;
    auto ia = aa.terms_.begin(), ib = bb.terms_.begin();
    while (true) {
        long long ta = (ia == aa.terms_.end()) ? kInf : ia->first;
        long long tb = (ib == bb.terms_.end()) ? kInf : ib->first;
        long long t = std::min(ta, tb);
        if (t > ot || t >= kInf) break;
        CycRat ca = (ta == t) ? ia->second : CycRat();
        CycRat cb = (tb == t) ? ib->second : CycRat();
        if (ca != cb) {
            mm.equal = false;
            mm.exponent = QExp(t, D);
            mm.lhs = ca;
            mm.rhs = cb;
            return mm;
        }
        if (ta == t) ++ia;
        if (tb == t) ++ib;
    }
    return mm;
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        std::string cs = c.str();
        bool neg = false;
        if (c.is_rational() && c.rat() < 0) {
            neg = true;
            cs = (-c).str();
        }
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool composite = cs.find(' ') != std::string::npos;
        if (t == 0) {
            os << (composite ? "(" + cs + ")" : cs);
        } else {
            if (cs != "1") os << (composite ? "(" + cs + ")" : cs) << "*";
            QExp e(t, D_);
            if (e.num == 1 && e.den == 1) os << "q";
            else os << "q^(" << e.str() << ")";
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Series& s) { return os << s.str(); }

Series geometric_expand(const CycRat& c, const QExp& e, int D, const QExp& order) {
    Series::check_D(D);
    if ((e.num * D) % e.den != 0)
        throw DenominatorMismatch("geometric exponent " + e.str() + " not over denominator " + std::to_string(D));
    long long et = e.num * (D / e.den);
    long long ot = (order.num * D) / order.den;
    Series r(D, ot);
    if (et == 0) {
        if (c == CycRat(1)) throw PoleError("1/(1-q^0) pole");
        r.set_coeff_ticks(0, (CycRat(1) - c).inverse());
        return r;
    }
    if (c.is_zero()) {
        r.set_coeff_ticks(0, CycRat(1));
        return r;
    }
    if (et > 0) {
        CycRat p(1);
        for (long long t = 0; t <= ot; t += et) {
            r.set_coeff_ticks(t, p);
            p *= c;
        }
    } else {
        CycRat cinv = c.inverse();
        CycRat p = -cinv;
        for (long long t = -et; t <= ot; t += -et) {
            r.set_coeff_ticks(t, p);
            p *= cinv;
        }
    }
    return r;
}

Series one_minus(const CycRat& c, const QExp& e, int D, long long vt) {
    Series r = Series::constant(CycRat(1), D, vt);
    if (c.is_zero()) return r;
    if ((e.num * D) % e.den != 0)
        throw DenominatorMismatch("exponent " + e.str() + " not over denominator " + std::to_string(D));
    long long t = e.num * (D / e.den);
    r.add_coeff_ticks(t, -c);
    return r;
}

} // namespace qmock
