#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

#include "qmock/cycrat.hpp"
#include "qmock/errors.hpp"

namespace qmock {

// Exact rational exponent of q, kept in lowest terms with positive denominator.
struct QExp {
    long long num = 0;
    long long den = 1;

    QExp() = default;
    QExp(long long n, long long d = 1) : num(n), den(d) { normalize(); }
    void normalize();

    QExp operator+(const QExp& o) const { return QExp(num * o.den + o.num * den, den * o.den); }
    QExp operator-(const QExp& o) const { return QExp(num * o.den - o.num * den, den * o.den); }
    QExp operator-() const { return QExp(-num, den); }
    QExp operator*(long long k) const { return QExp(num * k, den); }
    bool operator==(const QExp& o) const { return num == o.num && den == o.den; }
    bool operator<(const QExp& o) const { return num * o.den < o.num * den; }
    bool operator<=(const QExp& o) const { return num * o.den <= o.num * den; }
    bool is_integer() const { return den == 1; }
    std::string str() const;
};

// c * q^e with c = 0 or sign * zeta24^root_power; the argument type for the
// x, y, z, a, b slots of every building block.  Canonical form keeps
// root_power in [0, 12), folding zeta24^12 = -1 into the sign.
struct Monomial {
    bool zero = false;
    int sign = 1;        // +1 or -1
    int root_power = 0;  // exponent of zeta24, canonically in [0, 12)
    QExp exponent;

    void canonicalize() {
        root_power = ((root_power % 24) + 24) % 24;
        if (root_power >= 12) { root_power -= 12; sign = -sign; }
    }

    static Monomial make_zero() { Monomial m; m.zero = true; return m; }
    static Monomial one() { return Monomial{}; }
    static Monomial q_pow(QExp e) { Monomial m; m.exponent = e; return m; }

    CycRat coeff() const;
    bool is_one() const {
        Monomial c = *this;
        c.canonicalize();
        return !zero && c.sign == 1 && c.root_power == 0 && exponent.num == 0;
    }

    Monomial operator*(const Monomial& o) const;
    Monomial inverse() const; // throws DivisionByZero on zero
    Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }
    Monomial pow(long long k) const;
    Monomial operator-() const { Monomial m = *this; if (!m.zero) m.sign = -m.sign; return m; }
    bool operator==(const Monomial& o) const;
};

// Truncated Laurent-Puiseux series in q^{1/D} over Q(zeta_24).  Exponents are
// stored as integer ticks (numerator over D); valid_to is the largest tick up
// to which every coefficient is guaranteed exact (kInf when exact everywhere).
class Series {
public:
    static constexpr long long kInf = LLONG_MAX / 4;

    Series() : D_(1), valid_to_(kInf) {}
    Series(int D, long long valid_to_ticks) : D_(D), valid_to_(valid_to_ticks) { check_D(D); }

    static Series zero(int D, long long vt) { return Series(D, vt); }
    static Series constant(const CycRat& c, int D, long long vt);
    static Series monomial(const Monomial& m, int D, long long vt); // DenominatorMismatch if exponent not in q^{1/D}

    int D() const { return D_; }
    long long valid_to() const { return valid_to_; }
    bool is_zero_upto_validity() const { return terms_.empty(); }
    long long min_exp_ticks() const { return terms_.empty() ? kInf : terms_.begin()->first; }
    QExp min_exp() const { return terms_.empty() ? QExp(kInf) : QExp(terms_.begin()->first, D_); }
    const std::map<long long, CycRat>& terms() const { return terms_; }

    CycRat coeff_ticks(long long t) const;
    CycRat coeff(const QExp& e) const;

    void set_coeff_ticks(long long t, const CycRat& c);
    void add_coeff_ticks(long long t, const CycRat& c);
    void truncate_to_validity();

    // lift to a series over q^{1/newD}; newD must be a multiple of D
    Series lifted(int newD) const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series& operator+=(const Series& o) { *this = *this + o; return *this; }
    Series& operator-=(const Series& o) { *this = *this - o; return *this; }
    Series& operator*=(const Series& o) { *this = *this * o; return *this; }

    Series scaled(const CycRat& c) const;
    Series shifted(long long ticks) const; // multiply by q^{ticks/D}
    Series pow(long long k) const;         // negative k inverts first

    // multiplicative inverse of a unit-up-to-shift; throws ZeroSeries
    Series inverted() const;

    // q -> -q (requires integral exponents) and q -> q^k (k >= 1)
    Series subst_q_neg() const;
    Series subst_q_pow(long long k) const;

    struct Mismatch {
        bool equal = true;
        QExp exponent;
        CycRat lhs, rhs;
    };
    // exact comparison of all coefficients with exponent <= order; throws
    // InsufficientValidity when either side is not valid that far
    static Mismatch equal_up_to(const Series& a, const Series& b, const QExp& order);

    std::string str() const;

    static void check_D(int D);

private:
    int D_;
    long long valid_to_;
    std::map<long long, CycRat> terms_;
};

std::ostream& operator<<(std::ostream& os, const Series& s);

// rebuild with widening windows until the result is valid through `order`;
// builder(w) must construct the same series exactly up to the window w
template <typename F>
Series ensure_validity(F&& builder, int D, const QExp& order) {
    long long target = (order.num * D) / order.den;
    long long window = target;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Series s = builder(QExp(window, D));
        if (s.valid_to() >= target) return s;
        long long deficit = target - s.valid_to();
        window += deficit + 4;
    }
    throw InsufficientValidity("validity target q^" + order.str() + " not reached");
}

// 1/(1 - c q^e) expanded by the |q| < 1 convention:
//   e > 0: sum_k c^k q^{ke};  e < 0: -c^{-1} q^{-e} sum_k c^{-k} q^{-ke};
//   e = 0, c != 1: the constant 1/(1-c).  PoleError when e = 0, c = 1.
Series geometric_expand(const CycRat& c, const QExp& e, int D, const QExp& order);

// series for (1 - c q^e) itself
Series one_minus(const CycRat& c, const QExp& e, int D, long long vt);

} // namespace qmock
