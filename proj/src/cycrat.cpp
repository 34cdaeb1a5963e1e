#include "qmock/cycrat.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace qmock {

namespace {

// reduction of z^d for d in [8,14] modulo z^8 - z^4 + 1: pairs of
// (index, sign) contributions. z^8 = z^4 - 1, ..., z^12 = -1, z^13 = -z, ...
struct Red { int i1; int s1; int i2; int s2; };
constexpr Red kRed[7] = {
    {4, +1, 0, -1}, // z^8
    {5, +1, 1, -1}, // z^9
    {6, +1, 2, -1}, // z^10
    {7, +1, 3, -1}, // z^11
    {0, -1, -1, 0}, // z^12
    {1, -1, -1, 0}, // z^13
    {2, -1, -1, 0}, // z^14
};

} // namespace

void CycRat::set_rational(const Rational& v) {
    for (auto& x : c_) x = 0;
    c_[0] = v;
    c_[0].canonicalize();
    mask_ = (c_[0] != 0) ? 1u : 0u;
}

void CycRat::recompute_mask() {
    mask_ = 0;
    for (int i = 0; i < 8; ++i)
        if (c_[i] != 0) mask_ |= (1u << i);
}

CycRat CycRat::zeta24_pow(long k) {
    k %= 24;
    if (k < 0) k += 24;
    // z^k for k < 12 via z^8 = z^4 - 1; z^(12+t) = -z^t
    CycRat r;
    int sign = 1;
    if (k >= 12) { k -= 12; sign = -1; }
    if (k < 8) {
        r.c_[k] = sign;
    } else {
        const Red& rd = kRed[k - 8];
        r.c_[rd.i1] = sign * rd.s1;
        if (rd.i2 >= 0) r.c_[rd.i2] = sign * rd.s2;
    }
    r.recompute_mask();
    return r;
}

CycRat CycRat::zeta(long n, long j) {
    if (n <= 0 || 24 % n != 0)
        throw EvalError("zeta(" + std::to_string(n) + ") is not in Q(zeta_24)");
    return zeta24_pow((24 / n) * j);
}

CycRat CycRat::operator-() const {
    CycRat r(*this);
    for (int i = 0; i < 8; ++i)
        if (r.mask_ & (1u << i)) r.c_[i] = -r.c_[i];
    return r;
}

CycRat& CycRat::operator+=(const CycRat& o) {
    for (int i = 0; i < 8; ++i) {
        if (o.mask_ & (1u << i)) {
            c_[i] += o.c_[i];
            if (c_[i] != 0) mask_ |= (1u << i); else mask_ &= ~(1u << i);
        }
    }
    return *this;
}

CycRat& CycRat::operator-=(const CycRat& o) {
    for (int i = 0; i < 8; ++i) {
        if (o.mask_ & (1u << i)) {
            c_[i] -= o.c_[i];
            if (c_[i] != 0) mask_ |= (1u << i); else mask_ &= ~(1u << i);
        }
    }
    return *this;
}

CycRat operator*(const CycRat& a, const CycRat& b) {
    CycRat r;
    if (a.is_zero() || b.is_zero()) return r;
    // fast path: rational * anything
    if (a.is_rational()) {
        r = b;
        for (int i = 0; i < 8; ++i)
            if (r.mask_ & (1u << i)) r.c_[i] *= a.c_[0];
        return r;
    }
    if (b.is_rational()) return b * a;
    Rational acc[8];
    mpq_class p;
    for (int i = 0; i < 8; ++i) {
        if (!(a.mask_ & (1u << i))) continue;
        for (int j = 0; j < 8; ++j) {
            if (!(b.mask_ & (1u << j))) continue;
            p = a.c_[i] * b.c_[j];
            int d = i + j;
            if (d < 8) {
                acc[d] += p;
            } else {
                const auto& rd = kRed[d - 8];
                if (rd.s1 > 0) acc[rd.i1] += p; else acc[rd.i1] -= p;
                if (rd.i2 >= 0) {
                    if (rd.s2 > 0) acc[rd.i2] += p; else acc[rd.i2] -= p;
                }
            }
        }
    }
    for (int i = 0; i < 8; ++i) r.c_[i] = acc[i];
    r.recompute_mask();
    return r;
}

CycRat& CycRat::operator*=(const CycRat& o) {
    *this = *this * o;
    return *this;
}

bool CycRat::operator==(const CycRat& o) const {
    if (mask_ != o.mask_) return false;
    for (int i = 0; i < 8; ++i)
        if ((mask_ & (1u << i)) && c_[i] != o.c_[i]) return false;
    return true;
}

CycRat CycRat::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) {
        CycRat r;
        r.c_[0] = 1 / c_[0];
        r.mask_ = 1;
        return r;
    }
    // solve (this * y) = 1 by Gaussian elimination on the multiplication matrix
    Rational m[8][9];
    for (int j = 0; j < 8; ++j) {
        CycRat col = *this * zeta24_pow(j);
        for (int i = 0; i < 8; ++i) m[i][j] = col.c_[i];
    }
    for (int i = 0; i < 8; ++i) m[i][8] = (i == 0) ? 1 : 0;
    for (int col = 0; col < 8; ++col) {
        int piv = -1;
        for (int row = col; row < 8; ++row)
            if (m[row][col] != 0) { piv = row; break; }
        if (piv < 0) throw DivisionByZero();
        if (piv != col)
            for (int k = col; k <= 8; ++k) std::swap(m[piv][k], m[col][k]);
        Rational inv = 1 / m[col][col];
        for (int k = col; k <= 8; ++k) m[col][k] *= inv;
        for (int row = 0; row < 8; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational f = m[row][col];
            for (int k = col; k <= 8; ++k) m[row][k] -= f * m[col][k];
        }
    }
    CycRat r;
    for (int i = 0; i < 8; ++i) r.c_[i] = m[i][8];
    r.recompute_mask();
    return r;
}

std::complex<double> CycRat::to_complex() const {
    std::complex<double> z = std::polar(1.0, M_PI / 12.0);
    std::complex<double> acc(0.0, 0.0), p(1.0, 0.0);
    for (int i = 0; i < 8; ++i) {
        if (mask_ & (1u << i)) acc += c_[i].get_d() * p;
        p *= z;
    }
    return acc;
}

std::string CycRat::str() const {
    if (is_zero()) return "0";
    if (is_rational()) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 8; ++i) {
        if (!(mask_ & (1u << i))) continue;
        Rational v = c_[i];
        if (first) {
            if (v < 0) { os << "-"; v = -v; }
            first = false;
        } else {
            if (v < 0) { os << " - "; v = -v; } else os << " + ";
        }
        if (i == 0) {
            os << v.get_str();
        } else {
            if (v != 1) os << v.get_str() << "*";
            os << "zeta24";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycRat& v) { return os << v.str(); }

} // namespace qmock
