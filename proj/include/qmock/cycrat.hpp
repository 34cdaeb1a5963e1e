#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "qmock/errors.hpp"

namespace qmock {

using Rational = mpq_class;

// Element of Q(zeta_24) in the power basis {1, z, ..., z^7} reduced modulo
// z^8 - z^4 + 1, with exact rational coordinates.  zeta_24 = e^{2 pi i/24},
// so z^6 = i, z^8 = zeta_3, z^4 = zeta_6, z^3 = zeta_8 and z^12 = -1.
class CycRat {
public:
    CycRat() : mask_(0) {}
    CycRat(long v) { set_rational(Rational(v)); }
    CycRat(int v) : CycRat(static_cast<long>(v)) {}
    explicit CycRat(const Rational& v) { set_rational(v); }

    // zeta_24^k (k arbitrary integer)
    static CycRat zeta24_pow(long k);
    // zeta_n^j for n dividing 24
    static CycRat zeta(long n, long j = 1);
    static CycRat one() { return CycRat(1); }

    bool is_zero() const { return mask_ == 0; }
    bool is_rational() const { return (mask_ & ~1u) == 0; }
    const Rational& coord(int i) const { return c_[i]; }
    // value as a rational; requires is_rational()
    const Rational& rat() const { return c_[0]; }

    CycRat operator-() const;
    CycRat& operator+=(const CycRat& o);
    CycRat& operator-=(const CycRat& o);
    CycRat& operator*=(const CycRat& o);

    friend CycRat operator+(CycRat a, const CycRat& b) { a += b; return a; }
    friend CycRat operator-(CycRat a, const CycRat& b) { a -= b; return a; }
    friend CycRat operator*(const CycRat& a, const CycRat& b);

    CycRat inverse() const; // throws DivisionByZero on zero
    friend CycRat operator/(const CycRat& a, const CycRat& b) { return a * b.inverse(); }

    bool operator==(const CycRat& o) const;
    bool operator!=(const CycRat& o) const { return !(*this == o); }

    // numeric embedding at zeta_24 = e^{i pi/12}; used by tests as an oracle
    std::complex<double> to_complex() const;

    // deterministic printing: "p/q" for rationals, otherwise a signed sum of
    // "c*zeta24^k" monomials in increasing k
    std::string str() const;

private:
    std::array<Rational, 8> c_{};
    uint32_t mask_;

    void set_rational(const Rational& v);
    void recompute_mask();
    friend struct CycRatOps;
};

std::ostream& operator<<(std::ostream& os, const CycRat& v);

} // namespace qmock
