#pragma once

#include "qmock/blocks.hpp"

namespace qmock {

// g_{a,b,c}(x,y,q,z1,z0): the two t-sums of theta-weighted Appell-Lerch values
Series g_abc(long long a, long long b, long long c, const Monomial& x, const Monomial& y,
             const Monomial& base, const Monomial& z1, const Monomial& z0, int D, const QExp& order);

// Phi_{n,p}(x,y,q), gcd(n,p) = 1, n odd in every instance used here
Series phi_np(long long n, long long p, const Monomial& x, const Monomial& y, const Monomial& base,
              int D, const QExp& order);

// Theta_{n,2}(x,y,q), n odd
Series theta_n2(long long n, const Monomial& x, const Monomial& y, const Monomial& base,
                int D, const QExp& order);

struct ConversionReport {
    bool pass = false;
    QExp order;
    Series::Mismatch mismatch;
};

// f_{n,n+p,n}(x,y,q) == g_{n,n+p,n}(x,y,q,-1,-1) + Phi_{n,p}(x,y,q)
ConversionReport fm_identity_coprime(long long n, long long p, const Monomial& x, const Monomial& y,
                                     const Monomial& base, int D, const QExp& order);

// f_{n,n+2,n}(x,y,q) == g_{n,n+2,n}(x,y,q,y^n/x^n,x^n/y^n) - Theta_{n,2}(x,y,q)
ConversionReport fm_identity_odd(long long n, const Monomial& x, const Monomial& y,
                                 const Monomial& base, int D, const QExp& order);

} // namespace qmock
