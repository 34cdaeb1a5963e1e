#pragma once

#include "qmock/series.hpp"
#include "qmock/thetafn.hpp"

namespace qmock {

struct HeckeParams {
    long long a = 0, b = 0, c = 0;
};

// m(x,q,z) = (1/j(z;q)) sum_r (-1)^r q^{C(r,2)} z^r / (1 - q^{r-1} x z)
Series appell_m(const Monomial& x, const Monomial& base, const Monomial& z, int D, const QExp& order);

// mbar(x,q,z) = sum_r sg(r) (-1)^r q^{C(r,2)} z^r / (1 - q^{r-1} x z)
Series false_m(const Monomial& x, const Monomial& base, const Monomial& z, int D, const QExp& order);

// f_{a,b,c}(x,y,q) = sum_{sg(r)=sg(s)} sg(r) (-1)^{r+s} x^r y^s q^{a C(r,2)+b rs+c C(s,2)}
Series hecke_f(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& base,
               int D, const QExp& order, long long bound_slack = 2);

// fbar_{a,b,c}: same lattice sum without the sg(r) factor
Series false_f(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& base,
               int D, const QExp& order, long long bound_slack = 2);

// h(x,q) = (1/j(q;q^2)) sum_n (-1)^n q^{n(n+1)} / (1 - q^n x)
Series h_block(const Monomial& x, const Monomial& base, int D, const QExp& order);

// k(x,q) = (1/(x j(-q;q^4))) sum_n q^{n(2n+1)} / (1 - q^{2n} x^2)
Series k_block(const Monomial& x, const Monomial& base, int D, const QExp& order);

} // namespace qmock
