#pragma once

#include "qmock/series.hpp"

namespace qmock {

// (x; base)_n, finite product; exact polynomial but capped at vt ticks
Series pochhammer_finite(const Monomial& x, long long n, const Monomial& base, int D, long long vt);

// prod_{k=1}^{n} (x - base^k)  ==  (base/x; base)_n x^n; total at x = 0
Series pochdual(const Monomial& x, long long n, const Monomial& base, int D, long long vt);

// (x; base)_infty truncated exactly to `order`; base must have positive exponent
Series pochhammer_infinite(const Monomial& x, const Monomial& base, int D, const QExp& order);

enum class JacobiForm { Product, Sum };

// j(x; base) = (x)_inf (base/x)_inf (base)_inf = sum_n (-1)^n base^{C(n,2)} x^n
Series jacobi_j(const Monomial& x, const Monomial& base, int D, const QExp& order,
                JacobiForm form = JacobiForm::Product);

struct ThetaRef {
    enum Kind { J, Jbar, Jm } kind;
    QExp a;
    QExp m;
};

// J_{a,m}, Jbar_{a,m} = j(+-q^a; q^m), J_m = (q^m;q^m)_inf
Series theta_shorthand(const ThetaRef& ref, int D, const QExp& order);

// sum_n (-1)^n base^{C(n+1,2)} / (1 - base^n z), the partial-fraction expansion
// of base_1^3 / j(z; base); PoleError when z is an integral power of base
Series reciprocal_theta(const Monomial& z, const Monomial& base, int D, const QExp& order);

} // namespace qmock
