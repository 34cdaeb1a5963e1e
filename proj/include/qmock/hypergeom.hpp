#pragma once

#include <optional>
#include <vector>

#include "qmock/series.hpp"

namespace qmock {

// r_phi_s basic hypergeometric series with monomial parameters.
struct PhiSpec {
    std::vector<Monomial> uppers;
    std::vector<Monomial> lowers;
    Monomial base;     // positive q-power, possibly with sign
    Monomial argument;
    std::optional<long long> n_terminate;
};

// term-by-term evaluation; terminated sums are summed fully, non-terminated
// ones are truncated once the summand leaves the window (4-in-a-row rule)
Series phi_eval(const PhiSpec& spec, int D, const QExp& order);

// the recurring factor (1 - alpha q^{2j})(alpha;q)_j / (1 - alpha), which is
// a polynomial in alpha: 1 for j = 0 and (1 - alpha q^{2j})(alpha q;q)_{j-1}
// for j >= 1; total even at alpha = 1
Series alpha_ratio(const Monomial& alpha, long long j, const Monomial& base, int D, long long vt);

// closed-form right sides of the evaluation lemmas; each returns the lemma's
// RHS as a series so tests can check it against phi_eval of the left side
namespace closed_form {

// (-c)^n q^{n(n-1)/2} (q a/c;q)_n/(c;q)_n * 3phi2(q^{-n}, a q^n, d/b; d, q a/c; q, q b/c)
Series sears32(long long n, const Monomial& alpha, const Monomial& beta, const Monomial& c,
               const Monomial& d, const Monomial& base, int D, const QExp& order);

// (c;q)_n/(c/b;q)_n * 2phi1(q^{-n}, b; c; q, z)
Series hyper2(long long n, const Monomial& b, const Monomial& c, const Monomial& z,
              const Monomial& base, int D, const QExp& order);

Series liu313(long long n, const Monomial& alpha, const Monomial& c, const Monomial& d,
              const Monomial& base, int D, const QExp& order);

Series meq1(long long n, const Monomial& alpha, const Monomial& c, const Monomial& d,
            const Monomial& base, int D, const QExp& order);

Series lem_limit(long long n, const Monomial& c, const Monomial& d, const Monomial& base,
                 int D, const QExp& order);

Series eq1(long long n, const Monomial& alpha, const Monomial& c, const Monomial& base,
           int D, const QExp& order);

Series meq2(long long n, const Monomial& alpha, const Monomial& c, const Monomial& base,
            int D, const QExp& order);

Series lem_limit2(long long n, const Monomial& c, const Monomial& base, int D, const QExp& order);

Series eqpro25(long long n, const Monomial& alpha, const Monomial& c, const Monomial& base,
               int D, const QExp& order);

Series meq3(long long n, const Monomial& alpha, const Monomial& c, const Monomial& base,
            int D, const QExp& order);

Series pfaff(long long n, const Monomial& a, const Monomial& b, const Monomial& c,
             const Monomial& base, int D, const QExp& order);

// sum_{k=0}^n (q^{-n}, a q^n; q)_k q^k/(cq;q)_k
//   = a^n q^{n^2} (q;q)_n/(cq;q)_n sum_j (c;q)_j a^{-j} q^{j(1-n)}/(q;q)_j
Series liu_lemma41_rhs(long long n, const Monomial& a, const Monomial& c, const Monomial& base,
                       int D, const QExp& order);
Series liu_lemma41_lhs(long long n, const Monomial& a, const Monomial& c, const Monomial& base,
                       int D, const QExp& order);

// sum_{k=0}^n (q^{-n}, q^n;q)_k q^k
//   = q^n + (-1)^{n-1}(1-q^n) q^{(3n^2-n)/2} sum_{|j|<n} (-1)^j q^{-j(3j+1)/2}
Series qn_sum_rhs(long long n, const Monomial& base, int D, const QExp& order);

// Watson's 8phi7 transform: both sides as series
Series watson_4phi3(long long n, const Monomial& alpha, const Monomial& a, const Monomial& b,
                    const Monomial& c, const Monomial& d, const Monomial& base, int D, const QExp& order);
Series watson_8phi7(long long n, const Monomial& alpha, const Monomial& a, const Monomial& b,
                    const Monomial& c, const Monomial& d, const Monomial& base, int D, const QExp& order);

// (1+q^{2n+1})/(1+q) * 3phi2(q^{-2n}, q^{2n+2}, q^2; -q^2, -q^3; q^2, q^2)
//   = (-1)^n q^{n^2+2n} sum_{j=-n}^n (-1)^j q^{-j^2}; half_base is the q of the
// right side (the phi series itself runs in q^2)
Series andrews611_rhs(long long n, const Monomial& half_base, int D, const QExp& order);

} // namespace closed_form

} // namespace qmock
