#include "qmock/zoo.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <tuple>

#include "qmock/thetafn.hpp"

namespace qmock {

namespace {

long long ticks_floor(const QExp& e, int D) { return (e.num * D) / e.den; }

Monomial qp(long long num, long long den = 1) { return Monomial::q_pow(QExp(num, den)); }

Monomial neg(Monomial m) { return -m; }

// incrementally maintained 1 / (x; base)_n, truncated at a fixed window
class InvChain {
public:
    InvChain(Monomial x, Monomial base, int D, long long window)
        : x_(x), base_(base), D_(D), w_(window), n_(0),
          val_(Series::constant(CycRat(1), D, window)) {}

    const Series& to(long long n) {
        while (n_ < n) {
            Monomial f = x_ * base_.pow(n_);
            if (f.is_one()) throw PoleError("vanishing denominator factor in Eulerian sum");
            if (!f.zero)
                val_ *= geometric_expand(f.coeff(), f.exponent, D_, QExp(w_, D_));
            ++n_;
        }
        return val_;
    }

private:
    Monomial x_, base_;
    int D_;
    long long w_;
    long long n_;
    Series val_;
};

// incrementally maintained (x; base)_n
class FwdChain {
public:
    FwdChain(Monomial x, Monomial base, int D)
        : x_(x), base_(base), D_(D), n_(0), val_(Series::constant(CycRat(1), D, Series::kInf)) {}

    const Series& to(long long n) {
        while (n_ < n) {
            Monomial f = x_ * base_.pow(n_);
            val_ *= one_minus(f.coeff(), f.exponent, D_, Series::kInf);
            ++n_;
        }
        return val_;
    }

private:
    Monomial x_, base_;
    int D_;
    long long n_;
    Series val_;
};

struct Ctx {
    int D;
    long long ot;
    int cutoff = 4;
};

using TermFn = std::function<Series(const Ctx&, long long)>;
using LeadFn = std::function<QExp(long long)>;

// sum over n >= n0 with the 4-in-a-row cutoff on the leading exponent
Series esum(const Ctx& c, long long n0, const LeadFn& lead, const TermFn& term) {
    Series acc(c.D, c.ot);
    long long misses = 0;
    for (long long n = n0; misses < c.cutoff; ++n) {
        if (ticks_floor(lead(n), c.D) > c.ot) {
            ++misses;
            continue;
        }
        misses = 0;
        acc += term(c, n);
        if (n > 100000) throw NonTruncatable("Eulerian sum does not truncate");
    }
    return acc;
}

Series build(const std::string& id, const Ctx& c) {
    const int D = c.D;
    const long long W = c.ot;
    auto S1 = [&] { return Series::constant(CycRat(1), D, Series::kInf); };
    auto mono = [&](Monomial m) { return Series::monomial(m, D, Series::kInf); };
    auto sgn = [](long long n) { return n % 2 == 0 ? 1 : -1; };

    // chains are local so each id owns its own state
    if (id == "A2") {
        FwdChain num(neg(qp(2)), qp(2), D);
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n + 1); },
                    [&](const Ctx&, long long n) { return mono(qp(n + 1)) * num.to(n) * den.to(n + 1); });
    }
    if (id == "A2_alt") {
        FwdChain num(neg(qp(1)), qp(2), D);
        InvChain d1(qp(1), qp(2), D, W), d2(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp((n + 1) * (n + 1)); },
                    [&](const Ctx&, long long n) {
                        return mono(qp((n + 1) * (n + 1))) * num.to(n) * d1.to(n + 1) * d2.to(n + 1);
                    });
    }
    if (id == "B2") {
        FwdChain num(neg(qp(1)), qp(2), D);
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n); },
                    [&](const Ctx&, long long n) { return mono(qp(n)) * num.to(n) * den.to(n + 1); });
    }
    if (id == "B2_alt") {
        FwdChain num(neg(qp(2)), qp(2), D);
        InvChain d1(qp(1), qp(2), D, W), d2(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n + n); },
                    [&](const Ctx&, long long n) {
                        return mono(qp(n * n + n)) * num.to(n) * d1.to(n + 1) * d2.to(n + 1);
                    });
    }
    if (id == "mu2") {
        FwdChain num(qp(1), qp(2), D);
        InvChain d1(neg(qp(2)), qp(2), D, W), d2(neg(qp(2)), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) {
                        Series t = mono(qp(n * n)) * num.to(n) * d1.to(n) * d2.to(n);
                        return sgn(n) > 0 ? t : -t;
                    });
    }
    if (id == "f3") {
        InvChain d1(neg(qp(1)), qp(1), D, W), d2(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * d1.to(n) * d2.to(n); });
    }
    if (id == "phi3") {
        InvChain den(neg(qp(2)), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * den.to(n); });
    }
    if (id == "psi3") {
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 1, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * den.to(n); });
    }
    if (id == "chi3") {
        FwdChain num(neg(qp(1)), qp(1), D);
        InvChain den(neg(qp(3)), qp(3), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * num.to(n) * den.to(n); });
    }
    if (id == "omega3") {
        InvChain d1(qp(1), qp(2), D, W), d2(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(2 * n * (n + 1)); },
                    [&](const Ctx&, long long n) {
                        return mono(qp(2 * n * (n + 1))) * d1.to(n + 1) * d2.to(n + 1);
                    });
    }
    if (id == "nu3") {
        InvChain den(neg(qp(1)), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * (n + 1)); },
                    [&](const Ctx&, long long n) { return mono(qp(n * (n + 1))) * den.to(n + 1); });
    }
    if (id == "rho3") {
        FwdChain num(qp(1), qp(2), D);
        InvChain den(qp(3), qp(6), D, W);
        return esum(c, 0, [](long long n) { return QExp(2 * n * (n + 1)); },
                    [&](const Ctx&, long long n) {
                        return mono(qp(2 * n * (n + 1))) * num.to(n + 1) * den.to(n + 1);
                    });
    }
    if (id == "f0_5") {
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * den.to(n); });
    }
    if (id == "phi0_5") {
        FwdChain num(neg(qp(1)), qp(2), D);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * num.to(n); });
    }
    if (id == "psi0_5") {
        FwdChain num(neg(qp(1)), qp(1), D);
        return esum(c, 0, [](long long n) { return QExp((n + 2) * (n + 1) / 2); },
                    [&](const Ctx&, long long n) { return mono(qp((n + 2) * (n + 1) / 2)) * num.to(n); });
    }
    if (id == "F0_5") {
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(2 * n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(2 * n * n)) * den.to(n); });
    }
    if (id == "f1_5") {
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * (n + 1)); },
                    [&](const Ctx&, long long n) { return mono(qp(n * (n + 1))) * den.to(n); });
    }
    if (id == "phi1_5") {
        FwdChain num(neg(qp(1)), qp(2), D);
        return esum(c, 0, [](long long n) { return QExp((n + 1) * (n + 1)); },
                    [&](const Ctx&, long long n) { return mono(qp((n + 1) * (n + 1))) * num.to(n); });
    }
    if (id == "psi1_5") {
        FwdChain num(neg(qp(1)), qp(1), D);
        return esum(c, 0, [](long long n) { return QExp(n * (n + 1) / 2); },
                    [&](const Ctx&, long long n) { return mono(qp(n * (n + 1) / 2)) * num.to(n); });
    }
    if (id == "F1_5") {
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(2 * n * (n + 1)); },
                    [&](const Ctx&, long long n) { return mono(qp(2 * n * (n + 1))) * den.to(n + 1); });
    }
    if (id == "chi0_5" || id == "chi1_5" || id == "F0_7" || id == "F1_7" || id == "F2_7") {
        // denominators with a moving left end: compute each term directly
        long long extra = (id == "chi1_5" || id == "F2_7") ? 1 : 0;
        long long n0 = (id == "F1_7") ? 1 : 0;
        auto lead = [&](long long n) {
            if (id == "chi0_5" || id == "chi1_5") return QExp(n);
            if (id == "F2_7") return QExp(n * n + n);
            return QExp(n * n);
        };
        auto shift = (id == "F1_7") ? 0 : 1; // (q^{n+shift};q)_{n+extra}
        return esum(c, n0, lead, [&, extra, shift](const Ctx& cc, long long n) {
            Series den = pochhammer_finite(qp(n + shift), n + extra, qp(1), cc.D, cc.ot);
            Series t = Series(cc.D, cc.ot) + mono(Monomial::q_pow(lead(n)));
            return t * den.inverted();
        });
    }
    if (id == "phi6") {
        FwdChain num(qp(1), qp(2), D);
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) {
                        Series t = mono(qp(n * n)) * num.to(n) * den.to(2 * n);
                        return sgn(n) > 0 ? t : -t;
                    });
    }
    if (id == "psi6") {
        FwdChain num(qp(1), qp(2), D);
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp((n + 1) * (n + 1)); },
                    [&](const Ctx&, long long n) {
                        Series t = mono(qp((n + 1) * (n + 1))) * num.to(n) * den.to(2 * n + 1);
                        return sgn(n) > 0 ? t : -t;
                    });
    }
    if (id == "rho6" || id == "sigma6") {
        long long off = (id == "rho6") ? 1 : 2;
        FwdChain num(neg(qp(1)), qp(1), D);
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 0, [=](long long n) { return QExp((n + off) * (n + off - 1) / 2); },
                    [&](const Ctx&, long long n) {
                        return mono(qp((n + off) * (n + off - 1) / 2)) * num.to(n) * den.to(n + 1);
                    });
    }
    if (id == "lambda6") {
        FwdChain num(qp(1), qp(2), D);
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp(n); },
                    [&](const Ctx&, long long n) {
                        Series t = mono(qp(n)) * num.to(n) * den.to(n);
                        return sgn(n) > 0 ? t : -t;
                    });
    }
    if (id == "mu6") {
        FwdChain num(qp(1), qp(2), D);
        InvChain den(neg(qp(1)), qp(1), D, W);
        Series s = esum(c, 0, [](long long n) { return QExp(n + 1); },
                        [&](const Ctx&, long long n) {
                            Series t = mono(qp(n + 1)) * (S1() + mono(qp(n))) * num.to(n) * den.to(n + 1);
                            return sgn(n) > 0 ? t : -t;
                        });
        return Series::constant(CycRat(Rational(1, 2)), D, Series::kInf) +
               s.scaled(CycRat(Rational(1, 2)));
    }
    if (id == "gamma6") {
        FwdChain num(qp(1), qp(1), D);
        InvChain den(qp(3), qp(3), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * num.to(n) * den.to(n); });
    }
    if (id == "phi_minus6") {
        FwdChain num(neg(qp(1)), qp(1), D);
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 1, [](long long n) { return QExp(n); },
                    [&](const Ctx&, long long n) { return mono(qp(n)) * num.to(2 * n - 1) * den.to(n); });
    }
    if (id == "psi_minus6") {
        FwdChain num(neg(qp(1)), qp(1), D);
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 1, [](long long n) { return QExp(n); },
                    [&](const Ctx&, long long n) { return mono(qp(n)) * num.to(2 * n - 2) * den.to(n); });
    }
    if (id == "H6") {
        FwdChain num(qp(1), qp(2), D);
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp(2 * n + 1); },
                    [&](const Ctx&, long long n) {
                        Series t = mono(qp(2 * n + 1)) * num.to(n) * den.to(n);
                        return sgn(n) > 0 ? t : -t;
                    });
    }
    if (id == "S0_8") {
        FwdChain num(neg(qp(1)), qp(2), D);
        InvChain den(neg(qp(2)), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * num.to(n) * den.to(n); });
    }
    if (id == "S1_8") {
        FwdChain num(neg(qp(1)), qp(2), D);
        InvChain den(neg(qp(2)), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * (n + 2)); },
                    [&](const Ctx&, long long n) { return mono(qp(n * (n + 2))) * num.to(n) * den.to(n); });
    }
    if (id == "T0_8") {
        FwdChain num(neg(qp(2)), qp(2), D);
        InvChain den(neg(qp(1)), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp((n + 1) * (n + 2)); },
                    [&](const Ctx&, long long n) {
                        return mono(qp((n + 1) * (n + 2))) * num.to(n) * den.to(n + 1);
                    });
    }
    if (id == "T1_8") {
        FwdChain num(neg(qp(2)), qp(2), D);
        InvChain den(neg(qp(1)), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * (n + 1)); },
                    [&](const Ctx&, long long n) {
                        return mono(qp(n * (n + 1))) * num.to(n) * den.to(n + 1);
                    });
    }
    if (id == "U0_8") {
        FwdChain num(neg(qp(1)), qp(2), D);
        InvChain den(neg(qp(4)), qp(4), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) { return mono(qp(n * n)) * num.to(n) * den.to(n); });
    }
    if (id == "U1_8") {
        FwdChain num(neg(qp(1)), qp(2), D);
        InvChain den(neg(qp(2)), qp(4), D, W);
        return esum(c, 0, [](long long n) { return QExp((n + 1) * (n + 1)); },
                    [&](const Ctx&, long long n) {
                        return mono(qp((n + 1) * (n + 1))) * num.to(n) * den.to(n + 1);
                    });
    }
    if (id == "V0_8") {
        FwdChain num(neg(qp(1)), qp(2), D);
        InvChain den(qp(1), qp(2), D, W);
        Series s = esum(c, 0, [](long long n) { return QExp(n * n); },
                        [&](const Ctx&, long long n) { return mono(qp(n * n)) * num.to(n) * den.to(n); });
        return s.scaled(CycRat(2)) - Series::constant(CycRat(1), D, Series::kInf);
    }
    if (id == "V0_8_alt") {
        FwdChain num(neg(qp(2)), qp(4), D);
        InvChain den(qp(1), qp(2), D, W);
        Series s = esum(c, 0, [](long long n) { return QExp(2 * n * n); },
                        [&](const Ctx&, long long n) {
                            return mono(qp(2 * n * n)) * num.to(n) * den.to(2 * n + 1);
                        });
        return s.scaled(CycRat(2)) - Series::constant(CycRat(1), D, Series::kInf);
    }
    if (id == "V1_8") {
        FwdChain num(neg(qp(1)), qp(2), D);
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp((n + 1) * (n + 1)); },
                    [&](const Ctx&, long long n) {
                        return mono(qp((n + 1) * (n + 1))) * num.to(n) * den.to(n + 1);
                    });
    }
    if (id == "V1_8_alt2") {
        FwdChain num(neg(qp(4)), qp(4), D);
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(2 * n * n + 2 * n + 1); },
                    [&](const Ctx&, long long n) {
                        return mono(qp(2 * n * n + 2 * n + 1)) * num.to(n) * den.to(2 * n + 2);
                    });
    }
    if (id == "V1_8_alt3") {
        FwdChain num(neg(qp(1)), qp(1), D);
        InvChain den(neg(qp(2)), qp(4), D, W);
        return esum(c, 0, [](long long n) { return QExp(n + 1); },
                    [&](const Ctx&, long long n) {
                        return mono(qp(n + 1)) * num.to(2 * n) * den.to(n + 1);
                    });
    }
    if (id == "phi10") {
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * (n + 1) / 2); },
                    [&](const Ctx&, long long n) { return mono(qp(n * (n + 1) / 2)) * den.to(n + 1); });
    }
    if (id == "psi10") {
        InvChain den(qp(1), qp(2), D, W);
        return esum(c, 1, [](long long n) { return QExp(n * (n + 1) / 2); },
                    [&](const Ctx&, long long n) { return mono(qp(n * (n + 1) / 2)) * den.to(n); });
    }
    if (id == "X10") {
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) {
                        Series t = mono(qp(n * n)) * den.to(2 * n);
                        return sgn(n) > 0 ? t : -t;
                    });
    }
    if (id == "chi10") {
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 1, [](long long n) { return QExp(n * n); },
                    [&](const Ctx&, long long n) {
                        Series t = mono(qp(n * n)) * den.to(2 * n - 1);
                        return sgn(n) > 0 ? -t : t;
                    });
    }
    if (id == "sigma_ADH") {
        InvChain den(neg(qp(1)), qp(1), D, W);
        return esum(c, 0, [](long long n) { return QExp(n * (n + 1) / 2); },
                    [&](const Ctx&, long long n) { return mono(qp(n * (n + 1) / 2)) * den.to(n); });
    }
    throw EvalError("unknown named function: " + id);
}

const std::vector<std::string> kIds = {
    "A2", "A2_alt", "B2", "B2_alt", "mu2",
    "f3", "phi3", "psi3", "chi3", "omega3", "nu3", "rho3",
    "f0_5", "phi0_5", "psi0_5", "F0_5", "f1_5", "phi1_5", "psi1_5", "F1_5", "chi0_5", "chi1_5",
    "phi6", "psi6", "rho6", "sigma6", "lambda6", "mu6", "gamma6", "phi_minus6", "psi_minus6", "H6",
    "S0_8", "S1_8", "T0_8", "T1_8", "U0_8", "U1_8", "V0_8", "V0_8_alt", "V1_8", "V1_8_alt2", "V1_8_alt3",
    "F0_7", "F1_7", "F2_7", "phi10", "psi10", "X10", "chi10", "sigma_ADH",
};

std::mutex g_cache_mutex;
std::map<std::tuple<std::string, int, long long>, Series> g_cache;

} // namespace

bool is_zoo_function(const std::string& id) {
    for (const auto& s : kIds)
        if (s == id) return true;
    return false;
}

const std::vector<std::string>& zoo_function_ids() { return kIds; }

Series eulerian(const std::string& id, int D, const QExp& order, int cutoff_window) {
    long long ot = ticks_floor(order, D);
    if (cutoff_window != 4) return build(id, Ctx{D, ot, cutoff_window});
    std::tuple<std::string, int, long long> key{id, D, ot};
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    Series s = build(id, Ctx{D, ot});
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        g_cache.emplace(key, s);
    }
    return s;
}

Series universal_g(const Monomial& x, const Monomial& base, int D, const QExp& order) {
    if (x.zero) throw PoleError("g(x,q) requires nonzero x");
    long long ot = ticks_floor(order, D);
    Ctx c{D, ot, 4};
    InvChain d1(x, base, D, ot), d2(base / x, base, D, ot);
    return esum(c, 0,
                [&](long long n) { return base.exponent * (n * (n + 1)); },
                [&](const Ctx& cc, long long n) {
                    Series t = Series(cc.D, cc.ot) + Series::monomial(base.pow(n * (n + 1)), cc.D, Series::kInf);
                    return t * d1.to(n + 1) * d2.to(n + 1);
                });
}

} // namespace qmock
