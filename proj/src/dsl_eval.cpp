#include <functional>
#include <unordered_map>

#include "qmock/blocks.hpp"
#include "qmock/conversion.hpp"
#include "qmock/dsl.hpp"
#include "qmock/hypergeom.hpp"
#include "qmock/thetafn.hpp"
#include "qmock/zoo.hpp"

namespace qmock {
namespace dsl {

namespace {

struct Env {
    std::map<std::string, long long> vars;
};

bool has_free_vars(const ExprPtr& e, const Env& env) {
    if (e->kind == Kind::Var) return !env.vars.count(e->name);
    if (e->kind == Kind::SumN) {
        Env inner = env;
        inner.vars[e->name] = 0;
        for (const auto& a : e->args)
            if (has_free_vars(a, inner)) return true;
        return false;
    }
    for (const auto& a : e->args)
        if (has_free_vars(a, env)) return true;
    return false;
}

bool depends_on_vars(const ExprPtr& e) {
    if (e->kind == Kind::Var) return true;
    for (const auto& a : e->args)
        if (depends_on_vars(a)) return true;
    return false;
}

// ---- numeric (exponent/count) evaluation ----------------------------------

Rational eval_num(const ExprPtr& e, const Env& env) {
    switch (e->kind) {
        case Kind::Num: return e->num;
        case Kind::Var: {
            auto it = env.vars.find(e->name);
            if (it == env.vars.end()) throw EvalError("unbound variable '" + e->name + "'");
            return Rational((long)it->second);
        }
        case Kind::Neg: return -eval_num(e->args[0], env);
        case Kind::Add: return eval_num(e->args[0], env) + eval_num(e->args[1], env);
        case Kind::Sub: return eval_num(e->args[0], env) - eval_num(e->args[1], env);
        case Kind::Mul: return eval_num(e->args[0], env) * eval_num(e->args[1], env);
        case Kind::Div: {
            Rational d = eval_num(e->args[1], env);
            if (d == 0) throw EvalError("division by zero in a numeric expression");
            return eval_num(e->args[0], env) / d;
        }
        case Kind::Pow: {
            Rational b = eval_num(e->args[0], env);
            Rational ex = eval_num(e->args[1], env);
            if (ex.get_den() != 1) throw EvalError("non-integer power in a numeric expression");
            long k = (long)ex.get_num().get_si();
            Rational r(1);
            bool invert = k < 0;
            for (long i = 0; i < (invert ? -k : k); ++i) r *= b;
            if (invert) {
                if (r == 0) throw EvalError("division by zero in a numeric expression");
                r = 1 / r;
            }
            return r;
        }
        default:
            throw EvalError("expected a numeric expression");
    }
}

long long eval_int(const ExprPtr& e, const Env& env, const char* what) {
    Rational r = eval_num(e, env);
    if (r.get_den() != 1) throw EvalError(std::string("expected an integer for ") + what);
    return r.get_num().get_si();
}

QExp eval_qexp(const ExprPtr& e, const Env& env) {
    Rational r = eval_num(e, env);
    return QExp(r.get_num().get_si(), r.get_den().get_si());
}

// ---- monomial evaluation ---------------------------------------------------

std::optional<Monomial> try_eval_mono(const ExprPtr& e, const Env& env) {
    switch (e->kind) {
        case Kind::Num: {
            if (e->num == 0) return Monomial::make_zero();
            if (e->num == 1) return Monomial::one();
            if (e->num == -1) return -Monomial::one();
            return std::nullopt;
        }
        case Kind::Zeta: {
            long long n = eval_int(e->args[0], env, "zeta order");
            if (n <= 0 || 24 % n != 0) return std::nullopt;
            Monomial m;
            m.root_power = (int)(24 / n % 24);
            return m;
        }
        case Kind::QPow: {
            Monomial m;
            m.exponent = eval_qexp(e->args[0], env);
            return m;
        }
        case Kind::Var: {
            auto it = env.vars.find(e->name);
            if (it == env.vars.end()) return std::nullopt;
            // integer-valued loop variables do not occur in monomial slots
            return std::nullopt;
        }
        case Kind::Neg: {
            auto m = try_eval_mono(e->args[0], env);
            if (!m) return std::nullopt;
            return -*m;
        }
        case Kind::Mul: {
            auto a = try_eval_mono(e->args[0], env);
            auto b = try_eval_mono(e->args[1], env);
            if (!a || !b) return std::nullopt;
            return *a * *b;
        }
        case Kind::Div: {
            auto a = try_eval_mono(e->args[0], env);
            auto b = try_eval_mono(e->args[1], env);
            if (!a || !b || b->zero) return std::nullopt;
            return *a / *b;
        }
        case Kind::Pow: {
            auto a = try_eval_mono(e->args[0], env);
            if (!a) return std::nullopt;
            long long k = eval_int(e->args[1], env, "power");
            if (a->zero && k < 0) return std::nullopt;
            return a->pow(k);
        }
        default:
            return std::nullopt;
    }
}

Monomial eval_mono(const ExprPtr& e, const Env& env, const char* what) {
    auto m = try_eval_mono(e, env);
    if (!m) throw EvalError(std::string("expected a monomial (c*q^e) for ") + what + ": " + format(e));
    return *m;
}

// ---- series evaluation ------------------------------------------------------

struct Ctx {
    int D;
    long long W; // window in ticks: all leaves are built exact to W

    // caches
    struct ChainKey {
        const Expr* node;
        std::string xb;
        bool operator==(const ChainKey& o) const { return node == o.node && xb == o.xb; }
    };
    struct ChainKeyHash {
        size_t operator()(const ChainKey& k) const {
            return std::hash<const void*>()(k.node) ^ std::hash<std::string>()(k.xb);
        }
    };
    struct Chain {
        Monomial x, base;
        long long n = 0;
        Series val;
    };
    std::unordered_map<ChainKey, Chain, ChainKeyHash> fwd, inv;
    std::map<std::string, Series> named_cache;
};

std::string mono_key(const Monomial& m) {
    if (m.zero) return "0";
    return std::to_string(m.sign) + "|" + std::to_string(m.root_power) + "|" + m.exponent.str();
}

QExp window_order(const Ctx& c) { return QExp(c.W, c.D); }

Series eval_s(const ExprPtr& e, Ctx& c, const Env& env);

// kind: 0 = (x;base)_n, 1 = 1/(x;base)_n, 2 = pochdual chain prod_{k<=n}(x - base^k)
Series chain_value(Ctx& c, const ExprPtr& node, const Monomial& x, const Monomial& base, long long n,
                   int kind) {
    if (n < 0) throw EvalError("negative Pochhammer count");
    Ctx::ChainKey key{node.get(), mono_key(x) + "/" + mono_key(base)};
    auto& table = kind == 1 ? c.inv : c.fwd;
    auto it = table.find(key);
    if (it == table.end() || it->second.n > n) {
        Ctx::Chain ch;
        ch.x = x;
        ch.base = base;
        ch.n = 0;
        ch.val = Series::constant(CycRat(1), c.D, kind == 1 ? c.W : Series::kInf);
        it = table.insert_or_assign(key, std::move(ch)).first;
    }
    Ctx::Chain& ch = it->second;
    while (ch.n < n) {
        if (kind == 2) {
            Monomial f = base.pow(ch.n + 1);
            Series factor = Series::monomial(-f, c.D, Series::kInf);
            if (!x.zero) factor += Series::monomial(x, c.D, Series::kInf);
            ch.val *= factor;
        } else {
            Monomial f = x * base.pow(ch.n);
            if (!f.zero) {
                if (kind == 1) {
                    if (f.is_one()) throw PoleError("vanishing factor in an inverted Pochhammer");
                    ch.val *= geometric_expand(f.coeff(), f.exponent, c.D, window_order(c));
                } else {
                    ch.val *= one_minus(f.coeff(), f.exponent, c.D, Series::kInf);
                }
            }
        }
        ++ch.n;
    }
    return ch.val;
}

// denominator-aware evaluation: series inverse of e
Series eval_inv(const ExprPtr& e, Ctx& c, const Env& env) {
    switch (e->kind) {
        case Kind::Mul:
            return eval_inv(e->args[0], c, env) * eval_inv(e->args[1], c, env);
        case Kind::Neg:
            return -eval_inv(e->args[0], c, env);
        case Kind::Pow: {
            long long k = eval_int(e->args[1], env, "power");
            if (k >= 0) return eval_inv(e->args[0], c, env).pow(k);
            return eval_s(e->args[0], c, env).pow(-k);
        }
        case Kind::AQProd: {
            Monomial x = eval_mono(e->args[0], env, "Pochhammer argument");
            Monomial base = eval_mono(e->args[1], env, "Pochhammer base");
            if (e->args[2]->kind == Kind::Inf) {
                Series s = eval_s(e, c, env);
                if (s.terms().empty()) throw PoleError("inverting a vanishing infinite product");
                return s.inverted();
            }
            long long n = eval_int(e->args[2], env, "Pochhammer count");
            bool movable = depends_on_vars(e->args[0]) || depends_on_vars(e->args[1]);
            if (movable) {
                Series s = Series(c.D, c.W) + eval_s(e, c, env);
                if (s.terms().empty()) throw PoleError("inverting a vanishing Pochhammer");
                return s.inverted();
            }
            return chain_value(c, e, x, base, n, 1);
        }
        default: {
            auto m = try_eval_mono(e, env);
            if (m) {
                if (m->zero) throw PoleError("division by the zero monomial");
                return Series::monomial(m->inverse(), c.D, Series::kInf);
            }
            Series s = eval_s(e, c, env);
            if (s.valid_to() >= Series::kInf) s = Series(c.D, c.W) + s;
            if (s.terms().empty()) throw ZeroSeries();
            return s.inverted();
        }
    }
}

Series eval_s(const ExprPtr& e, Ctx& c, const Env& env) {
    const int D = c.D;
    switch (e->kind) {
        case Kind::Num: {
            CycRat v{Rational(e->num)};
            return Series::constant(v, D, Series::kInf);
        }
        case Kind::Zeta: {
            long long n = eval_int(e->args[0], env, "zeta order");
            return Series::constant(CycRat::zeta(n), D, Series::kInf);
        }
        case Kind::QPow:
            return Series::monomial(eval_mono(e, env, "q power"), D, Series::kInf);
        case Kind::Var:
            throw EvalError("variable '" + e->name + "' used in a series position");
        case Kind::Neg:
            return -eval_s(e->args[0], c, env);
        case Kind::Add:
            return eval_s(e->args[0], c, env) + eval_s(e->args[1], c, env);
        case Kind::Sub:
            return eval_s(e->args[0], c, env) - eval_s(e->args[1], c, env);
        case Kind::Mul:
            return eval_s(e->args[0], c, env) * eval_s(e->args[1], c, env);
        case Kind::Div:
            return eval_s(e->args[0], c, env) * eval_inv(e->args[1], c, env);
        case Kind::Pow: {
            long long k = eval_int(e->args[1], env, "power");
            auto m = try_eval_mono(e->args[0], env);
            if (m && !(m->zero && k < 0)) return Series::monomial(m->pow(k), D, Series::kInf);
            if (k < 0) return eval_inv(e->args[0], c, env).pow(-k);
            return eval_s(e->args[0], c, env).pow(k);
        }
        case Kind::AQProd: {
            Monomial x = eval_mono(e->args[0], env, "Pochhammer argument");
            Monomial base = eval_mono(e->args[1], env, "Pochhammer base");
            if (e->args[2]->kind == Kind::Inf)
                return pochhammer_infinite(x, base, D, window_order(c));
            long long n = eval_int(e->args[2], env, "Pochhammer count");
            bool movable = depends_on_vars(e->args[0]) || depends_on_vars(e->args[1]);
            if (movable) return pochhammer_finite(x, n, base, D, Series::kInf);
            return chain_value(c, e, x, base, n, 0);
        }
        case Kind::PochDual: {
            Monomial x = eval_mono(e->args[0], env, "pochdual argument");
            Monomial base = eval_mono(e->args[1], env, "pochdual base");
            long long n = eval_int(e->args[2], env, "pochdual count");
            bool movable = depends_on_vars(e->args[0]) || depends_on_vars(e->args[1]);
            if (movable) return pochdual(x, n, base, D, Series::kInf);
            return chain_value(c, e, x, base, n, 2);
        }
        case Kind::Jac:
            return jacobi_j(eval_mono(e->args[0], env, "j argument"),
                            eval_mono(e->args[1], env, "j base"), D, window_order(c));
        case Kind::JJ: {
            ThetaRef r{ThetaRef::J, eval_qexp(e->args[0], env), eval_qexp(e->args[1], env)};
            return theta_shorthand(r, D, window_order(c));
        }
        case Kind::JJbar: {
            ThetaRef r{ThetaRef::Jbar, eval_qexp(e->args[0], env), eval_qexp(e->args[1], env)};
            return theta_shorthand(r, D, window_order(c));
        }
        case Kind::Jm: {
            ThetaRef r{ThetaRef::Jm, QExp(0), eval_qexp(e->args[0], env)};
            return theta_shorthand(r, D, window_order(c));
        }
        case Kind::M:
            return appell_m(eval_mono(e->args[0], env, "m: x"), eval_mono(e->args[1], env, "m: base"),
                            eval_mono(e->args[2], env, "m: z"), D, window_order(c));
        case Kind::Mbar:
            return false_m(eval_mono(e->args[0], env, "mbar: x"), eval_mono(e->args[1], env, "mbar: base"),
                           eval_mono(e->args[2], env, "mbar: z"), D, window_order(c));
        case Kind::F:
        case Kind::Fbar: {
            HeckeParams p{eval_int(e->args[0], env, "f: a"), eval_int(e->args[1], env, "f: b"),
                          eval_int(e->args[2], env, "f: c")};
            Monomial x = eval_mono(e->args[3], env, "f: x");
            Monomial y = eval_mono(e->args[4], env, "f: y");
            Monomial base = eval_mono(e->args[5], env, "f: base");
            return e->kind == Kind::F ? hecke_f(p, x, y, base, D, window_order(c))
                                      : false_f(p, x, y, base, D, window_order(c));
        }
        case Kind::Gabc:
            return g_abc(eval_int(e->args[0], env, "g: a"), eval_int(e->args[1], env, "g: b"),
                         eval_int(e->args[2], env, "g: c"), eval_mono(e->args[3], env, "g: x"),
                         eval_mono(e->args[4], env, "g: y"), eval_mono(e->args[7], env, "g: base"),
                         eval_mono(e->args[5], env, "g: z1"), eval_mono(e->args[6], env, "g: z0"),
                         D, window_order(c));
        case Kind::UG:
            return universal_g(eval_mono(e->args[0], env, "g: x"), eval_mono(e->args[1], env, "g: base"),
                               D, window_order(c));
        case Kind::PhiNP:
            return phi_np(eval_int(e->args[0], env, "phinp: n"), eval_int(e->args[1], env, "phinp: p"),
                          eval_mono(e->args[2], env, "phinp: x"), eval_mono(e->args[3], env, "phinp: y"),
                          eval_mono(e->args[4], env, "phinp: base"), D, window_order(c));
        case Kind::ThetaN2:
            return theta_n2(eval_int(e->args[0], env, "thetan2: n"),
                            eval_mono(e->args[1], env, "thetan2: x"),
                            eval_mono(e->args[2], env, "thetan2: y"),
                            eval_mono(e->args[3], env, "thetan2: base"), D, window_order(c));
        case Kind::Hb:
            return h_block(eval_mono(e->args[0], env, "h: x"), eval_mono(e->args[1], env, "h: base"),
                           D, window_order(c));
        case Kind::Kb:
            return k_block(eval_mono(e->args[0], env, "k: x"), eval_mono(e->args[1], env, "k: base"),
                           D, window_order(c));
        case Kind::Named: {
            if (!is_zoo_function(e->name))
                throw EvalError("unknown function '" + e->name + "'");
            Monomial arg = eval_mono(e->args[0], env, "function argument");
            if (arg.zero || arg.root_power % 24 != 0 || !(QExp(0) < arg.exponent) ||
                !arg.exponent.is_integer())
                throw EvalError("argument of " + e->name + " must be +-q^k with integer k >= 1");
            long long k = arg.exponent.num;
            std::string key = e->name + "@" + std::to_string(arg.sign) + "^" + std::to_string(k);
            auto it = c.named_cache.find(key);
            if (it != c.named_cache.end()) return it->second;
            long long inner_w = c.W / k + 2;
            Series s = eulerian(e->name, D, QExp(inner_w, D));
            if (k > 1) s = s.subst_q_pow(k);
            if (arg.sign < 0) s = s.subst_q_neg();
            c.named_cache.emplace(key, s);
            return s;
        }
        case Kind::SumN: {
            bool lo_ninf = e->args[0]->kind == Kind::NegInf;
            bool hi_inf = e->args[1]->kind == Kind::Inf;
            Series acc(D, c.W);
            Env inner = env;
            auto body_at = [&](long long n) {
                inner.vars[e->name] = n;
                return eval_s(e->args[2], c, inner);
            };
            if (!lo_ninf && !hi_inf) {
                long long lo = eval_int(e->args[0], env, "sum lower bound");
                long long hi = eval_int(e->args[1], env, "sum upper bound");
                Series exact(D, Series::kInf);
                for (long long n = lo; n <= hi; ++n) exact += body_at(n);
                return exact;
            }
            auto run_dir = [&](long long start, long long step) {
                long long misses = 0;
                for (long long n = start; misses < 4; n += step) {
                    Series t = body_at(n);
                    if (t.terms().empty() || t.min_exp_ticks() > c.W) ++misses;
                    else misses = 0;
                    acc += t;
                    if (n > 1000000 || n < -1000000)
                        throw NonTruncatable("sum does not leave the truncation window");
                }
            };
            if (!lo_ninf) {
                long long lo = eval_int(e->args[0], env, "sum lower bound");
                run_dir(lo, 1);
            } else if (!hi_inf) {
                long long hi = eval_int(e->args[1], env, "sum upper bound");
                run_dir(hi, -1);
            } else {
                run_dir(0, 1);
                run_dir(-1, -1);
            }
            return acc;
        }
        case Kind::Phi: {
            PhiSpec spec;
            long nu = (long)e->args[0]->num.get_num().get_si();
            long nl = (long)e->args[1]->num.get_num().get_si();
            for (long i = 0; i < nu; ++i)
                spec.uppers.push_back(eval_mono(e->args[2 + i], env, "phi upper"));
            for (long i = 0; i < nl; ++i)
                spec.lowers.push_back(eval_mono(e->args[2 + nu + i], env, "phi lower"));
            spec.base = eval_mono(e->args[2 + nu + nl], env, "phi base");
            spec.argument = eval_mono(e->args[3 + nu + nl], env, "phi argument");
            if ((long)e->args.size() > 4 + nu + nl)
                spec.n_terminate = eval_int(e->args[4 + nu + nl], env, "phi terminate");
            return phi_eval(spec, D, window_order(c));
        }
        case Kind::NegQ:
            return eval_s(e->args[0], c, env).subst_q_neg();
        case Kind::QSubPow: {
            long long k = eval_int(e->args[1], env, "substitution power");
            // evaluate the inner expression over a window that maps onto ours
            Ctx inner = c;
            inner.W = c.W / k + 2;
            inner.fwd.clear();
            inner.inv.clear();
            inner.named_cache.clear();
            Series s = eval_s(e->args[0], inner, env);
            return s.subst_q_pow(k);
        }
        case Kind::Inf:
        case Kind::NegInf:
            throw EvalError("'inf' outside a bound position");
    }
    throw EvalError("unhandled expression kind");
}

} // namespace

Series eval_window(const ExprPtr& e, int D, long long window_ticks) {
    Ctx c;
    c.D = D;
    c.W = window_ticks;
    Env env;
    return eval_s(e, c, env);
}

std::optional<Monomial> as_monomial(const ExprPtr& e) {
    Env env;
    return try_eval_mono(e, env);
}

Series eval(const ExprPtr& e, const QExp& order, int D) {
    Series::check_D(D);
    if ((order.num * D) % order.den != 0 && order.den > 1) {
        // order not on the tick grid: round up
    }
    long long target = (order.num * D) / order.den;
    long long margin = 4;
    for (int attempt = 0; attempt < 7; ++attempt) {
        Series s = eval_window(e, D, target + margin);
        if (s.valid_to() >= target) return s;
        margin *= 3;
    }
    throw InsufficientValidity("could not reach validity q^" + order.str() + " for: " + format(e));
}

} // namespace dsl
} // namespace qmock
