#include "qmock/dsl.hpp"

#include <cctype>
#include <sstream>

namespace qmock {
namespace dsl {

ExprPtr make_num(const Rational& r) {
    auto e = std::make_shared<Expr>(Kind::Num);
    e->num = r;
    e->num.canonicalize();
    return e;
}

ExprPtr make_var(const std::string& name) {
    auto e = std::make_shared<Expr>(Kind::Var);
    e->name = name;
    return e;
}

namespace {

ExprPtr mk(Kind k, std::vector<ExprPtr> args = {}, std::string name = {}) {
    auto e = std::make_shared<Expr>(k);
    e->args = std::move(args);
    e->name = std::move(name);
    return e;
}

struct Token {
    enum Type { Ident, Number, Op, End } type;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(tok_.line, tok_.col, msg + " (got '" + tok_.text + "')");
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) bump();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::End, "<end>", line_, col_};
            return;
        }
        char ch = s_[pos_];
        if (std::isdigit((unsigned char)ch)) {
            std::string t;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) { t += s_[pos_]; bump(); }
            tok_ = {Token::Number, t, tok_.line, tok_.col};
            return;
        }
        if (std::isalpha((unsigned char)ch) || ch == '_') {
            std::string t;
            while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
                t += s_[pos_];
                bump();
            }
            tok_ = {Token::Ident, t, tok_.line, tok_.col};
            return;
        }
        static const std::string ops = "+-*/^(),;";
        if (ops.find(ch) != std::string::npos) {
            tok_ = {Token::Op, std::string(1, ch), tok_.line, tok_.col};
            bump();
            return;
        }
        throw SyntaxError(line_, col_, std::string("unexpected character '") + ch + "'");
    }

    void bump() {
        if (s_[pos_] == '\n') { ++line_; col_ = 1; } else ++col_;
        ++pos_;
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) {}

    ExprPtr parse_all() {
        ExprPtr e = expr();
        if (lex_.peek().type != Token::End) lex_.fail("expected end of input");
        return e;
    }

private:
    Lexer lex_;

    bool accept_op(const char* op) {
        if (lex_.peek().type == Token::Op && lex_.peek().text == op) {
            lex_.next();
            return true;
        }
        return false;
    }

    void expect_op(const char* op) {
        if (!accept_op(op)) lex_.fail(std::string("expected '") + op + "'");
    }

    // rhs operands are evaluated into locals before the node is assembled, so
    // a parse error cannot fire inside a braced initializer (g++ 11 leaks the
    // already-built elements in that case)
    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            if (accept_op("+")) {
                ExprPtr rhs = term();
                e = mk(Kind::Add, {e, rhs});
            } else if (accept_op("-")) {
                ExprPtr rhs = term();
                e = mk(Kind::Sub, {e, rhs});
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (true) {
            if (accept_op("*")) {
                ExprPtr rhs = factor();
                e = mk(Kind::Mul, {e, rhs});
            } else if (accept_op("/")) {
                ExprPtr rhs = factor();
                e = mk(Kind::Div, {e, rhs});
            } else {
                return e;
            }
        }
    }

    ExprPtr factor() {
        if (accept_op("-")) {
            ExprPtr f = factor();
            if (f->kind == Kind::Num) return make_num(-f->num); // fold -literal
            return mk(Kind::Neg, {f});
        }
        ExprPtr e = atom();
        if (accept_op("^")) {
            ExprPtr ex = exponent();
            e = mk(Kind::Pow, {e, ex});
        }
        return e;
    }

    ExprPtr exponent() {
        if (lex_.peek().type == Token::Number) return make_num(Rational(lex_.next().text, 10));
        if (accept_op("-")) {
            if (lex_.peek().type == Token::Number) {
                return make_num(-Rational(lex_.next().text, 10));
            }
            lex_.fail("expected integer after '-' in exponent");
        }
        if (accept_op("(")) {
            ExprPtr e = expr();
            expect_op(")");
            return e;
        }
        if (lex_.peek().type == Token::Ident) return atom();
        lex_.fail("expected exponent");
    }

    ExprPtr atom() {
        const Token& t = lex_.peek();
        if (t.type == Token::Number) {
            return make_num(Rational(lex_.next().text, 10));
        }
        if (t.type == Token::Op && t.text == "(") {
            lex_.next();
            ExprPtr e = expr();
            expect_op(")");
            return e;
        }
        if (t.type != Token::Ident) lex_.fail("expected an atom");
        Token id = lex_.next();
        if (id.text == "q") {
            if (accept_op("^")) {
                ExprPtr ex = exponent();
                return mk(Kind::QPow, {ex});
            }
            return mk(Kind::QPow, {make_num(Rational(1))});
        }
        if (id.text == "inf") return mk(Kind::Inf);
        if (lex_.peek().type == Token::Op && lex_.peek().text == "(") {
            return call(id);
        }
        return make_var(id.text);
    }

    // argument groups: elements separated by ',', groups by ';'
    std::vector<std::vector<ExprPtr>> arg_groups() {
        expect_op("(");
        std::vector<std::vector<ExprPtr>> groups(1);
        if (accept_op(")")) return groups;
        while (true) {
            if (accept_op("-")) {
                // allow "-inf" as a bound
                if (lex_.peek().type == Token::Ident && lex_.peek().text == "inf") {
                    lex_.next();
                    groups.back().push_back(mk(Kind::NegInf));
                } else {
                    ExprPtr t = term();
                    ExprPtr negd = (t->kind == Kind::Num) ? make_num(-t->num) : mk(Kind::Neg, {t});
                    groups.back().push_back(continue_expr(negd));
                }
            } else {
                groups.back().push_back(expr());
            }
            if (accept_op(",")) continue;
            if (accept_op(";")) { groups.emplace_back(); continue; }
            expect_op(")");
            return groups;
        }
    }

    // after parsing a leading '-term', continue any +/- chain
    ExprPtr continue_expr(ExprPtr e) {
        while (true) {
            if (accept_op("+")) {
                ExprPtr rhs = term();
                e = mk(Kind::Add, {e, rhs});
            } else if (accept_op("-")) {
                ExprPtr rhs = term();
                e = mk(Kind::Sub, {e, rhs});
            } else {
                return e;
            }
        }
    }

    [[noreturn]] void arity_fail(const Token& id, const char* usage) {
        throw SyntaxError(id.line, id.col, std::string("bad arguments for ") + id.text + "; expected " + usage);
    }

    ExprPtr call(const Token& id) {
        auto groups = arg_groups();
        auto flat = [&]() {
            std::vector<ExprPtr> all;
            for (auto& g : groups) all.insert(all.end(), g.begin(), g.end());
            return all;
        };
        const std::string& f = id.text;
        if (f == "zeta") {
            auto a = flat();
            if (a.size() == 1) return mk(Kind::Zeta, {a[0]});
            if (a.size() == 2) return mk(Kind::Pow, {mk(Kind::Zeta, {a[0]}), a[1]});
            arity_fail(id, "zeta(n) or zeta(n, j)");
        }
        if (f == "aqprod") {
            if (groups.size() == 3 && groups[0].size() == 1 && groups[1].size() == 1 && groups[2].size() == 1)
                return mk(Kind::AQProd, {groups[0][0], groups[1][0], groups[2][0]});
            arity_fail(id, "aqprod(x; base; count)");
        }
        if (f == "pochdual") {
            if (groups.size() == 3 && groups[0].size() == 1 && groups[1].size() == 1 && groups[2].size() == 1)
                return mk(Kind::PochDual, {groups[0][0], groups[1][0], groups[2][0]});
            arity_fail(id, "pochdual(x; base; count)");
        }
        if (f == "j") {
            if (groups.size() == 2 && groups[1].size() == 1) {
                if (groups[0].size() == 1) return mk(Kind::Jac, {groups[0][0], groups[1][0]});
                // j(x1, x2, ...; base) is the product of the j's
                ExprPtr acc;
                for (auto& x : groups[0]) {
                    ExprPtr one = mk(Kind::Jac, {x, groups[1][0]});
                    acc = acc ? mk(Kind::Mul, {acc, one}) : one;
                }
                return acc;
            }
            arity_fail(id, "j(x[, x2, ...]; base)");
        }
        if (f == "jj" || f == "jjbar") {
            auto a = flat();
            if (a.size() == 2) return mk(f == "jj" ? Kind::JJ : Kind::JJbar, {a[0], a[1]});
            arity_fail(id, "jj(a, m)");
        }
        if (f == "jm") {
            auto a = flat();
            if (a.size() == 1) return mk(Kind::Jm, {a[0]});
            arity_fail(id, "jm(m)");
        }
        if (f == "m" || f == "mbar") {
            auto a = flat();
            if (a.size() == 3) return mk(f == "m" ? Kind::M : Kind::Mbar, {a[0], a[1], a[2]});
            arity_fail(id, "m(x, base, z)");
        }
        if (f == "f" || f == "fbar") {
            auto a = flat();
            if (a.size() == 6) return mk(f == "f" ? Kind::F : Kind::Fbar, a);
            arity_fail(id, "f(a,b,c, x, y; base)");
        }
        if (f == "g") {
            auto a = flat();
            if (a.size() == 2) return mk(Kind::UG, a);
            if (a.size() == 8) return mk(Kind::Gabc, a);
            arity_fail(id, "g(x, base) or g(a,b,c, x, y, z1, z0; base)");
        }
        if (f == "phinp") {
            auto a = flat();
            if (a.size() == 5) return mk(Kind::PhiNP, a);
            arity_fail(id, "phinp(n, p, x, y; base)");
        }
        if (f == "thetan2") {
            auto a = flat();
            if (a.size() == 4) return mk(Kind::ThetaN2, a);
            arity_fail(id, "thetan2(n, x, y; base)");
        }
        if (f == "h" || f == "k") {
            auto a = flat();
            if (a.size() == 2) return mk(f == "h" ? Kind::Hb : Kind::Kb, a);
            arity_fail(id, "h(x, base)");
        }
        if (f == "sum") {
            auto a = flat();
            if (a.size() == 4 && a[0]->kind == Kind::Var)
                return mk(Kind::SumN, {a[1], a[2], a[3]}, a[0]->name);
            arity_fail(id, "sum(var, lo, hi, body)");
        }
        if (f == "phi") {
            // phi(u1,...; l1,...; base; arg [; nterm])
            if (groups.size() == 4 || groups.size() == 5) {
                std::vector<ExprPtr> a;
                auto nu = make_num(Rational((long)groups[0].size()));
                auto nl = make_num(Rational((long)groups[1].size()));
                a.push_back(nu);
                a.push_back(nl);
                for (auto& x : groups[0]) a.push_back(x);
                for (auto& x : groups[1]) a.push_back(x);
                if (groups[2].size() != 1 || groups[3].size() != 1) arity_fail(id, "phi(u..; l..; base; arg[; n])");
                a.push_back(groups[2][0]);
                a.push_back(groups[3][0]);
                if (groups.size() == 5) {
                    if (groups[4].size() != 1) arity_fail(id, "phi(u..; l..; base; arg[; n])");
                    a.push_back(groups[4][0]);
                }
                return mk(Kind::Phi, a);
            }
            arity_fail(id, "phi(u..; l..; base; arg[; n])");
        }
        if (f == "negq") {
            auto a = flat();
            if (a.size() == 1) return mk(Kind::NegQ, a);
            arity_fail(id, "negq(expr)");
        }
        if (f == "qsub") {
            auto a = flat();
            if (a.size() == 2) return mk(Kind::QSubPow, a);
            arity_fail(id, "qsub(expr, k)");
        }
        // named function applied to +-q^k
        auto a = flat();
        if (a.size() == 1) return mk(Kind::Named, a, f);
        arity_fail(id, "name(q), name(q^k) or name(-q)");
    }
};

} // namespace

ExprPtr parse(const std::string& text) { return Parser(text).parse_all(); }

namespace {

int precedence_of(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void fmt(const ExprPtr& e, std::ostream& os, int parent_prec);

void fmt_paren(const ExprPtr& e, std::ostream& os, int prec, int parent_prec) {
    if (prec < parent_prec) {
        os << "(";
        fmt(e, os, 0);
        os << ")";
    } else {
        fmt(e, os, prec);
    }
}

void fmt_args(std::ostream& os, std::initializer_list<const ExprPtr*> groups_flat) {
    bool first = true;
    for (auto* p : groups_flat) {
        if (!first) os << ", ";
        fmt(*p, os, 0);
        first = false;
    }
}

void fmt(const ExprPtr& e, std::ostream& os, int parent_prec) {
    int prec = precedence_of(e->kind);
    switch (e->kind) {
        case Kind::Num: {
            if (e->num < 0) {
                if (parent_prec > 1) { os << "(" << e->num.get_str() << ")"; }
                else os << e->num.get_str();
            } else os << e->num.get_str();
            return;
        }
        case Kind::Zeta:
            os << "zeta(";
            fmt(e->args[0], os, 0);
            os << ")";
            return;
        case Kind::QPow: {
            bool is_one = e->args[0]->kind == Kind::Num && e->args[0]->num == 1;
            if (is_one) { os << "q"; return; }
            os << "q^(";
            fmt(e->args[0], os, 0);
            os << ")";
            return;
        }
        case Kind::Var: os << e->name; return;
        case Kind::Inf: os << "inf"; return;
        case Kind::NegInf: os << "-inf"; return;
        case Kind::Neg:
            os << "-";
            fmt_paren(e->args[0], os, precedence_of(e->args[0]->kind), prec + 1);
            return;
        case Kind::Add:
            fmt_paren(e->args[0], os, precedence_of(e->args[0]->kind), prec);
            os << " + ";
            fmt_paren(e->args[1], os, precedence_of(e->args[1]->kind), prec + 1);
            return;
        case Kind::Sub:
            fmt_paren(e->args[0], os, precedence_of(e->args[0]->kind), prec);
            os << " - ";
            fmt_paren(e->args[1], os, precedence_of(e->args[1]->kind), prec + 1);
            return;
        case Kind::Mul:
            fmt_paren(e->args[0], os, precedence_of(e->args[0]->kind), prec);
            os << "*";
            fmt_paren(e->args[1], os, precedence_of(e->args[1]->kind), prec + 1);
            return;
        case Kind::Div:
            fmt_paren(e->args[0], os, precedence_of(e->args[0]->kind), prec);
            os << "/";
            fmt_paren(e->args[1], os, precedence_of(e->args[1]->kind), prec + 1);
            return;
        case Kind::Pow:
            fmt_paren(e->args[0], os, precedence_of(e->args[0]->kind), prec + 1);
            os << "^(";
            fmt(e->args[1], os, 0);
            os << ")";
            return;
        case Kind::AQProd:
            os << "aqprod(";
            fmt(e->args[0], os, 0);
            os << "; ";
            fmt(e->args[1], os, 0);
            os << "; ";
            fmt(e->args[2], os, 0);
            os << ")";
            return;
        case Kind::PochDual:
            os << "pochdual(";
            fmt(e->args[0], os, 0);
            os << "; ";
            fmt(e->args[1], os, 0);
            os << "; ";
            fmt(e->args[2], os, 0);
            os << ")";
            return;
        case Kind::Jac:
            os << "j(";
            fmt(e->args[0], os, 0);
            os << "; ";
            fmt(e->args[1], os, 0);
            os << ")";
            return;
        case Kind::JJ: os << "jj("; fmt_args(os, {&e->args[0], &e->args[1]}); os << ")"; return;
        case Kind::JJbar: os << "jjbar("; fmt_args(os, {&e->args[0], &e->args[1]}); os << ")"; return;
        case Kind::Jm: os << "jm("; fmt(e->args[0], os, 0); os << ")"; return;
        case Kind::M: os << "m("; fmt_args(os, {&e->args[0], &e->args[1], &e->args[2]}); os << ")"; return;
        case Kind::Mbar: os << "mbar("; fmt_args(os, {&e->args[0], &e->args[1], &e->args[2]}); os << ")"; return;
        case Kind::F:
        case Kind::Fbar:
            os << (e->kind == Kind::F ? "f(" : "fbar(");
            fmt_args(os, {&e->args[0], &e->args[1], &e->args[2], &e->args[3], &e->args[4]});
            os << "; ";
            fmt(e->args[5], os, 0);
            os << ")";
            return;
        case Kind::Gabc:
            os << "g(";
            fmt_args(os, {&e->args[0], &e->args[1], &e->args[2], &e->args[3], &e->args[4], &e->args[5], &e->args[6]});
            os << "; ";
            fmt(e->args[7], os, 0);
            os << ")";
            return;
        case Kind::UG: os << "g("; fmt_args(os, {&e->args[0], &e->args[1]}); os << ")"; return;
        case Kind::PhiNP:
            os << "phinp(";
            fmt_args(os, {&e->args[0], &e->args[1], &e->args[2], &e->args[3]});
            os << "; ";
            fmt(e->args[4], os, 0);
            os << ")";
            return;
        case Kind::ThetaN2:
            os << "thetan2(";
            fmt_args(os, {&e->args[0], &e->args[1], &e->args[2]});
            os << "; ";
            fmt(e->args[3], os, 0);
            os << ")";
            return;
        case Kind::Hb: os << "h("; fmt_args(os, {&e->args[0], &e->args[1]}); os << ")"; return;
        case Kind::Kb: os << "k("; fmt_args(os, {&e->args[0], &e->args[1]}); os << ")"; return;
        case Kind::Named:
            os << e->name << "(";
            fmt(e->args[0], os, 0);
            os << ")";
            return;
        case Kind::SumN:
            os << "sum(" << e->name << ", ";
            fmt(e->args[0], os, 0);
            os << ", ";
            fmt(e->args[1], os, 0);
            os << ", ";
            fmt(e->args[2], os, 0);
            os << ")";
            return;
        case Kind::Phi: {
            long nu = (long)e->args[0]->num.get_num().get_si();
            long nl = (long)e->args[1]->num.get_num().get_si();
            os << "phi(";
            for (long i = 0; i < nu; ++i) {
                if (i) os << ", ";
                fmt(e->args[2 + i], os, 0);
            }
            os << "; ";
            for (long i = 0; i < nl; ++i) {
                if (i) os << ", ";
                fmt(e->args[2 + nu + i], os, 0);
            }
            os << "; ";
            fmt(e->args[2 + nu + nl], os, 0);
            os << "; ";
            fmt(e->args[3 + nu + nl], os, 0);
            if ((long)e->args.size() > 4 + nu + nl) {
                os << "; ";
                fmt(e->args[4 + nu + nl], os, 0);
            }
            os << ")";
            return;
        }
        case Kind::NegQ: os << "negq("; fmt(e->args[0], os, 0); os << ")"; return;
        case Kind::QSubPow:
            os << "qsub(";
            fmt_args(os, {&e->args[0], &e->args[1]});
            os << ")";
            return;
    }
}

} // namespace

std::string format(const ExprPtr& e) {
    std::ostringstream os;
    fmt(e, os, 0);
    return os.str();
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    if (a->kind == Kind::Num) return a->num == b->num;
    if (a->name != b->name) return false;
    if (a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!structurally_equal(a->args[i], b->args[i])) return false;
    return true;
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings) {
    if (e->kind == Kind::Var) {
        auto it = bindings.find(e->name);
        if (it != bindings.end()) return it->second;
        return e;
    }
    if (e->kind == Kind::SumN) {
        // the loop variable shadows any outer binding
        auto inner = bindings;
        inner.erase(e->name);
        auto r = std::make_shared<Expr>(*e);
        for (auto& a : r->args) a = substitute(a, inner);
        return r;
    }
    if (e->args.empty()) return e;
    auto r = std::make_shared<Expr>(*e);
    for (auto& a : r->args) a = substitute(a, bindings);
    return r;
}

ExprPtr scale_base(const ExprPtr& e, long long k) {
    if (k == 1) return e;
    switch (e->kind) {
        case Kind::QPow: {
            auto r = std::make_shared<Expr>(Kind::QPow);
            r->args = {mk(Kind::Mul, {make_num(Rational((long)k)), e->args[0]})};
            return r;
        }
        case Kind::JJ:
        case Kind::JJbar:
        case Kind::Jm: {
            auto r = std::make_shared<Expr>(*e);
            for (auto& a : r->args) a = mk(Kind::Mul, {make_num(Rational((long)k)), a});
            return r;
        }
        default: {
            if (e->args.empty()) return e;
            auto r = std::make_shared<Expr>(*e);
            for (auto& a : r->args) a = scale_base(a, k);
            return r;
        }
    }
}

} // namespace dsl
} // namespace qmock
