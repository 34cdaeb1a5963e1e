#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmock/series.hpp"

namespace qmock {

namespace dsl {

enum class Kind {
    Num, Zeta, QPow, Var,
    Neg, Add, Sub, Mul, Div, Pow,
    AQProd, PochDual,
    Jac, JJ, JJbar, Jm,
    M, Mbar, F, Fbar, Gabc, UG, PhiNP, ThetaN2, Hb, Kb,
    Named, SumN, Phi, NegQ, QSubPow,
    Inf, NegInf,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    Kind kind;
    Rational num;                 // Num literal
    std::string name;             // Var name, Named id, Sum variable
    std::vector<ExprPtr> args;

    explicit Expr(Kind k) : kind(k) {}
};

ExprPtr make_num(const Rational& r);
ExprPtr make_var(const std::string& name);

// parse a DSL expression; throws SyntaxError with line/column info
ExprPtr parse(const std::string& text);

// canonical textual form; parse(format(e)) is structurally equal to e
std::string format(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// substitute monomial-valued expressions for free variables (template placeholders)
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings);

// q -> q^k structural rescaling (multiplies every q-exponent by k)
ExprPtr scale_base(const ExprPtr& e, long long k);

// evaluate to an exact truncated series; all coefficients with exponent
// <= order are guaranteed exact (InsufficientValidity if unattainable)
Series eval(const ExprPtr& e, const QExp& order, int D);

// evaluate with an explicit window in ticks, without the retry loop
Series eval_window(const ExprPtr& e, int D, long long window_ticks);

// monomial value of a closed expression, when it has one
std::optional<Monomial> as_monomial(const ExprPtr& e);

} // namespace dsl

} // namespace qmock
