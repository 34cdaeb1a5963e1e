#pragma once

#include <stdexcept>
#include <string>

namespace qmock {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in coefficient field") {}
};

struct DenominatorMismatch : Error {
    explicit DenominatorMismatch(const std::string& what) : Error(what) {}
};

struct ZeroSeries : Error {
    ZeroSeries() : Error("cannot invert the zero series") {}
};

struct FractionalExponentNegation : Error {
    FractionalExponentNegation()
        : Error("q -> -q substitution requires integral exponents") {}
};

struct InsufficientValidity : Error {
    explicit InsufficientValidity(const std::string& what) : Error(what) {}
};

struct NonConvergentProduct : Error {
    explicit NonConvergentProduct(const std::string& what) : Error(what) {}
};

struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error(what) {}
};

struct NonGenericParameters : Error {
    explicit NonGenericParameters(const std::string& what) : Error(what) {}
};

struct UnboundedEnumeration : Error {
    explicit UnboundedEnumeration(const std::string& what) : Error(what) {}
};

struct NonTruncatable : Error {
    explicit NonTruncatable(const std::string& what) : Error(what) {}
};

struct SyntaxError : Error {
    int line;
    int col;
    SyntaxError(int line_, int col_, const std::string& what)
        : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + what),
          line(line_), col(col_) {}
};

struct UnknownIdentity : Error {
    explicit UnknownIdentity(const std::string& id) : Error("unknown identity: " + id) {}
};

struct UnknownTheorem : Error {
    explicit UnknownTheorem(const std::string& id) : Error("unknown theorem: " + id) {}
};

struct EvalError : Error {
    explicit EvalError(const std::string& what) : Error(what) {}
};

} // namespace qmock
