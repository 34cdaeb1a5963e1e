#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmock/dsl.hpp"

namespace qmock {

struct Identity {
    std::string id;
    std::string section;
    std::set<std::string> tags;
    int D = 1;
    QExp default_order{40};
    dsl::ExprPtr lhs;
    dsl::ExprPtr rhs;
    std::string lhs_text;
    std::string rhs_text;
    // provenance of corollaries obtained by specializing a parameterized theorem
    struct Derivation {
        std::string theorem;
        std::string a, b;
        long long qpow = 1;
    };
    std::optional<Derivation> derived_from;
};

struct ParamTheorem {
    std::string id;
    std::string section;
    int D = 1;
    QExp default_order{40};
    dsl::ExprPtr lhs; // placeholders A, B enter only through pochdual / polynomial factors
    dsl::ExprPtr rhs;
    std::string lhs_text;
    std::string rhs_text;
    std::string constraints; // analytic |.|<1 side conditions; informational only
    struct Spec {
        std::string a, b;
        long long qpow = 1;
        std::string corollary;
    };
    std::vector<Spec> specializations;
};

struct VerificationReport {
    std::string id;
    QExp order;
    enum class Status { Pass, Fail, Error } status = Status::Error;
    std::optional<Series::Mismatch> first_mismatch;
    std::string error;
    long long elapsed_ms = 0;
};

class Registry {
public:
    // loads the catalog from `path`, or from QMOCK_CATALOG / the built-in
    // default location when empty
    explicit Registry(const std::string& path = "");

    const std::vector<Identity>& identities() const { return identities_; }
    const std::vector<ParamTheorem>& theorems() const { return theorems_; }

    const Identity* find(const std::string& id) const;
    const ParamTheorem* find_theorem(const std::string& id) const;

    std::vector<const Identity*> list(const std::set<std::string>& tags) const;

    VerificationReport verify(const std::string& id, std::optional<QExp> order = std::nullopt) const;
    VerificationReport verify(const Identity& ident, std::optional<QExp> order = std::nullopt) const;

    // substitute (a, b) (monomial DSL text) into a theorem template, after
    // rescaling q -> q^qpow; yields an Identity ready for verification
    Identity specialize(const std::string& thm_id, const std::string& a, const std::string& b,
                        long long qpow = 1) const;

    std::vector<VerificationReport> verify_all(std::optional<QExp> order = std::nullopt,
                                               bool parallel = false) const;

    static std::string default_path();

private:
    std::vector<Identity> identities_;
    std::vector<ParamTheorem> theorems_;
};

} // namespace qmock
