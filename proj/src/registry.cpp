#include "qmock/registry.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

namespace qmock {

namespace {

using nlohmann::json;

QExp parse_order(const json& j) {
    if (j.is_number_integer()) return QExp(j.get<long long>());
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return QExp(std::stoll(s));
    return QExp(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

} // namespace

std::string Registry::default_path() {
    if (const char* env = std::getenv("QMOCK_CATALOG")) return env;
#ifdef QMOCK_DEFAULT_CATALOG
    return QMOCK_DEFAULT_CATALOG;
#else
    return "data/catalog.json";
#endif
}

Registry::Registry(const std::string& path) {
    std::string p = path.empty() ? default_path() : path;
    std::ifstream in(p);
    if (!in) throw Error("cannot open catalog: " + p);
    json doc = json::parse(in);
    for (const auto& j : doc.at("identities")) {
        Identity ident;
        ident.id = j.at("id").get<std::string>();
        ident.section = j.value("section", "");
        if (j.contains("tags"))
            for (const auto& t : j["tags"]) ident.tags.insert(t.get<std::string>());
        ident.D = j.value("D", 1);
        ident.default_order = j.contains("order") ? parse_order(j["order"]) : QExp(40);
        ident.lhs_text = j.at("lhs").get<std::string>();
        ident.rhs_text = j.at("rhs").get<std::string>();
        try {
            ident.lhs = dsl::parse(ident.lhs_text);
            ident.rhs = dsl::parse(ident.rhs_text);
        } catch (const SyntaxError& err) {
            throw Error("catalog entry " + ident.id + ": " + err.what());
        }
        if (j.contains("derived_from")) {
            const auto& d = j["derived_from"];
            Identity::Derivation dv;
            dv.theorem = d.at("thm").get<std::string>();
            dv.a = d.at("a").get<std::string>();
            dv.b = d.at("b").get<std::string>();
            dv.qpow = d.value("qpow", 1);
            ident.derived_from = dv;
        }
        identities_.push_back(std::move(ident));
    }
    for (const auto& j : doc.at("theorems")) {
        ParamTheorem t;
        t.id = j.at("id").get<std::string>();
        t.section = j.value("section", "");
        t.D = j.value("D", 1);
        t.default_order = j.contains("order") ? parse_order(j["order"]) : QExp(40);
        t.lhs_text = j.at("lhs").get<std::string>();
        t.rhs_text = j.at("rhs").get<std::string>();
        t.constraints = j.value("constraints", "");
        try {
            t.lhs = dsl::parse(t.lhs_text);
            t.rhs = dsl::parse(t.rhs_text);
        } catch (const SyntaxError& err) {
            throw Error("catalog theorem " + t.id + ": " + err.what());
        }
        if (j.contains("specializations")) {
            for (const auto& s : j["specializations"]) {
                ParamTheorem::Spec sp;
                sp.a = s.at("a").get<std::string>();
                sp.b = s.at("b").get<std::string>();
                sp.qpow = s.value("qpow", 1);
                sp.corollary = s.value("corollary", "");
                t.specializations.push_back(std::move(sp));
            }
        }
        theorems_.push_back(std::move(t));
    }
}

const Identity* Registry::find(const std::string& id) const {
    for (const auto& i : identities_)
        if (i.id == id) return &i;
    return nullptr;
}

const ParamTheorem* Registry::find_theorem(const std::string& id) const {
    for (const auto& t : theorems_)
        if (t.id == id) return &t;
    return nullptr;
}

std::vector<const Identity*> Registry::list(const std::set<std::string>& tags) const {
    std::vector<const Identity*> out;
    for (const auto& i : identities_) {
        bool ok = true;
        for (const auto& t : tags)
            if (!i.tags.count(t)) { ok = false; break; }
        if (ok) out.push_back(&i);
    }
    return out;
}

VerificationReport Registry::verify(const Identity& ident, std::optional<QExp> order) const {
    VerificationReport rep;
    rep.id = ident.id;
    rep.order = order.value_or(ident.default_order);
    auto start = std::chrono::steady_clock::now();
    try {
        Series lhs = dsl::eval(ident.lhs, rep.order, ident.D);
        Series rhs = dsl::eval(ident.rhs, rep.order, ident.D);
        auto mm = Series::equal_up_to(lhs, rhs, rep.order);
        if (mm.equal) {
            rep.status = VerificationReport::Status::Pass;
        } else {
            rep.status = VerificationReport::Status::Fail;
            rep.first_mismatch = mm;
        }
    } catch (const Error& err) {
        rep.status = VerificationReport::Status::Error;
        rep.error = err.what();
    }
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

VerificationReport Registry::verify(const std::string& id, std::optional<QExp> order) const {
    const Identity* ident = find(id);
    if (!ident) throw UnknownIdentity(id);
    return verify(*ident, order);
}

Identity Registry::specialize(const std::string& thm_id, const std::string& a, const std::string& b,
                              long long qpow) const {
    const ParamTheorem* thm = find_theorem(thm_id);
    if (!thm) throw UnknownTheorem(thm_id);
    std::map<std::string, dsl::ExprPtr> bind{{"A", dsl::parse(a)}, {"B", dsl::parse(b)}};
    Identity ident;
    ident.id = thm_id + "[" + a + "," + b + (qpow != 1 ? ",q^" + std::to_string(qpow) : "") + "]";
    ident.section = thm->section;
    ident.D = thm->D;
    for (const auto& [name, expr] : bind) {
        auto m = dsl::as_monomial(expr);
        if (!m) throw EvalError("specialization value for " + name + " must be a monomial: " + dsl::format(expr));
        if (!m->zero) ident.D = (int)std::lcm((long long)ident.D, m->exponent.den);
    }
    Series::check_D(ident.D);
    ident.default_order = thm->default_order;
    ident.lhs = dsl::substitute(dsl::scale_base(thm->lhs, qpow), bind);
    ident.rhs = dsl::substitute(dsl::scale_base(thm->rhs, qpow), bind);
    ident.lhs_text = dsl::format(ident.lhs);
    ident.rhs_text = dsl::format(ident.rhs);
    return ident;
}

std::vector<VerificationReport> Registry::verify_all(std::optional<QExp> order, bool parallel) const {
    std::vector<VerificationReport> out(identities_.size());
    if (!parallel) {
        for (size_t i = 0; i < identities_.size(); ++i) out[i] = verify(identities_[i], order);
        return out;
    }
    std::atomic<size_t> next{0};
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= identities_.size()) break;
                out[i] = verify(identities_[i], order);
            }
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

} // namespace qmock
