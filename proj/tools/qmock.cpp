#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmock/conversion.hpp"
#include "qmock/registry.hpp"

namespace {

using namespace qmock;

// exit codes: 0 ok, 1 verification failure, 2 usage error, 3 evaluation error
constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEval = 3;

QExp parse_order_arg(const std::string& s) {
    try {
        size_t used = 0;
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return QExp(v);
        }
        long long num = std::stoll(s.substr(0, slash), &used);
        long long den = std::stoll(s.substr(slash + 1));
        return QExp(num, den);
    } catch (const std::exception&) {
        throw SyntaxError(1, 1, "bad order '" + s + "' (expected an integer or p/r)");
    }
}

void print_report_line(std::ostream& os, const VerificationReport& rep) {
    switch (rep.status) {
        case VerificationReport::Status::Pass:
            os << "pass  " << rep.id << "  (order " << rep.order.str() << ")\n";
            break;
        case VerificationReport::Status::Fail:
            os << "FAIL  " << rep.id << "  (order " << rep.order.str() << ")";
            if (rep.first_mismatch) {
                os << "  first mismatch at q^" << rep.first_mismatch->exponent.str() << ": lhs "
                   << rep.first_mismatch->lhs.str() << " vs rhs " << rep.first_mismatch->rhs.str();
            }
            os << "\n";
            break;
        case VerificationReport::Status::Error:
            os << "ERROR " << rep.id << "  " << rep.error << "\n";
            break;
    }
}

nlohmann::json report_json(const std::vector<VerificationReport>& reps, const std::string& order) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& rep : reps) {
        nlohmann::json r;
        r["id"] = rep.id;
        r["status"] = rep.status == VerificationReport::Status::Pass   ? "pass"
                      : rep.status == VerificationReport::Status::Fail ? "fail"
                                                                       : "error";
        if (rep.first_mismatch) {
            r["first_mismatch"] = {{"exponent", rep.first_mismatch->exponent.str()},
                                   {"lhs", rep.first_mismatch->lhs.str()},
                                   {"rhs", rep.first_mismatch->rhs.str()}};
        } else {
            r["first_mismatch"] = nullptr;
        }
        r["elapsed_ms"] = rep.elapsed_ms;
        results.push_back(std::move(r));
    }
    nlohmann::json doc;
    if (order.empty()) {
        doc["order"] = nullptr; // per-entry default orders were used
    } else if (order.find('/') == std::string::npos) {
        doc["order"] = std::stoll(order);
    } else {
        doc["order"] = order;
    }
    doc["results"] = std::move(results);
    return doc;
}

int run_verify(const std::string& id, bool all, const std::string& order_text, const std::string& json_path,
               bool parallel, const std::string& catalog) {
    Registry reg(catalog);
    std::optional<QExp> order;
    if (!order_text.empty()) order = parse_order_arg(order_text);
    std::vector<VerificationReport> reps;
    if (all) {
        reps = reg.verify_all(order, parallel);
    } else {
        reps.push_back(reg.verify(id, order));
    }
    int failures = 0, errors = 0;
    for (const auto& rep : reps) {
        print_report_line(std::cout, rep);
        if (rep.status == VerificationReport::Status::Fail) ++failures;
        if (rep.status == VerificationReport::Status::Error) ++errors;
    }
    std::cout << reps.size() - failures - errors << "/" << reps.size() << " identities pass\n";
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << report_json(reps, order_text).dump(2) << "\n";
    }
    if (errors) return kExitEval;
    return failures ? kExitFail : kExitOk;
}

int run_expand(const std::string& expr_text, const std::string& order_text, int denominator) {
    QExp order = order_text.empty() ? QExp(20) : parse_order_arg(order_text);
    dsl::ExprPtr e = dsl::parse(expr_text);
    Series s = dsl::eval(e, order, denominator);
    // print exactly the requested window
    Series out(s.D(), (order.num * s.D()) / order.den);
    for (const auto& [t, c] : s.terms()) out.add_coeff_ticks(t, c);
    std::cout << out.str() << "\n";
    return kExitOk;
}

int run_convert(const std::string& variant, long long n, long long p, const std::string& xs,
                const std::string& ys, const std::string& bs, const std::string& order_text) {
    QExp order = order_text.empty() ? QExp(40) : parse_order_arg(order_text);
    auto need_mono = [](const std::string& t) {
        auto m = dsl::as_monomial(dsl::parse(t));
        if (!m) throw EvalError("expected a monomial: " + t);
        return *m;
    };
    Monomial x = need_mono(xs), y = need_mono(ys), base = need_mono(bs);
    int D = 1;
    for (const Monomial* m : {&x, &y, &base})
        if (!m->zero) D = (int)std::lcm((long long)D, m->exponent.den);
    Series::check_D(D);
    ConversionReport rep = variant == "odd" ? fm_identity_odd(n, x, y, base, D, order)
                                            : fm_identity_coprime(n, p, x, y, base, D, order);
    if (rep.pass) {
        std::cout << "pass  f-to-m conversion (" << variant << ", n=" << n;
        if (variant != "odd") std::cout << ", p=" << p;
        std::cout << ") at order " << order.str() << "\n";
        return kExitOk;
    }
    std::cout << "FAIL  first mismatch at q^" << rep.mismatch.exponent.str() << ": lhs "
              << rep.mismatch.lhs.str() << " vs rhs " << rep.mismatch.rhs.str() << "\n";
    return kExitFail;
}

int run_list(const std::string& tag, const std::string& catalog) {
    Registry reg(catalog);
    std::set<std::string> tags;
    if (!tag.empty()) tags.insert(tag);
    for (const Identity* ident : reg.list(tags)) {
        std::cout << ident->id;
        if (!ident->tags.empty()) {
            std::cout << "  [";
            bool first = true;
            for (const auto& t : ident->tags) {
                if (!first) std::cout << " ";
                std::cout << t;
                first = false;
            }
            std::cout << "]";
        }
        std::cout << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series identity engine"};
    app.require_subcommand(1);

    std::string id, order_text, json_path, catalog, expr_text, variant = "coprime";
    std::string xs = "q", ys = "q", bs = "q", tag;
    bool all = false, parallel = false;
    long long n = 1, p = 1;
    int denominator = 1;

    auto* verify = app.add_subcommand("verify", "verify cataloged identities");
    verify->add_option("--id", id, "identity id");
    verify->add_flag("--all", all, "verify the whole catalog");
    verify->add_option("--order", order_text, "truncation order (int or p/r)");
    verify->add_option("--json", json_path, "write a JSON report here");
    verify->add_flag("--parallel", parallel, "verify identities in parallel");
    verify->add_option("--catalog", catalog, "catalog path (default: QMOCK_CATALOG or built-in)");

    auto* expand = app.add_subcommand("expand", "expand an expression as a q-series");
    expand->add_option("expr", expr_text, "expression")->required();
    expand->add_option("--order", order_text, "truncation order");
    expand->add_option("--denominator", denominator, "exponent denominator D");

    auto* convert = app.add_subcommand("convert", "check a Hecke-to-Appell-Lerch conversion");
    convert->add_option("--variant", variant, "coprime or odd")
        ->check(CLI::IsMember({"coprime", "odd"}));
    convert->add_option("--n", n, "n");
    convert->add_option("--p", p, "p (coprime variant)");
    convert->add_option("--x", xs, "x monomial");
    convert->add_option("--y", ys, "y monomial");
    convert->add_option("--base", bs, "base monomial");
    convert->add_option("--order", order_text, "truncation order");

    auto* list = app.add_subcommand("list", "list cataloged identities");
    list->add_option("--tag", tag, "filter by tag");
    list->add_option("--catalog", catalog, "catalog path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            if (!all && id.empty()) {
                std::cerr << "verify needs --id or --all\n";
                return kExitUsage;
            }
            return run_verify(id, all, order_text, json_path, parallel, catalog);
        }
        if (expand->parsed()) return run_expand(expr_text, order_text, denominator);
        if (convert->parsed()) return run_convert(variant, n, p, xs, ys, bs, order_text);
        if (list->parsed()) return run_list(tag, catalog);
    } catch (const UnknownIdentity& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownTheorem& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const SyntaxError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitEval;
    }
    return kExitUsage;
}
