#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or validation
// error, 2 refused by the element-visit budget.

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chebmax/classify.hpp"
#include "chebmax/cmgal.hpp"
#include "chebmax/curve.hpp"
#include "chebmax/intpoly.hpp"
#include "chebmax/serialize.hpp"
#include "chebmax/zeta.hpp"

namespace chebmax::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2 };

/// One command's output before rendering.
struct Outcome {
    json inputs = json::object();
    json result = json::object();
    std::string text;  // replaces the generic table rendering when set
    std::optional<BigInt> cost;
};

namespace detail {

inline std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void render_table(const Outcome& o, std::ostream& out) {
    if (!o.text.empty()) {
        out << o.text << "\n";
        return;
    }
    for (const auto& [key, value] : o.result.items()) {
        if (key == "rows" && value.is_array()) {
            for (const auto& row : value) out << cell(row) << "\n";
        } else {
            out << key << ": " << cell(value) << "\n";
        }
    }
}

inline void render_csv(const Outcome& o, std::ostream& out) {
    const json& rows = o.result.contains("rows") ? o.result.at("rows") : json();
    if (rows.is_array() && !rows.empty() && rows.front().is_object()) {
        bool first = true;
        for (const auto& [key, _] : rows.front().items()) {
            out << (first ? "" : ",") << csv_field(key);
            first = false;
        }
        out << "\n";
        for (const auto& row : rows) {
            first = true;
            for (const auto& [_, v] : row.items()) {
                out << (first ? "" : ",") << csv_field(cell(v));
                first = false;
            }
            out << "\n";
        }
        return;
    }
    out << "key,value\n";
    for (const auto& [key, value] : o.result.items()) out << csv_field(key) << "," << csv_field(cell(value)) << "\n";
}

}  // namespace detail

/// Parses `args` (program name first), runs one subcommand, writes to `out`
/// and diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximality of the hyperelliptic curves y^2 = phi_d(x) over finite fields", "chebmax"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "table";
    u64 budget = Budget::kDefaultVisits;
    unsigned threads = 1;
    bool timing = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--budget", budget, "Maximum number of field elements visited by enumerations");
    app.add_option("--threads", threads, "Worker threads for counting and surveys")->check(CLI::Range(1u, 256u));
    app.add_flag("--timing", timing, "Add wall time to JSON reports");

    std::string command;
    std::function<Outcome()> action;

    u64 d = 0, p = 0, ell = 0, ell2 = 0;
    i64 p_class = 0;
    unsigned n = 0;
    std::optional<u64> mod;
    bool ascending = false;
    std::string method = "count";
    std::string mode = "prime-sweep";
    u64 max_ell = 101;
    unsigned power = 2;

    auto opts = [&]() {
        CountOptions o;
        o.budget.max_visits = budget;
        o.threads = threads;
        return o;
    };
    auto curve_inputs = [&](bool with_n) {
        json j{{"d", d}, {"p", p}};
        if (with_n) j["n"] = n;
        return j;
    };

    auto* cheb = app.add_subcommand("cheb", "Print the Chebyshev polynomial Phi_d, optionally reduced mod p");
    cheb->add_option("--d", d, "Degree")->required()->check(CLI::Range(u64{1}, u64{100000}));
    cheb->add_option("--mod", mod, "Reduce coefficients modulo this prime");
    cheb->add_flag("--ascending", ascending, "Lowest degree first");
    cheb->callback([&] {
        command = "cheb";
        action = [&] {
            Outcome o;
            o.inputs = {{"d", d}, {"ascending", ascending}};
            const ZPoly f = chebyshev(static_cast<unsigned>(d));
            json coeffs = json::array();
            if (mod) {
                if (!is_prime(*mod)) throw DomainError("--mod must be prime, got " + std::to_string(*mod));
                o.inputs["mod"] = *mod;
                const FpPoly fp = reduce_mod(f, *mod);
                for (u64 c : fp.coeffs()) coeffs.push_back(std::to_string(c));
                o.text = fp.to_string(ascending);
            } else {
                for (const auto& c : f.coeffs()) coeffs.push_back(big_to_json(c));
                o.text = f.to_string(ascending);
            }
            o.result = {{"polynomial", o.text}, {"coeffs", coeffs}};
            return o;
        };
    });

    auto* count = app.add_subcommand("count", "Count points of H_d over F_{p^n}");
    count->add_option("--d", d)->required();
    count->add_option("--p", p)->required();
    count->add_option("--n", n)->default_val(1u);
    count->callback([&] {
        command = "count";
        action = [&] {
            const CurveSpec spec{d, p, n};
            spec.validate();
            Outcome o;
            o.inputs = curve_inputs(true);
            o.cost = count_cost_estimate(spec);
            const u64 c = count_points(spec, opts());
            o.result = {{"count", std::to_string(c)},
                        {"q", big_to_json(spec.field_size())},
                        {"genus", spec.genus()},
                        {"points_at_infinity", spec.points_at_infinity()}};
            if (n % 2 == 0) {
                const BigInt bound = maximal_point_count(p, n, spec.genus());
                o.result["maximal_bound"] = big_to_json(bound);
                o.result["maximal"] = BigInt(c) == bound;
            }
            return o;
        };
    });

    auto* maximal = app.add_subcommand("maximal", "Decide maximality of H_d over F_{p^n} (n even)");
    maximal->add_option("--d", d)->required();
    maximal->add_option("--p", p)->required();
    maximal->add_option("--n", n)->required();
    maximal->add_option("--method", method)->check(CLI::IsMember({"count", "lpoly", "classify"}));
    maximal->callback([&] {
        command = "maximal";
        action = [&] {
            const CurveSpec spec{d, p, n};
            spec.validate();
            const BigInt bound = maximal_point_count(p, n, spec.genus());
            Outcome o;
            o.inputs = curve_inputs(true);
            o.inputs["method"] = method;
            o.result = {{"method", method}, {"maximal_bound", big_to_json(bound)}};
            if (method == "count") {
                o.cost = count_cost_estimate(spec);
                const u64 c = count_points(spec, opts());
                o.result["count"] = std::to_string(c);
                o.result["maximal"] = BigInt(c) == bound;
                o.result["decided_by"] = "exhaustive count over F_{p^n}";
            } else if (method == "lpoly") {
                o.cost = lpoly_visits(d, p) * d;
                const LPoly P = lpoly_of_curve(d, p, opts());
                const BigInt c = counts_from_lpoly(P, n);
                o.result["count"] = big_to_json(c);
                o.result["maximal"] = c == bound;
                o.result["lpoly"] = to_json(P);
                o.result["decided_by"] = "L-polynomial from counts over F_{p^m}, m <= " + std::to_string(spec.genus());
            } else {
                if (d < 3 || d % 2 == 0) throw DomainError("--method classify needs odd d >= 3");
                const Verdict v = classify(d, p);
                const auto pred = v.maximal_over(n);
                o.result["maximal"] = pred ? json(*pred) : json(nullptr);
                o.result["status"] = to_string(v.status);
                o.result["decided_by"] = v.rule;
                o.result["evidence"] = v.evidence;
            }
            return o;
        };
    });

    auto* lpoly = app.add_subcommand("lpoly", "L-polynomial of H_d over F_p from exhaustive counts");
    lpoly->add_option("--d", d)->required();
    lpoly->add_option("--p", p)->required();
    lpoly->callback([&] {
        command = "lpoly";
        action = [&] {
            CurveSpec{d, p, 1}.validate();
            Outcome o;
            o.inputs = curve_inputs(false);
            o.cost = lpoly_visits(d, p) * d;
            const LPoly P = lpoly_of_curve(d, p, opts());
            o.result = {{"lpoly", to_json(P)},
                        {"newton_slopes", to_json(newton_slopes(P))},
                        {"display", factored_display(P)},
                        {"jacobian_order_mod4", jacobian_order_mod4(P)}};
            return o;
        };
    });

    auto* slopes = app.add_subcommand("slopes", "CM slopes of Frobenius for H_ell, ell prime");
    slopes->add_option("--ell,--d", ell)->required();
    slopes->add_option("--p", p_class, "Prime or residue class")->required();
    auto* slopes2 = app.add_subcommand("slopes2", "CM slopes of the new part of H_d, d odd");
    slopes2->add_option("--d,--ell", ell)->required();
    slopes2->add_option("--p", p_class, "Prime or residue class")->required();
    auto slopes_action = [&](bool prime) {
        command = prime ? "slopes" : "slopes2";
        action = [&, prime] {
            const SlopeMultiset s = prime ? slopes_multiset(ell, p_class) : slopes2_multiset(ell, p_class);
            Outcome o;
            o.inputs = {{prime ? "ell" : "d", ell}, {"p", p_class}};
            o.result = {{"slopes", to_json(s)}, {"decomposition_group_order", decomposition_group(ell, p_class).size()}};
            o.text = to_json(s).dump();
            return o;
        };
    };
    slopes->callback([&] { slopes_action(true); });
    slopes2->callback([&] { slopes_action(false); });

    auto* cls = app.add_subcommand("classify", "Rule-based maximality verdict for H_d in characteristic p");
    cls->add_option("--d,--ell", d)->required();
    cls->add_option("--p", p)->required();
    cls->callback([&] {
        command = "classify";
        action = [&] {
            Outcome o;
            o.inputs = curve_inputs(false);
            o.result = to_json(classify(d, p));
            return o;
        };
    });

    auto* descent = app.add_subcommand("descent", "2-descent certificate for ell, p = 1 mod 4 with p primitive mod ell");
    descent->add_option("--ell", ell)->required();
    descent->add_option("--p", p)->required();
    descent->callback([&] {
        command = "descent";
        action = [&] {
            Outcome o;
            o.inputs = {{"ell", ell}, {"p", p}};
            o.result = to_json(descent_certificate(ell, p));
            return o;
        };
    });

    auto* sv = app.add_subcommand("survey", "Residue-class surveys over primes ell = 1 mod 4");
    sv->add_option("--mode", mode)->check(CLI::IsMember({"prime-sweep", "pair-sweep", "prime-power-sweep"}));
    sv->add_option("--max", max_ell, "Largest ell");
    sv->add_option("--power", power, "Largest exponent for prime-power-sweep");
    sv->callback([&] {
        command = "survey";
        action = [&] {
            Outcome o;
            o.inputs = {{"mode", mode}, {"max", max_ell}};
            if (mode == "prime-power-sweep") o.inputs["power"] = power;
            o.result = to_json(survey(max_ell, parse_survey_mode(mode), power, threads));
            return o;
        };
    });

    auto* cp = app.add_subcommand("check-pairs", "Supersingular primitive-root classes for the new part of H_{ell*ell2}");
    cp->add_option("--ell", ell)->required();
    cp->add_option("--ell2", ell2)->required();
    cp->callback([&] {
        command = "check-pairs";
        action = [&] {
            Outcome o;
            o.inputs = {{"ell", ell}, {"ell2", ell2}};
            const std::set<u64> s = check_pair(ell, ell2);
            o.result = {{"classes", std::vector<u64>(s.begin(), s.end())}, {"modulus", 4 * ell * ell2}};
            return o;
        };
    });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    json budget_json = std::to_string(budget);
    try {
        const auto start = std::chrono::steady_clock::now();
        const Outcome o = action();
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (format == "json") {
            json report{{"command", command},
                        {"inputs", o.inputs},
                        {"result", o.result},
                        {"cost_estimate", o.cost ? big_to_json(*o.cost) : json(nullptr)},
                        {"budget", budget_json}};
            if (timing) report["wall_ms"] = ms;
            out << report.dump(2) << "\n";
        } else if (format == "csv") {
            detail::render_csv(o, out);
        } else {
            detail::render_table(o, out);
        }
        return kOk;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        if (format == "json") {
            json report{{"command", command},
                        {"error", "infeasible"},
                        {"message", e.what()},
                        {"visits", big_to_json(e.visits())},
                        {"cost_estimate", big_to_json(e.cost_estimate())},
                        {"budget", budget_json}};
            out << report.dump(2) << "\n";
        }
        return kInfeasible;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidCountsError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace chebmax::cli
