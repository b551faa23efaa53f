#pragma once

// JSON encodings. Big integers are decimal strings; objects use nlohmann's
// default sorted keys, so dump() is canonical and round-trips byte for byte.

#include <string>
#include <vector>

#include <json.hpp>

#include "chebmax/classify.hpp"
#include "chebmax/slopes.hpp"
#include "chebmax/zeta.hpp"

namespace chebmax {

using json = nlohmann::json;

inline json big_to_json(const BigInt& v) { return v.str(); }

inline BigInt big_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    return BigInt(j.get<std::string>());
}

inline json to_json(const LPoly& P) {
    json coeffs = json::array();
    for (const auto& c : P.coeffs()) coeffs.push_back(big_to_json(c));
    return {{"q", big_to_json(P.q())}, {"g", P.genus()}, {"coeffs", coeffs}};
}

inline LPoly lpoly_from_json(const json& j) {
    std::vector<BigInt> c;
    for (const auto& x : j.at("coeffs")) c.push_back(big_from_json(x));
    return LPoly(big_from_json(j.at("q")), j.at("g").get<u64>(), std::move(c));
}

/// {"num/den": length, ...}
inline json to_json(const SlopeMultiset& s) {
    json out = json::object();
    for (const auto& [slope, len] : s.entries()) out[to_string(slope)] = len;
    return out;
}

inline SlopeMultiset slopes_from_json(const json& j) {
    SlopeMultiset s;
    for (const auto& [key, len] : j.items()) s.add(parse_rational(key), len.get<std::int64_t>());
    return s;
}

inline json to_json(const Verdict& v) {
    json out{{"d", v.d}, {"p", v.p}, {"status", to_string(v.status)}, {"rule", v.rule}, {"evidence", v.evidence}};
    if (v.status == Status::MaximalForExponents) {
        out["k"] = v.k;
        out["exponents"] = v.exponents();
    }
    return out;
}

inline json to_json(const DescentCertificate& c) {
    json out{{"ell", c.ell},
             {"p", c.p},
             {"genus", c.genus()},
             {"legendre_value", c.legendre_value},
             {"psi_irreducible", c.psi_irreducible},
             {"slopes_all_half", c.slopes_all_half},
             {"conclusion", c.conclusion}};
    out["jacobian_order_mod4"] = c.jacobian_order_mod4 ? json(*c.jacobian_order_mod4) : json(nullptr);
    out["char_poly_middle"] = c.char_poly_middle ? json(*c.char_poly_middle) : json(nullptr);
    if (c.conclusion) out["certified_lpoly"] = to_json(c.certified_lpoly());
    return out;
}

inline json to_json(const SurveyReport& r) {
    json rows = json::array();
    for (const auto& x : r.primes) {
        rows.push_back({{"ell", x.ell},
                        {"supersingular_classes", x.supersingular},
                        {"primitive_root_classes", x.primitive},
                        {"agree", x.agree()}});
    }
    for (const auto& x : r.pairs) rows.push_back({{"ell1", x.ell1}, {"ell2", x.ell2}, {"classes", x.classes}});
    for (const auto& x : r.powers) {
        rows.push_back({{"ell", x.ell},
                        {"n", x.n},
                        {"supersingular_classes", x.supersingular},
                        {"generator_classes", x.generators},
                        {"mismatches", x.mismatches},
                        {"agree", x.agree()}});
    }
    json out{{"mode", to_string(r.mode)}, {"ell_max", r.ell_max}, {"rows", rows}, {"holds", r.holds()}};
    if (r.mode == SurveyMode::PrimePowerSweep) out["max_power"] = r.max_power;
    return out;
}

}  // namespace chebmax
