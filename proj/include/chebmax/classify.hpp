#pragma once

// Rule engine deciding in which characteristics and over which fields H_d is
// maximal, the 2-descent certificate for primitive-root characteristics, and
// the residue-class surveys.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "chebmax/cmgal.hpp"
#include "chebmax/curve.hpp"
#include "chebmax/errors.hpp"
#include "chebmax/intpoly.hpp"
#include "chebmax/numtheory.hpp"
#include "chebmax/zeta.hpp"

namespace chebmax {

enum class Status { MaximalForExponents, NeverMaximal, Undecided, ConsistentWithMaximal };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::MaximalForExponents: return "MAXIMAL_FOR_EXPONENTS";
        case Status::NeverMaximal: return "NEVER_MAXIMAL";
        case Status::Undecided: return "UNDECIDED";
        case Status::ConsistentWithMaximal: return "CONSISTENT_WITH_MAXIMAL";
    }
    return "?";
}

/// Stable rule tags.
namespace rule {
inline constexpr const char* kEll3Mod4P1Mod4 = "ell-3mod4-p-1mod4";
inline constexpr const char* kPmOrder = "pm-order";
inline constexpr const char* kPmOrderOdd = "pm-order-odd";
inline constexpr const char* kPmOrderEven = "pm-order-even";
inline constexpr const char* kPrimitiveRoot = "primitive-root";
inline constexpr const char* kSlopeObstruction = "slope-obstruction";
inline constexpr const char* kOpenPrime = "open-1mod4-prime";
inline constexpr const char* kSubgroup4d = "subgroup-4d";
inline constexpr const char* kPrimeFactor3Mod4 = "prime-factor-3mod4";
inline constexpr const char* kQuotientCurve = "quotient-curve";
inline constexpr const char* kTwoAdicValuation = "two-adic-valuation";
inline constexpr const char* kCmSlopesConsistent = "cm-slopes-consistent";
inline constexpr const char* kOpenComposite = "open-composite";
}  // namespace rule

/// For MaximalForExponents with parameter k: H_d is maximal over F_{p^{2a}}
/// exactly when a = k * (odd).
struct Verdict {
    u64 d = 0;
    u64 p = 0;
    Status status = Status::Undecided;
    std::string rule;
    u64 k = 0;
    std::vector<std::string> evidence;

    /// Prediction for F_{p^n}; nullopt when the verdict does not decide it.
    std::optional<bool> maximal_over(unsigned n) const {
        if (n % 2 != 0) return false;
        switch (status) {
            case Status::NeverMaximal: return false;
            case Status::MaximalForExponents: {
                const u64 a = n / 2;
                return a % k == 0 && (a / k) % 2 == 1;
            }
            default: return std::nullopt;
        }
    }

    /// Human-readable exponent condition, empty unless status is maximal.
    std::string exponents() const {
        if (status != Status::MaximalForExponents) return "";
        return "maximal over F_{p^{2a}} iff a = " + std::to_string(k) + "*m with m odd";
    }
};

namespace detail {

inline void require_odd_prime(u64 v, const char* what) {
    if (v < 3 || !is_prime(v)) throw DomainError(std::string(what) + " must be an odd prime, got " + std::to_string(v));
}

inline Verdict maximal(u64 d, u64 p, const char* tag, u64 k, std::vector<std::string> ev = {}) {
    return {d, p, Status::MaximalForExponents, tag, k, std::move(ev)};
}

inline Verdict never(u64 d, u64 p, const char* tag, std::vector<std::string> ev = {}) {
    return {d, p, Status::NeverMaximal, tag, 0, std::move(ev)};
}

}  // namespace detail

/// Elements of <p mod m> in generation order, starting with p.
inline std::vector<u64> cyclic_subgroup(u64 p, u64 m) {
    std::vector<u64> out;
    const u64 g = p % m;
    u64 x = g;
    do {
        out.push_back(x);
        x = mulmod(x, g, m);
    } while (x != g);
    return out;
}

/// For p = 3 mod 4: k with ord(p mod 4d) = 2k when <p mod 4d> contains
/// 4d - 1 or 1 + 2d; nullopt when neither is present.
inline std::optional<u64> subgroup_4d_exponent(u64 d, u64 p) {
    if (d % 2 == 0 || std::gcd(p, 4 * d) != 1) throw DomainError("subgroup_4d_exponent: need d odd and gcd(p, 4d) = 1");
    const u64 m = 4 * d;
    const std::vector<u64> sub = cyclic_subgroup(p, m);
    const bool hit = std::find(sub.begin(), sub.end(), m - 1) != sub.end() ||
                     std::find(sub.begin(), sub.end(), 1 + 2 * d) != sub.end();
    if (!hit) return std::nullopt;
    return sub.size() / 2;
}

/// q = p^a is -1 or 1 + 2d mod 4d.
inline bool maximal_by_congruence(u64 d, u64 p, u64 a) {
    const u64 m = 4 * d;
    const u64 q = powmod(p % m, a, m);
    return q == m - 1 || q == 1 + 2 * d;
}

/// Verdict for H_ell, ell an odd prime, in characteristic p.
inline Verdict classify_prime(u64 ell, u64 p) {
    detail::require_odd_prime(ell, "ell");
    detail::require_odd_prime(p, "p");
    if (p == ell) throw DomainError("p must differ from ell");
    const bool ell1 = ell % 4 == 1;
    const bool p1 = p % 4 == 1;
    if (!ell1 && p1) return detail::never(ell, p, rule::kEll3Mod4P1Mod4);
    if (!p1) {
        const u64 k = pm_order(static_cast<i64>(p), ell);
        const std::string ev = "order of +-p mod ell is " + std::to_string(k);
        if (!ell1) return detail::maximal(ell, p, rule::kPmOrder, k, {ev});
        if (k % 2 == 1) return detail::maximal(ell, p, rule::kPmOrderOdd, k, {ev});
        return detail::never(ell, p, rule::kPmOrderEven, {ev});
    }
    if (is_primitive_root(p, ell)) {
        return detail::maximal(ell, p, rule::kPrimitiveRoot, (ell - 1) / 2, {"p is a primitive root mod ell"});
    }
    const SlopeMultiset s = slopes_multiset(ell, static_cast<i64>(p));
    if (!s.only(Rational(1, 2))) return detail::never(ell, p, rule::kSlopeObstruction, {"CM slopes " + s.to_string()});
    return {ell, p, Status::Undecided, rule::kOpenPrime, 0,
            {"CM slopes " + s.to_string(), "p is not a primitive root mod ell"}};
}

/// Verdict for H_d, d odd >= 3, in characteristic p.
inline Verdict classify_odd(u64 d, u64 p) {
    if (d < 3 || d % 2 == 0) throw DomainError("d must be odd and at least 3, got " + std::to_string(d));
    detail::require_odd_prime(p, "p");
    if (std::gcd(p, d) != 1) throw DomainError("p must not divide d");

    if (p % 4 == 3) {
        if (auto k = subgroup_4d_exponent(d, p)) {
            return detail::maximal(d, p, rule::kSubgroup4d, *k,
                                   {"<p mod " + std::to_string(4 * d) + "> has order " + std::to_string(2 * *k) +
                                    " and contains -1 or 1+2d"});
        }
        return detail::never(d, p, rule::kSubgroup4d,
                             {"<p mod " + std::to_string(4 * d) + "> contains neither -1 nor 1+2d"});
    }

    const std::vector<u64> primes = prime_factors(d);
    for (u64 l : primes) {
        if (l % 4 == 3) return detail::never(d, p, rule::kPrimeFactor3Mod4, {"prime factor " + std::to_string(l) + " = 3 mod 4"});
    }
    if (primes.size() == 1 && primes[0] == d) return classify_prime(d, p);

    std::vector<std::string> ev;
    bool all_maximal = true;
    std::vector<Verdict> sub;
    for (u64 l : primes) {
        Verdict v = classify_prime(l, p);
        if (v.status == Status::NeverMaximal) {
            return detail::never(d, p, rule::kQuotientCurve,
                                 {"H_" + std::to_string(l) + " is never maximal (" + v.rule + ")"});
        }
        if (v.status != Status::MaximalForExponents) all_maximal = false;
        ev.push_back("H_" + std::to_string(l) + ": " + to_string(v.status) +
                     (v.k ? " k=" + std::to_string(v.k) : std::string()) + " (" + v.rule + ")");
        sub.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < sub.size(); ++i) {
        for (std::size_t j = i + 1; j < sub.size(); ++j) {
            if (sub[i].k == 0 || sub[j].k == 0) continue;
            if (valuation(sub[i].k, 2) != valuation(sub[j].k, 2)) {
                return detail::never(d, p, rule::kTwoAdicValuation,
                                     {"k=" + std::to_string(sub[i].k) + " for H_" + std::to_string(primes[i]) + " and k=" +
                                      std::to_string(sub[j].k) + " for H_" + std::to_string(primes[j])});
            }
        }
    }
    // New parts of intermediate quotients: ell^j (j >= 2) and ell1*ell2.
    std::vector<u64> inter;
    for (u64 l : primes) {
        for (u64 m = l * l; d % m == 0; m *= l) inter.push_back(m);
    }
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j) inter.push_back(primes[i] * primes[j]);
    for (u64 m : inter) {
        const SlopeMultiset s = slopes2_multiset(m, static_cast<i64>(p));
        if (!s.only(Rational(1, 2))) {
            return detail::never(d, p, rule::kSlopeObstruction, {"slopes2(" + std::to_string(m) + ") = " + s.to_string()});
        }
        ev.push_back("slopes2(" + std::to_string(m) + ") = " + s.to_string());
    }
    if (all_maximal) return {d, p, Status::ConsistentWithMaximal, rule::kCmSlopesConsistent, 0, std::move(ev)};
    return {d, p, Status::Undecided, rule::kOpenComposite, 0, std::move(ev)};
}

/// classify_prime for prime d, classify_odd otherwise.
inline Verdict classify(u64 d, u64 p) {
    if (d >= 3 && is_prime(d)) return classify_prime(d, p);
    return classify_odd(d, p);
}

/// P(1) mod 4 = #J(F_q) mod 4.
inline unsigned jacobian_order_mod4(const LPoly& P) {
    BigInt r = P(BigInt(1)) % 4;
    if (r < 0) r += 4;
    return static_cast<unsigned>(r);
}

struct DescentCertificate {
    u64 ell = 0;
    u64 p = 0;
    int legendre_value = 0;
    bool psi_irreducible = false;
    bool slopes_all_half = false;
    /// #J(F_p) mod 4 forced by the descent; set when conclusion holds.
    std::optional<unsigned> jacobian_order_mod4;
    /// m in X^{2g} + m p^{g/2} X^g + p^g; set when conclusion holds.
    std::optional<int> char_poly_middle;
    bool conclusion = false;

    u64 genus() const { return (ell - 1) / 2; }

    /// 1 + p^g T^{2g}, the reciprocal of X^{2g} + p^g.
    LPoly certified_lpoly() const {
        if (!conclusion) throw PreconditionError("certificate did not conclude");
        const u64 g = genus();
        std::vector<BigInt> c(2 * g + 1, 0);
        c[0] = 1;
        c[2 * g] = big_pow(p, static_cast<unsigned>(g));
        return LPoly(BigInt(p), g, std::move(c));
    }
};

/// For ell, p = 1 mod 4 with p a primitive root mod ell: (ell/p) = -1 and
/// psi_ell irreducible over F_p give J(F_p)[2] = Z/2 with no 4-torsion, so
/// #J(F_p) = 2 + m = 2 mod 4 and the middle coefficient m in {-2..2} is 0.
inline DescentCertificate descent_certificate(u64 ell, u64 p) {
    detail::require_odd_prime(ell, "ell");
    detail::require_odd_prime(p, "p");
    if (ell % 4 != 1) throw PreconditionError("ell = " + std::to_string(ell) + " is not 1 mod 4");
    if (p % 4 != 1) throw PreconditionError("p = " + std::to_string(p) + " is not 1 mod 4");
    if (p == ell) throw PreconditionError("p must differ from ell");
    if (!is_primitive_root(p, ell)) {
        throw PreconditionError(std::to_string(p) + " is not a primitive root mod " + std::to_string(ell) + ": order " +
                                std::to_string(mult_order(static_cast<i64>(p), ell)) + " != " + std::to_string(ell - 1));
    }
    DescentCertificate c;
    c.ell = ell;
    c.p = p;
    c.legendre_value = legendre(static_cast<i64>(ell), p);
    c.psi_irreducible = is_irreducible(reduce_mod(odd_part(static_cast<unsigned>(ell)), p));
    c.slopes_all_half = cm_supersingular(ell, static_cast<i64>(p));
    c.conclusion = c.legendre_value == -1 && c.psi_irreducible && c.slopes_all_half;
    if (c.conclusion) {
        c.jacobian_order_mod4 = 2;
        c.char_poly_middle = 0;
    }
    return c;
}

// ---------------------------------------------------------------- surveys

enum class SurveyMode { PrimeSweep, PairSweep, PrimePowerSweep };

inline std::string to_string(SurveyMode m) {
    switch (m) {
        case SurveyMode::PrimeSweep: return "prime-sweep";
        case SurveyMode::PairSweep: return "pair-sweep";
        case SurveyMode::PrimePowerSweep: return "prime-power-sweep";
    }
    return "?";
}

inline SurveyMode parse_survey_mode(const std::string& s) {
    if (s == "prime-sweep") return SurveyMode::PrimeSweep;
    if (s == "pair-sweep") return SurveyMode::PairSweep;
    if (s == "prime-power-sweep") return SurveyMode::PrimePowerSweep;
    throw DomainError("unknown survey mode: " + s);
}

struct SurveyLimits {
    static constexpr u64 kMaxEll = 1000;
    static constexpr u64 kMaxPrimePower = 1'000'000;
};

/// ell = 1 mod 4: classes p mod 4 ell, p = 1 mod 4, with CM slopes {1/2},
/// against the primitive-root classes.
struct PrimeSweepRow {
    u64 ell = 0;
    std::vector<u64> supersingular;
    std::vector<u64> primitive;
    bool agree() const { return supersingular == primitive; }
};

struct PairSweepRow {
    u64 ell1 = 0, ell2 = 0;
    std::vector<u64> classes;  // check_pair output, expected empty
};

/// Classes p mod 4 ell^n with p = 1 mod 4 that are CM-supersingular for both
/// ell and ell^n, against those generating (Z/ell^n Z)^x.
struct PrimePowerRow {
    u64 ell = 0;
    unsigned n = 0;
    u64 supersingular = 0;
    u64 generators = 0;
    std::vector<u64> mismatches;
    bool agree() const { return mismatches.empty(); }
};

struct SurveyReport {
    SurveyMode mode = SurveyMode::PrimeSweep;
    u64 ell_max = 0;
    unsigned max_power = 0;
    std::vector<PrimeSweepRow> primes;
    std::vector<PairSweepRow> pairs;
    std::vector<PrimePowerRow> powers;

    /// The survey's hypothesis held on every row.
    bool holds() const {
        for (const auto& r : primes)
            if (!r.agree()) return false;
        for (const auto& r : pairs)
            if (!r.classes.empty()) return false;
        for (const auto& r : powers)
            if (!r.agree()) return false;
        return true;
    }
};

namespace detail {

/// Evaluates fn(i) for i < count on `threads` workers; results in index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn fn) {
    std::vector<T> out(count);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += threads) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

inline std::vector<u64> primes_1mod4(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 l = lo; l <= hi; ++l)
        if (l % 4 == 1 && is_prime(l)) out.push_back(l);
    return out;
}

/// Does a generate (Z/m Z)^x, m = ell^n an odd prime power?
inline bool generates_prime_power(u64 a, u64 ell, u64 m) {
    if (a % ell == 0) return false;
    if (!is_primitive_root(a % ell, ell)) return false;
    if (m == ell) return true;
    // A primitive root mod ell generates mod ell^n (n >= 2) iff a^{ell-1} != 1 mod ell^2.
    const u64 l2 = ell * ell;
    return powmod(a % l2, ell - 1, l2) != 1;
}

inline PrimeSweepRow prime_sweep_row(u64 ell) {
    PrimeSweepRow row{ell, {}, {}};
    const u64 m = 4 * ell;
    for (u64 c = 1; c < m; c += 4) {
        if (c % ell == 0) continue;
        if (cm_supersingular(ell, static_cast<i64>(c))) row.supersingular.push_back(c);
        if (is_primitive_root(c % ell, ell)) row.primitive.push_back(c);
    }
    return row;
}

inline PrimePowerRow prime_power_row(u64 ell, unsigned n) {
    PrimePowerRow row{ell, n, 0, 0, {}};
    const u64 d = big_pow(ell, n).convert_to<u64>();
    const u64 m = 4 * d;
    for (u64 c = 1; c < m; c += 4) {
        if (c % ell == 0) continue;
        const bool gen = generates_prime_power(c, ell, d);
        bool ss = false;
        if (cm_supersingular(ell, static_cast<i64>(c))) ss = cm_supersingular(d, static_cast<i64>(c));
        row.supersingular += ss;
        row.generators += gen;
        if (ss != gen) row.mismatches.push_back(c);
    }
    return row;
}

}  // namespace detail

/// Residue-class survey. prime-sweep and pair-sweep use primes up to ell_max;
/// prime-power-sweep uses exponents 2..max_power with ell^n capped.
inline SurveyReport survey(u64 ell_max, SurveyMode mode, unsigned max_power = 2, unsigned threads = 1) {
    if (ell_max > SurveyLimits::kMaxEll) {
        throw DomainError("survey: ell_max " + std::to_string(ell_max) + " exceeds limit " +
                          std::to_string(SurveyLimits::kMaxEll));
    }
    SurveyReport rep;
    rep.mode = mode;
    rep.ell_max = ell_max;
    const std::vector<u64> ells = detail::primes_1mod4(5, ell_max);
    switch (mode) {
        case SurveyMode::PrimeSweep:
            rep.primes = detail::parallel_map<PrimeSweepRow>(ells.size(), threads,
                                                             [&](std::size_t i) { return detail::prime_sweep_row(ells[i]); });
            break;
        case SurveyMode::PairSweep: {
            std::vector<std::pair<u64, u64>> work;
            for (std::size_t i = 0; i < ells.size(); ++i)
                for (std::size_t j = i + 1; j < ells.size(); ++j)
                    if (valuation(ells[i] - 1, 2) == valuation(ells[j] - 1, 2)) work.emplace_back(ells[i], ells[j]);
            rep.pairs = detail::parallel_map<PairSweepRow>(work.size(), threads, [&](std::size_t i) {
                const auto [a, b] = work[i];
                const std::set<u64> s = check_pair(a, b);
                return PairSweepRow{a, b, std::vector<u64>(s.begin(), s.end())};
            });
            break;
        }
        case SurveyMode::PrimePowerSweep: {
            if (max_power < 2) throw DomainError("survey: prime-power sweep needs max power >= 2");
            rep.max_power = max_power;
            std::vector<std::pair<u64, unsigned>> work;
            for (u64 l : ells) {
                for (unsigned n = 2; n <= max_power; ++n) {
                    if (big_pow(l, n) > SurveyLimits::kMaxPrimePower) {
                        if (n == 2) {
                            throw DomainError("survey: " + std::to_string(l) + "^2 exceeds the prime-power limit " +
                                              std::to_string(SurveyLimits::kMaxPrimePower));
                        }
                        break;
                    }
                    work.emplace_back(l, n);
                }
            }
            rep.powers = detail::parallel_map<PrimePowerRow>(
                work.size(), threads, [&](std::size_t i) { return detail::prime_power_row(work[i].first, work[i].second); });
            break;
        }
    }
    return rep;
}

}  // namespace chebmax
