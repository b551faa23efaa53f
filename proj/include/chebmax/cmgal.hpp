#pragma once

// The group (Z/4Z)^x x (Z/dZ)^x/(+-1), the CM type of H_d's new part,
// decomposition groups, and the slopes of Frobenius predicted from them.
//
// An element is a pair (sign, rep): sign in {+1, -1} stands for 1 or 3 mod 4,
// and rep = mg(a, d) in [1, d/2] stands for the class {a, -a}.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "chebmax/errors.hpp"
#include "chebmax/numtheory.hpp"
#include "chebmax/slopes.hpp"

namespace chebmax {

/// min(m mod n, n - (m mod n)).
constexpr u64 mg(i64 m, u64 n) {
    const u64 r = mod_floor(m, n);
    return r < n - r ? r : n - r;
}

struct GalEl {
    int sign = 1;
    u64 rep = 1;
    auto operator<=>(const GalEl&) const = default;
};

inline std::string to_string(const GalEl& e) {
    return "(" + std::string(e.sign > 0 ? "1" : "-1") + ",+-" + std::to_string(e.rep) + ")";
}

inline GalEl gal_mul(const GalEl& a, const GalEl& b, u64 d) {
    return {a.sign * b.sign, mg(static_cast<i64>(mulmod(a.rep, b.rep, d)), d)};
}

/// Every element of the group for modulus d (d >= 3 odd), sign +1 first.
inline std::vector<GalEl> galois_group(u64 d) {
    std::vector<GalEl> out;
    for (int s : {1, -1}) {
        for (u64 a = 1; a <= d / 2; ++a)
            if (std::gcd(a, d) == 1) out.push_back({s, a});
    }
    return out;
}

/// Membership in the CM type {((-1)^{m+1}, +-m) : 1 <= m <= (d-1)/2, gcd(m,d) = 1}:
/// exactly one sign per class, +1 for odd representatives.
constexpr bool in_cm_type(const GalEl& e) { return e.sign == (e.rep % 2 == 1 ? 1 : -1); }

struct CMType {
    u64 d = 0;
    std::set<GalEl> members;
};

inline CMType cm_type(u64 d) {
    if (d < 3 || d % 2 == 0) throw DomainError("cm_type: modulus must be odd and at least 3");
    CMType t{d, {}};
    for (u64 m = 1; m <= (d - 1) / 2; ++m) {
        if (std::gcd(m, d) != 1) continue;
        t.members.insert({m % 2 == 1 ? 1 : -1, mg(static_cast<i64>(m), d)});
    }
    return t;
}

struct GalSubgroup {
    u64 d = 0;
    std::vector<GalEl> elements;  // sorted

    std::size_t size() const noexcept { return elements.size(); }
    bool contains(const GalEl& e) const { return std::binary_search(elements.begin(), elements.end(), e); }
};

namespace detail {

inline void require_frobenius_class(u64 d, i64 p) {
    if (d < 3 || d % 2 == 0) throw DomainError("modulus d must be odd and at least 3, got " + std::to_string(d));
    if (std::gcd(mod_floor(p, 4 * d), 4 * d) != 1) {
        throw DomainError("p = " + std::to_string(p) + " is not coprime to 2d = " + std::to_string(2 * d));
    }
}

inline GalEl frobenius_element(u64 d, i64 p) {
    return {mod_floor(p, 4) == 1 ? 1 : -1, mg(p, d)};
}

inline std::size_t slot(const GalEl& e, u64 d) { return (e.sign < 0 ? d / 2 + 1 : 0) + e.rep; }

}  // namespace detail

/// D_p = <(p mod 4, +-p)>, the full cyclic closure of the Frobenius element.
inline GalSubgroup decomposition_group(u64 d, i64 p) {
    detail::require_frobenius_class(d, p);
    const GalEl gen = detail::frobenius_element(d, p);
    GalSubgroup g{d, {}};
    GalEl e = gen;
    g.elements.push_back(e);
    while (!(e.sign == 1 && e.rep == 1)) {
        e = gal_mul(e, gen, d);
        g.elements.push_back(e);
    }
    std::sort(g.elements.begin(), g.elements.end());
    return g;
}

namespace detail {

/// Visits each coset D_p * tau once, passing (#(Phi n coset), #D_p). Stops
/// early when `visit` returns false.
template <class Visit>
void for_each_coset(u64 d, i64 p, Visit&& visit) {
    const GalSubgroup D = decomposition_group(d, p);
    std::vector<char> seen(2 * (d / 2 + 1), 0);
    for (int s : {1, -1}) {
        for (u64 a = 1; a <= d / 2; ++a) {
            if (std::gcd(a, d) != 1) continue;
            const GalEl tau{s, a};
            if (seen[slot(tau, d)]) continue;
            std::int64_t hits = 0;
            for (const GalEl& x : D.elements) {
                const GalEl y = gal_mul(x, tau, d);
                seen[slot(y, d)] = 1;
                hits += in_cm_type(y);
            }
            if (!visit(hits, static_cast<std::int64_t>(D.size()))) return;
        }
    }
}

}  // namespace detail

/// Slopes #(Phi n D_p tau) / #D_p over the cosets, each with length #D_p.
/// Total length phi(d).
inline SlopeMultiset slopes2_multiset(u64 d, i64 p) {
    detail::require_frobenius_class(d, p);
    SlopeMultiset out;
    detail::for_each_coset(d, p, [&](std::int64_t hits, std::int64_t order) {
        out.add(Rational(hits, order), order);
        return true;
    });
    return out;
}

/// Same as slopes2_multiset for a prime modulus; total length ell - 1 = 2g.
inline SlopeMultiset slopes_multiset(u64 ell, i64 p) {
    if (ell < 3 || !is_prime(ell)) throw DomainError("slopes_multiset: ell must be an odd prime");
    return slopes2_multiset(ell, p);
}

inline std::set<Rational> slopes_set(u64 ell, i64 p) { return slopes_multiset(ell, p).support(); }

/// True iff 1/2 is the only CM slope; stops at the first other coset.
inline bool cm_supersingular(u64 d, i64 p) {
    detail::require_frobenius_class(d, p);
    bool ok = true;
    detail::for_each_coset(d, p, [&](std::int64_t hits, std::int64_t order) {
        ok = 2 * hits == order;
        return ok;
    });
    return ok;
}

/// Direct transcription of the published Magma routine: D_p is taken as the
/// powers p^1..p^ord with ord the multiplicative order of p mod d, and the
/// slopes are collected as a set. Agrees with slopes2_multiset's support when
/// p = 1 mod 4; may differ otherwise (the power set need not be a subgroup).
inline std::set<Rational> appendix_slopes_set(u64 d, i64 p) {
    detail::require_frobenius_class(d, p);
    const u64 pr = mod_floor(p, 4 * d);
    std::set<GalEl> phi;
    for (u64 n = 1; n <= (d - 1) / 2; ++n)
        if (std::gcd(n, d) == 1) phi.insert({n % 2 == 1 ? 1 : -1, mg(static_cast<i64>(n), d)});
    const u64 ord = mult_order(static_cast<i64>(pr % d), d);
    const bool half_odd = ((pr - 1) / 2) % 2 == 1;
    std::set<GalEl> dp;
    for (u64 n = 1; n <= ord; ++n) {
        const int sign = (half_odd && n % 2 == 1) ? -1 : 1;
        dp.insert({sign, mg(static_cast<i64>(powmod(pr % d, n, d)), d)});
    }
    std::set<Rational> sl;
    const auto denom = static_cast<std::int64_t>(dp.size());
    for (u64 m = 1; m <= (d - 1) / 2; ++m) {
        if (std::gcd(m, d) != 1) continue;
        std::set<GalEl> plus, minus;
        for (const GalEl& x : dp) {
            const u64 r = mg(static_cast<i64>(mulmod(m, x.rep, d)), d);
            plus.insert({x.sign, r});
            minus.insert({-x.sign, r});
        }
        auto count = [&](const std::set<GalEl>& s) {
            std::int64_t c = 0;
            for (const auto& x : s) c += phi.count(x);
            return c;
        };
        sl.insert(Rational(count(plus), denom));
        sl.insert(Rational(count(minus), denom));
    }
    return sl;
}

/// Classes p mod 4*ell1*ell2 with p = 1 mod 4 and p a primitive root modulo
/// both primes, for which the CM variety of conductor ell1*ell2 has 1/2 as
/// its only slope.
inline std::set<u64> check_pair(u64 ell1, u64 ell2) {
    if (ell1 == ell2 || ell1 < 3 || ell2 < 3 || !is_prime(ell1) || !is_prime(ell2)) {
        throw DomainError("check_pair: need two distinct odd primes");
    }
    const u64 d = ell1 * ell2;
    std::set<u64> out;
    const std::vector<u64> moduli{ell1, ell2, 4};
    for (u64 a : primroots(ell1)) {
        for (u64 b : primroots(ell2)) {
            const std::vector<i64> res{static_cast<i64>(a), static_cast<i64>(b), 1};
            const u64 cls = crt(res, moduli);
            if (cm_supersingular(d, static_cast<i64>(cls))) out.insert(cls);
        }
    }
    return out;
}

}  // namespace chebmax
