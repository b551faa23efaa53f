#pragma once

// L-polynomials (zeta numerators) of H_d over F_q: reconstruction from point
// counts, counts over extensions, Newton polygon slopes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chebmax/curve.hpp"
#include "chebmax/errors.hpp"
#include "chebmax/intpoly.hpp"
#include "chebmax/numtheory.hpp"
#include "chebmax/slopes.hpp"

namespace chebmax {

/// (p, n) with q = p^n.
inline std::pair<u64, unsigned> prime_power_base(const BigInt& q) {
    if (q < 2) throw DomainError("not a prime power: " + q.str());
    u64 p = 0;
    for (u64 f = 2; f < 1'000'000 && BigInt(f) * f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    if (p == 0) {
        if (q > std::numeric_limits<u64>::max() || !is_prime(static_cast<u64>(q))) {
            throw DomainError("not a prime power: " + q.str());
        }
        return {static_cast<u64>(q), 1};
    }
    BigInt r = q;
    unsigned n = 0;
    while (r % p == 0) {
        r /= p;
        ++n;
    }
    if (r != 1) throw DomainError("not a prime power: " + q.str());
    return {p, n};
}

/// P(T) = 1 + c_1 T + ... + c_{2g} T^{2g}.
class LPoly {
   public:
    LPoly(BigInt q, u64 g, std::vector<BigInt> coeffs) : q_(std::move(q)), g_(g), c_(std::move(coeffs)) {
        std::tie(p_, n_) = prime_power_base(q_);
        if (c_.size() != 2 * g_ + 1) throw DomainError("LPoly: expected " + std::to_string(2 * g_ + 1) + " coefficients");
        if (c_[0] != 1) throw DomainError("LPoly: constant coefficient must be 1");
    }

    const BigInt& q() const noexcept { return q_; }
    u64 genus() const noexcept { return g_; }
    u64 base_prime() const noexcept { return p_; }
    unsigned base_exponent() const noexcept { return n_; }
    const std::vector<BigInt>& coeffs() const noexcept { return c_; }
    BigInt coeff(std::size_t j) const { return j < c_.size() ? c_[j] : BigInt(0); }

    BigInt operator()(const BigInt& t) const {
        BigInt acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    /// c_{2g-i} = q^{g-i} c_i for 0 <= i <= g.
    bool satisfies_functional_equation() const {
        for (u64 i = 0; i <= g_; ++i) {
            if (c_[2 * g_ - i] != boost::multiprecision::pow(q_, static_cast<unsigned>(g_ - i)) * c_[i]) return false;
        }
        return true;
    }

    ZPoly as_zpoly() const { return ZPoly(c_); }

    friend bool operator==(const LPoly& a, const LPoly& b) { return a.q_ == b.q_ && a.g_ == b.g_ && a.c_ == b.c_; }

   private:
    BigInt q_;
    u64 g_;
    std::vector<BigInt> c_;
    u64 p_ = 0;
    unsigned n_ = 0;
};

/// Power sums S_1..S_m of the reciprocal roots, via Newton's identities.
inline std::vector<BigInt> power_sums(const LPoly& P, unsigned m) {
    std::vector<BigInt> S(m + 1, 0);
    for (unsigned k = 1; k <= m; ++k) {
        BigInt s = -BigInt(k) * P.coeff(k);
        for (unsigned i = 1; i < k; ++i) s -= S[i] * P.coeff(k - i);
        S[k] = s;
    }
    return S;
}

/// N_m = q^m + 1 - S_m.
inline BigInt counts_from_lpoly(const LPoly& P, unsigned m) {
    if (m == 0) throw DomainError("counts_from_lpoly: extension degree must be positive");
    return boost::multiprecision::pow(P.q(), m) + 1 - power_sums(P, m)[m];
}

/// Rebuilds P from N_1..N_g: c_1..c_g by Newton's identities (divisions must be
/// exact), c_{g+1}..c_{2g} by the functional equation.
inline LPoly lpoly_from_counts(std::span<const BigInt> counts, const BigInt& q, u64 g) {
    if (counts.size() != g) {
        throw DomainError("lpoly_from_counts: expected " + std::to_string(g) + " counts, got " + std::to_string(counts.size()));
    }
    std::vector<BigInt> S(g + 1, 0), c(2 * g + 1, 0);
    c[0] = 1;
    for (u64 m = 1; m <= g; ++m) {
        const BigInt qm = boost::multiprecision::pow(q, static_cast<unsigned>(m));
        S[m] = qm + 1 - counts[m - 1];
        if (S[m] * S[m] > 4 * BigInt(g) * BigInt(g) * qm) {
            throw InvalidCountsError("count N_" + std::to_string(m) + " = " + counts[m - 1].str() + " violates the Weil bound");
        }
        BigInt num = 0;
        for (u64 i = 1; i <= m; ++i) num -= S[i] * c[m - i];
        if (num % m != 0) {
            throw InvalidCountsError("Newton identity step " + std::to_string(m) + " is not integral: counts are inconsistent");
        }
        c[m] = num / m;
    }
    for (u64 i = 0; i < g; ++i) c[2 * g - i] = boost::multiprecision::pow(q, static_cast<unsigned>(g - i)) * c[i];
    return LPoly(q, g, std::move(c));
}

inline LPoly lpoly_from_counts(std::span<const u64> counts, const BigInt& q, u64 g) {
    std::vector<BigInt> big(counts.begin(), counts.end());
    return lpoly_from_counts(std::span<const BigInt>(big), q, g);
}

/// Slopes of the lower convex hull of (j, v_p(c_j) / v_p(q)) over c_j != 0.
inline SlopeMultiset newton_slopes(const LPoly& P) {
    struct Pt {
        std::int64_t x;
        Rational y;
    };
    std::vector<Pt> pts;
    const u64 p = P.base_prime();
    const std::int64_t n = P.base_exponent();
    for (std::size_t j = 0; j < P.coeffs().size(); ++j) {
        if (P.coeffs()[j] == 0) continue;
        pts.push_back({static_cast<std::int64_t>(j), Rational(valuation(P.coeffs()[j], p), n)});
    }
    auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
        return Rational(a.x - o.x) * (b.y - o.y) - (a.y - o.y) * Rational(b.x - o.x);
    };
    std::vector<Pt> hull;
    for (const Pt& pt : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
        hull.push_back(pt);
    }
    SlopeMultiset out;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const std::int64_t dx = hull[i].x - hull[i - 1].x;
        out.add((hull[i].y - hull[i - 1].y) / Rational(dx), dx);
    }
    return out;
}

/// Maximality over F_{q^e} (e even): N_e = q^e + 1 + 2 g q^{e/2}.
inline bool is_maximal_from_lpoly(const LPoly& P, unsigned e) {
    if (e == 0 || e % 2 != 0) throw DomainError("is_maximal_from_lpoly: exponent must be positive and even");
    const BigInt target = boost::multiprecision::pow(P.q(), e) + 1 +
                          2 * BigInt(P.genus()) * boost::multiprecision::pow(P.q(), e / 2);
    return counts_from_lpoly(P, e) == target;
}

/// Element visits needed to count over F_p, ..., F_{p^g}.
inline BigInt lpoly_visits(u64 d, u64 p) {
    BigInt v = 0;
    for (u64 m = 1; m <= genus(d); ++m) v += big_pow(p, static_cast<unsigned>(m));
    return v;
}

/// L-polynomial of H_d over F_p from exhaustive counts over F_{p^m}, m <= g.
inline LPoly lpoly_of_curve(u64 d, u64 p, const CountOptions& opts = {}) {
    CurveSpec{d, p, 1}.validate();
    const u64 g = genus(d);
    const BigInt visits = lpoly_visits(d, p);
    opts.budget.require(visits, visits * d,
                        "L-polynomial of H_" + std::to_string(d) + " over F_" + std::to_string(p) + " needs counts up to F_" +
                            std::to_string(p) + "^" + std::to_string(g));
    std::vector<BigInt> counts;
    for (u64 m = 1; m <= g; ++m) {
        CountOptions o = opts;
        o.budget.max_visits = std::numeric_limits<u64>::max();
        counts.emplace_back(count_points(CurveSpec{d, p, static_cast<unsigned>(m)}, o));
    }
    return lpoly_from_counts(std::span<const BigInt>(counts), BigInt(p), g);
}

/// Writes P as a product of factors (1 + p^a T^b), smallest b first, when
/// exact trial division succeeds; nullopt otherwise. Larger b are tried first
/// since 1 + c^k T^{kb} is itself divisible by 1 + c T^b for odd k.
inline std::optional<std::vector<std::pair<unsigned, unsigned>>> binomial_factors(const LPoly& P) {
    const u64 p = P.base_prime();
    std::vector<BigInt> rem = P.coeffs();
    std::vector<std::pair<unsigned, unsigned>> out;
    // Series division of rem by (1 + c T^b); exact iff the tail vanishes.
    auto try_divide = [](const std::vector<BigInt>& f, const BigInt& c, std::size_t b) -> std::optional<std::vector<BigInt>> {
        const std::size_t deg = f.size() - 1;
        if (b > deg) return std::nullopt;
        std::vector<BigInt> quot(deg - b + 1, 0);
        std::vector<BigInt> r = f;
        for (std::size_t k = 0; k <= deg - b; ++k) {
            quot[k] = r[k];
            if (quot[k] != 0) r[k + b] -= c * quot[k];
            r[k] = 0;
        }
        for (const auto& x : r)
            if (x != 0) return std::nullopt;
        return quot;
    };
    while (rem.size() > 1) {
        bool found = false;
        const unsigned vmax = valuation(rem.back(), p);
        for (std::size_t b = rem.size() - 1; b >= 1 && !found; --b) {
            for (unsigned a = 0; a <= vmax && !found; ++a) {
                if (auto q = try_divide(rem, big_pow(p, a), b)) {
                    rem = std::move(*q);
                    out.emplace_back(a, static_cast<unsigned>(b));
                    found = true;
                }
            }
        }
        if (!found) return std::nullopt;
    }
    if (rem.size() != 1 || rem[0] != 1) return std::nullopt;
    std::sort(out.begin(), out.end(), [](auto x, auto y) { return std::pair{x.second, x.first} < std::pair{y.second, y.first}; });
    return out;
}

/// "(p^2 x^4 + 1)(p^10 x^20 + 1)"-style display; raw coefficients on failure.
inline std::string factored_display(const LPoly& P) {
    if (P.genus() == 0) return "1";
    if (auto f = binomial_factors(P)) {
        std::string s;
        for (auto [a, b] : *f) {
            std::string pa = a == 0 ? "" : (a == 1 ? "p " : "p^" + std::to_string(a) + " ");
            std::string xb = b == 1 ? "x" : "x^" + std::to_string(b);
            s += "(" + pa + xb + " + 1)";
        }
        return s;
    }
    return P.as_zpoly().to_string(true);
}

}  // namespace chebmax
