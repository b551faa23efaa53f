#pragma once

// Slow, independent reference computations used as test oracles. None of
// these share code paths with the library kernels they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "chebmax/chebmax.hpp"

namespace oracle {

using chebmax::BigInt;
using chebmax::FieldCtx;
using chebmax::FieldElement;
using chebmax::FpPoly;
using chebmax::Rational;
using chebmax::u64;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

inline std::vector<u64> odd_primes(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 p = std::max<u64>(lo, 3); p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

/// Integer coefficients of Phi_d from Phi_d(x + 1/x) = x^d + x^{-d} by
/// peeling off the binomial expansion of (x + 1/x)^k from the top.
inline std::vector<BigInt> chebyshev_by_binomials(unsigned d) {
    // target Laurent polynomial stored at offset d: index i <-> exponent i - d
    std::vector<BigInt> target(2 * d + 1, 0);
    target[0] = 1;
    target[2 * d] = 1;
    std::vector<BigInt> coeffs(d + 1, 0);
    for (int k = static_cast<int>(d); k >= 0; --k) {
        const BigInt c = target[d + k];
        coeffs[k] = c;
        if (c == 0) continue;
        // subtract c * (x + 1/x)^k = c * sum_j binom(k, j) x^{k - 2j}
        BigInt binom = 1;
        for (int j = 0; j <= k; ++j) {
            target[d + k - 2 * j] -= c * binom;
            binom = binom * (k - j) / (j + 1);
        }
    }
    return coeffs;
}

/// Number of affine points plus points at infinity, by counting square roots
/// of every element directly.
inline u64 count_by_squaring(u64 d, u64 p, unsigned n) {
    const FieldCtx ctx = chebmax::make_field(p, n);
    const u64 q = static_cast<u64>(ctx.order());
    std::vector<u64> roots(q, 0);
    for (u64 i = 0; i < q; ++i) {
        const FieldElement y = chebmax::element_at(ctx, i);
        ++roots[chebmax::index_of(y * y)];
    }
    const FpPoly f = chebmax::reduce_mod(chebmax::chebyshev(static_cast<unsigned>(d)), p);
    u64 affine = 0;
    for (u64 i = 0; i < q; ++i) {
        const FieldElement x = chebmax::element_at(ctx, i);
        FieldElement v = FieldElement::zero(ctx);
        FieldElement xk = FieldElement::one(ctx);
        for (u64 c : f.coeffs()) {
            v = v + FieldElement::from_int(ctx, static_cast<chebmax::i64>(c)) * xk;
            xk = xk * x;
        }
        affine += roots[chebmax::index_of(v)];
    }
    return affine + (d % 2 == 1 ? 1 : 2);
}

/// Irreducibility by trial division with every monic polynomial of degree
/// 1..deg/2.
inline bool irreducible_by_search(const FpPoly& f) {
    const u64 p = f.modulus();
    const int n = f.degree();
    for (int k = 1; 2 * k <= n; ++k) {
        std::vector<u64> c(k + 1, 0);
        c[k] = 1;
        while (true) {
            if ((f % FpPoly(p, c)).is_zero()) return false;
            int i = 0;
            while (i < k && ++c[i] == p) c[i++] = 0;
            if (i == k) break;
        }
    }
    return true;
}

/// Slopes of the lower convex hull of `pts` (sorted by x, distinct x), each
/// unit segment contributing length 1. The hull height at integer x is the
/// minimum over all chords spanning x.
inline chebmax::SlopeMultiset hull_slopes_by_chords(const std::vector<std::pair<long, Rational>>& pts) {
    const long x0 = pts.front().first, x1 = pts.back().first;
    std::vector<Rational> h;
    for (long x = x0; x <= x1; ++x) {
        bool set = false;
        Rational best;
        for (const auto& a : pts) {
            for (const auto& b : pts) {
                if (a.first > x || b.first < x) continue;
                Rational y = a.second;
                if (b.first != a.first) y = a.second + (b.second - a.second) * Rational(x - a.first, b.first - a.first);
                else if (a.first != x) continue;
                if (!set || y < best) best = y, set = true;
            }
        }
        h.push_back(best);
    }
    chebmax::SlopeMultiset out;
    for (std::size_t i = 1; i < h.size(); ++i) out.add(h[i] - h[i - 1], 1);
    return out;
}

/// Least prime in the residue class c mod m.
inline u64 least_prime_in_class(u64 c, u64 m) {
    for (u64 p = c % m; ; p += m)
        if (p > 2 && is_prime(p)) return p;
}

inline FieldElement random_element(const FieldCtx& ctx, std::mt19937_64& rng) {
    std::vector<u64> c(ctx.degree());
    std::uniform_int_distribution<u64> dist(0, ctx.characteristic() - 1);
    for (auto& x : c) x = dist(rng);
    return FieldElement(ctx, std::move(c));
}

}  // namespace oracle
