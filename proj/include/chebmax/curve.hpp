#pragma once

// The hyperelliptic curve H_d : y^2 = phi_d(x) over F_{p^n}: genus, exhaustive
// point counts, Dickson permutation test and maximality by counting.

#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "chebmax/errors.hpp"
#include "chebmax/field.hpp"
#include "chebmax/intpoly.hpp"
#include "chebmax/numtheory.hpp"

namespace chebmax {

inline u64 genus(u64 d) {
    if (d == 0) throw DomainError("genus: degree must be positive");
    return (d - 1) / 2;
}

struct CurveSpec {
    u64 d = 1;
    u64 p = 3;
    unsigned n = 1;

    /// Throws DomainError unless p is an odd prime with gcd(p, 2d) = 1.
    void validate() const {
        if (d == 0) throw DomainError("d must be positive");
        if (p == 2 || !is_prime(p)) throw DomainError("p must be an odd prime, got " + std::to_string(p));
        if (n == 0) throw DomainError("n must be positive");
        if (std::gcd(p, 2 * d) != 1) {
            throw DomainError("phi_" + std::to_string(d) + " is not separable in characteristic " + std::to_string(p));
        }
    }
    u64 genus() const { return chebmax::genus(d); }
    BigInt field_size() const { return big_pow(p, n); }
    /// Rational points at infinity on the smooth model.
    unsigned points_at_infinity() const { return d % 2 == 1 ? 1 : 2; }
};

struct CountOptions {
    Budget budget{};
    unsigned threads = 1;
};

inline BigInt count_cost_estimate(const CurveSpec& s) { return s.field_size() * s.d; }

namespace detail {

/// phi_d mod p split by parity: phi_d(x) = x^parity * h(x^2).
struct ParityHorner {
    std::vector<u64> h;  // coefficients of h, lowest first
    bool odd = false;

    ParityHorner(u64 d, u64 p) : odd(d % 2 == 1) {
        const FpPoly f = reduce_mod(chebyshev(static_cast<unsigned>(d)), p);
        for (std::size_t k = odd ? 1 : 0; k < f.coeffs().size(); k += 2) h.push_back(f.coeffs()[k]);
    }
};

/// Sum of chi(phi_d(x)) over x with index in [first, last) of F_{p^n}, n >= 2.
inline i64 extension_character_sum(const FieldCtx& ctx, const ParityHorner& ph, const std::vector<int8_t>& chi_table,
                                   u64 first, u64 last) {
    const unsigned n = ctx.degree();
    const u64 p = ctx.characteristic();
    std::vector<u64> x(n), s(n), acc(n), work(4 * n), scratch(2 * n);
    u64 idx = first;
    for (auto& c : x) {
        c = idx % p;
        idx /= p;
    }
    auto chi = [&](u64 v) -> int { return chi_table.empty() ? legendre(static_cast<i64>(v), p) : chi_table[v]; };
    i64 sum = 0;
    for (u64 i = first; i < last; ++i) {
        ctx.mul(x.data(), x.data(), s.data(), scratch.data());
        std::fill(acc.begin(), acc.end(), u64{0});
        acc[0] = ph.h.back();
        for (std::size_t j = ph.h.size() - 1; j-- > 0;) {
            ctx.mul(acc.data(), s.data(), acc.data(), scratch.data());
            acc[0] += ph.h[j];
            if (acc[0] >= p) acc[0] -= p;
        }
        if (ph.odd) ctx.mul(acc.data(), x.data(), acc.data(), scratch.data());
        bool zero = true;
        for (u64 c : acc)
            if (c) {
                zero = false;
                break;
            }
        if (!zero) sum += chi(ctx.norm(acc.data(), work.data()));
        // next index: base-p odometer, lowest coefficient fastest
        for (unsigned k = 0; k < n; ++k) {
            if (++x[k] < p) break;
            x[k] = 0;
        }
    }
    return sum;
}

inline i64 prime_character_sum(u64 p, const std::vector<u64>& phi_values, const std::vector<int8_t>& chi_table,
                               u64 first, u64 last) {
    i64 sum = 0;
    for (u64 x = first; x < last; ++x) {
        const u64 v = phi_values[x];
        sum += chi_table.empty() ? legendre(static_cast<i64>(v), p) : chi_table[v];
    }
    return sum;
}

inline std::vector<int8_t> character_table(u64 p) {
    constexpr u64 kMaxTable = u64{1} << 26;
    std::vector<int8_t> t;
    if (p > kMaxTable) return t;
    t.assign(p, -1);
    t[0] = 0;
    for (u64 y = 1; y <= p / 2; ++y) t[mulmod(y, y, p)] = 1;
    return t;
}

}  // namespace detail

/// Character-sum kernel over index range [first, last): returns
/// sum of chi(phi_d(x)). Exact integer, independent of how ranges are split.
class PointCounter {
   public:
    PointCounter(const CurveSpec& spec, const FieldCtx& ctx)
        : spec_(spec), ctx_(ctx), ph_(spec.d, spec.p), chi_(detail::character_table(spec.p)) {
        spec_.validate();
        if (ctx_.characteristic() != spec.p || ctx_.degree() != spec.n) throw DomainError("PointCounter: field mismatch");
        if (spec_.n == 1) {
            const FpPoly f = reduce_mod(chebyshev(static_cast<unsigned>(spec.d)), spec.p);
            phi_values_.resize(spec.p);
            for (u64 x = 0; x < spec.p; ++x) phi_values_[x] = f(x);
        }
    }

    i64 character_sum(u64 first, u64 last) const {
        if (spec_.n == 1) return detail::prime_character_sum(spec_.p, phi_values_, chi_, first, last);
        return detail::extension_character_sum(ctx_, ph_, chi_, first, last);
    }

    /// Splits [0, q) into `workers` contiguous ranges summed concurrently.
    i64 character_sum_parallel(unsigned workers) const {
        const u64 q = static_cast<u64>(ctx_.order());
        if (workers <= 1) return character_sum(0, q);
        std::vector<i64> partial(workers, 0);
        std::vector<std::thread> pool;
        for (unsigned k = 1; k < workers; ++k) {
            pool.emplace_back([&, k] { partial[k] = character_sum(q * k / workers, q * (k + 1) / workers); });
        }
        partial[0] = character_sum(0, q / workers);
        for (auto& t : pool) t.join();
        return std::accumulate(partial.begin(), partial.end(), i64{0});
    }

    u64 total(i64 char_sum) const {
        return static_cast<u64>(static_cast<i64>(static_cast<u64>(ctx_.order())) + char_sum) + spec_.points_at_infinity();
    }

   private:
    CurveSpec spec_;
    FieldCtx ctx_;
    detail::ParityHorner ph_;
    std::vector<int8_t> chi_;
    std::vector<u64> phi_values_;
};

/// #H_d(F_{p^n}) on the smooth projective model.
inline u64 count_points(const CurveSpec& spec, const CountOptions& opts = {}) {
    spec.validate();
    opts.budget.require(spec.field_size(), count_cost_estimate(spec),
                        "counting H_" + std::to_string(spec.d) + " over F_" + std::to_string(spec.p) + "^" +
                            std::to_string(spec.n));
    const FieldCtx ctx = make_field(spec.p, spec.n);
    const PointCounter counter(spec, ctx);
    return counter.total(counter.character_sum_parallel(opts.threads));
}

/// Dickson criterion: phi_d permutes F_{p^n} iff gcd(p^{2n} - 1, d) = 1.
inline bool is_permutation(u64 d, u64 p, unsigned n) {
    if (d == 0) throw DomainError("is_permutation: degree must be positive");
    if (d == 1) return true;
    const u64 r = (powmod(p % d, 2 * static_cast<u64>(n), d) + d - 1) % d;
    return std::gcd(r, d) == 1;
}

/// Bijectivity of x -> phi_d(x) on F_{p^n} checked element by element.
inline bool is_permutation_exhaustive(u64 d, u64 p, unsigned n, const Budget& budget = {}) {
    const CurveSpec spec{d, p, n};
    spec.validate();
    const FieldCtx ctx = make_field(p, n);
    const ElementStream all = enumerate(ctx, budget);
    const FpPoly f = reduce_mod(chebyshev(static_cast<unsigned>(d)), p);
    std::vector<bool> hit(all.size(), false);
    for (const FieldElement& x : all) {
        FieldElement acc = FieldElement::zero(ctx);
        for (std::size_t k = f.coeffs().size(); k-- > 0;) acc = acc * x + FieldElement::from_int(ctx, static_cast<i64>(f.coeffs()[k]));
        const u64 idx = index_of(acc);
        if (hit[idx]) return false;
        hit[idx] = true;
    }
    return true;
}

/// q + 1 + 2 g sqrt(q) for q = p^n with n even.
inline BigInt maximal_point_count(u64 p, unsigned n, u64 g) {
    if (n % 2 != 0) throw DomainError("maximality is defined over fields of square order; n must be even");
    return big_pow(p, n) + 1 + 2 * BigInt(g) * big_pow(p, n / 2);
}

/// |N - (q+1)| <= 2 g sqrt(q), compared through squares.
inline bool within_weil_bound(const BigInt& count, const BigInt& q, u64 g) {
    const BigInt dev = count - (q + 1);
    return dev * dev <= 4 * BigInt(g) * BigInt(g) * q;
}

inline bool is_maximal_by_count(const CurveSpec& spec, const CountOptions& opts = {}) {
    spec.validate();
    const BigInt target = maximal_point_count(spec.p, spec.n, spec.genus());
    return BigInt(count_points(spec, opts)) == target;
}

}  // namespace chebmax
