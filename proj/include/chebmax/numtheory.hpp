#pragma once

// Integer helpers: modular powers, Legendre symbols, multiplicative orders,
// primitive roots and CRT. All arithmetic is on 64-bit values with 128-bit
// intermediates.

#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "chebmax/errors.hpp"

namespace chebmax {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Least non-negative residue of a modulo m (m > 0).
constexpr u64 mod_floor(i64 a, u64 m) {
    const i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

constexpr u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline u64 euler_phi(u64 n) {
    u64 r = n;
    for (u64 f : prime_factors(n)) r = r / f * (f - 1);
    return r;
}

/// Exponent of the prime `p` in `n` (n != 0).
template <class Int>
unsigned valuation(Int n, u64 p) {
    if (n < 0) n = -n;
    if (n == 0) throw DomainError("valuation of zero");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Legendre symbol (a/p) via Euler's criterion.
inline int legendre(i64 a, u64 p) {
    if (p < 3 || !is_prime(p)) throw DomainError("legendre: modulus must be an odd prime");
    const u64 r = mod_floor(a, p);
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Least k >= 1 with a^k = 1 (mod m).
inline u64 mult_order(i64 a, u64 m) {
    if (m < 2) throw DomainError("mult_order: modulus must be at least 2");
    const u64 r = mod_floor(a, m);
    if (std::gcd(r, m) != 1) throw DomainError("mult_order: argument not a unit modulo " + std::to_string(m));
    u64 k = euler_phi(m);
    for (u64 f : prime_factors(k)) {
        while (k % f == 0 && powmod(r, k / f, m) == 1) k /= f;
    }
    return k;
}

/// Least k >= 1 with a^k = +-1 (mod m), i.e. the order in (Z/mZ)^x / (+-1).
inline u64 pm_order(i64 a, u64 m) {
    if (m < 3) throw DomainError("pm_order: modulus must be at least 3");
    const u64 r = mod_floor(a, m);
    if (std::gcd(r, m) != 1) throw DomainError("pm_order: argument not a unit modulo " + std::to_string(m));
    u64 x = r;
    for (u64 k = 1;; ++k) {
        if (x == 1 || x == m - 1) return k;
        x = mulmod(x, r, m);
    }
}

inline bool is_primitive_root(i64 a, u64 p) {
    const u64 r = mod_floor(a, p);
    return std::gcd(r, p) == 1 && mult_order(static_cast<i64>(r), p) == euler_phi(p);
}

/// All primitive roots modulo the prime p: the powers g^m with gcd(m, p-1) = 1
/// of the least primitive root g.
inline std::set<u64> primroots(u64 p) {
    if (!is_prime(p)) throw DomainError("primroots: " + std::to_string(p) + " is not prime");
    if (p == 2) return {1};
    u64 g = 2;
    while (!is_primitive_root(static_cast<i64>(g), p)) ++g;
    std::set<u64> out;
    for (u64 m = 1; m <= p - 2; ++m) {
        if (std::gcd(m, p - 1) == 1) out.insert(powmod(g, m, p));
    }
    return out;
}

/// Unique residue modulo the product of pairwise-coprime moduli.
inline u64 crt(std::span<const i64> residues, std::span<const u64> moduli) {
    if (residues.size() != moduli.size() || moduli.empty()) throw DomainError("crt: mismatched inputs");
    u64 x = 0, m = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const u64 mi = moduli[i];
        if (mi == 0) throw DomainError("crt: zero modulus");
        if (std::gcd(m, mi) != 1) throw DomainError("crt: moduli are not pairwise coprime");
        const u64 ri = mod_floor(residues[i], mi);
        // x + m*t = ri (mod mi)  =>  t = (ri - x) * m^{-1} (mod mi)
        const u64 inv = powmod(m % mi, euler_phi(mi) - 1, mi);
        const u64 t = mulmod(mod_floor(static_cast<i64>(ri) - static_cast<i64>(x % mi), mi), inv, mi);
        x += m * t;
        m *= mi;
    }
    return x % m;
}

inline BigInt big_pow(u64 base, unsigned exp) {
    return boost::multiprecision::pow(BigInt(base), exp);
}

}  // namespace chebmax
