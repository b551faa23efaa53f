#pragma once

// Dense polynomials over Z and over F_p, lowest degree first.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "chebmax/errors.hpp"
#include "chebmax/numtheory.hpp"

namespace chebmax {

class ZPoly {
   public:
    ZPoly() = default;
    explicit ZPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    ZPoly(std::initializer_list<long long> coeffs) {
        for (long long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }

    static ZPoly monomial(unsigned degree, BigInt c = 1) {
        std::vector<BigInt> v(degree + 1);
        v[degree] = std::move(c);
        return ZPoly(std::move(v));
    }

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
    const BigInt& leading() const { return coeffs_.back(); }

    BigInt operator()(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    ZPoly derivative() const {
        std::vector<BigInt> v;
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(coeffs_[i] * static_cast<unsigned>(i));
        return ZPoly(std::move(v));
    }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return ZPoly(std::move(v));
    }
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return ZPoly(std::move(v));
    }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return ZPoly(std::move(v));
    }
    friend bool operator==(const ZPoly&, const ZPoly&) = default;

    /// f(g(x)).
    ZPoly compose(const ZPoly& inner) const {
        ZPoly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + ZPoly(std::vector<BigInt>{*it});
        return acc;
    }

    /// Exact division by a monic divisor; throws if the remainder is nonzero.
    ZPoly exact_div(const ZPoly& divisor) const {
        if (divisor.is_zero() || divisor.leading() != 1) throw DomainError("exact_div: divisor must be monic");
        std::vector<BigInt> rem = coeffs_;
        const int dd = divisor.degree();
        if (degree() < dd) {
            if (is_zero()) return {};
            throw DomainError("exact_div: nonzero remainder");
        }
        std::vector<BigInt> quot(degree() - dd + 1);
        for (int i = degree() - dd; i >= 0; --i) {
            const BigInt c = rem[i + dd];
            quot[i] = c;
            if (c == 0) continue;
            for (int j = 0; j <= dd; ++j) rem[i + j] -= c * divisor.coeffs_[j];
        }
        for (const auto& r : rem) {
            if (r != 0) throw DomainError("exact_div: nonzero remainder");
        }
        return ZPoly(std::move(quot));
    }

    /// Coefficient `c` multiplied by x^k written "c*x^k"; highest degree first unless `ascending`.
    std::string to_string(bool ascending = false) const;

   private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<BigInt> coeffs_;
};

namespace detail {

inline std::string format_terms(const std::vector<std::pair<std::string, unsigned>>& terms, bool ascending) {
    // terms: (signed coefficient text, degree), already nonzero
    if (terms.empty()) return "0";
    std::vector<std::pair<std::string, unsigned>> order = terms;
    if (!ascending) std::reverse(order.begin(), order.end());
    std::string out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::string c = order[i].first;
        const unsigned k = order[i].second;
        const bool neg = c.front() == '-';
        if (neg) c.erase(0, 1);
        if (i == 0) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
        if (mono.empty()) {
            out += c;
        } else if (c == "1") {
            out += mono;
        } else {
            out += c + "*" + mono;
        }
    }
    return out;
}

}  // namespace detail

inline std::string ZPoly::to_string(bool ascending) const {
    std::vector<std::pair<std::string, unsigned>> terms;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) terms.emplace_back(coeffs_[i].str(), static_cast<unsigned>(i));
    }
    return detail::format_terms(terms, ascending);
}

/// Polynomial over the prime field F_p.
class FpPoly {
   public:
    FpPoly() = default;
    FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }
    static FpPoly x(u64 p) { return FpPoly(p, {0, 1}); }
    static FpPoly constant(u64 p, u64 c) { return FpPoly(p, {c}); }

    u64 modulus() const noexcept { return p_; }
    const std::vector<u64>& coeffs() const noexcept { return c_; }
    u64 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    u64 leading() const { return c_.back(); }

    friend bool operator==(const FpPoly&, const FpPoly&) = default;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        std::vector<u64> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
        return FpPoly(a.p_, std::move(v));
    }
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        std::vector<u64> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + a.p_ - b.coeff(i)) % a.p_;
        return FpPoly(a.p_, std::move(v));
    }
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
        std::vector<u64> v(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = (v[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
        }
        return FpPoly(a.p_, std::move(v));
    }

    FpPoly scaled(u64 s) const {
        std::vector<u64> v(c_);
        for (auto& x : v) x = mulmod(x, s, p_);
        return FpPoly(p_, std::move(v));
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        return scaled(powmod(leading(), p_ - 2, p_));
    }

    FpPoly derivative() const {
        std::vector<u64> v;
        for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(mulmod(c_[i], i % p_, p_));
        return FpPoly(p_, std::move(v));
    }

    /// (quotient, remainder) of Euclidean division.
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const {
        if (d.is_zero()) throw DomainError("FpPoly: division by zero polynomial");
        std::vector<u64> r = c_;
        if (degree() < d.degree()) return {FpPoly(p_, {}), *this};
        const u64 inv = powmod(d.leading(), p_ - 2, p_);
        const int dd = d.degree();
        std::vector<u64> q(degree() - dd + 1, 0);
        for (int i = degree() - dd; i >= 0; --i) {
            const u64 c = mulmod(r[i + dd], inv, p_);
            q[i] = c;
            if (c == 0) continue;
            for (int j = 0; j <= dd; ++j) r[i + j] = (r[i + j] + p_ - mulmod(c, d.c_[j], p_)) % p_;
        }
        return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
    }
    FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }

    u64 operator()(u64 x) const {
        u64 acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mulmod(acc, x, p_) + *it) % p_;
        return acc;
    }

    std::string to_string(bool ascending = false) const {
        std::vector<std::pair<std::string, unsigned>> terms;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] != 0) terms.emplace_back(std::to_string(c_[i]), static_cast<unsigned>(i));
        }
        return detail::format_terms(terms, ascending);
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    u64 p_ = 0;
    std::vector<u64> c_;
};

/// Monic gcd.
inline FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^e mod f, by binary powering.
inline FpPoly powmod(FpPoly base, BigInt e, const FpPoly& f) {
    FpPoly r = FpPoly::constant(f.modulus(), 1) % f;
    base = base % f;
    while (e > 0) {
        if (static_cast<unsigned>(e & 1)) r = (r * base) % f;
        base = (base * base) % f;
        e >>= 1;
    }
    return r;
}

/// Phi_d with Phi_d(x + 1/x) = x^d + x^{-d}.
inline ZPoly chebyshev(unsigned d) {
    if (d == 0) throw DomainError("chebyshev: degree must be positive");
    ZPoly prev{0, 1};       // Phi_1
    ZPoly cur{-2, 0, 1};    // Phi_2
    if (d == 1) return prev;
    const ZPoly x{0, 1};
    for (unsigned k = 3; k <= d; ++k) {
        ZPoly next = x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Phi_d(0) from the residue of d mod 4.
inline long long eval_at_zero(unsigned d) {
    if (d == 0) throw DomainError("eval_at_zero: degree must be positive");
    if (d % 2 == 1) return 0;
    return d % 4 == 2 ? -2 : 2;
}

/// Phi_d'(0) from the residue of d mod 4.
inline long long derivative_at_zero(unsigned d) {
    if (d == 0) throw DomainError("derivative_at_zero: degree must be positive");
    if (d % 2 == 0) return 0;
    return d % 4 == 1 ? static_cast<long long>(d) : -static_cast<long long>(d);
}

/// psi_ell with x * psi_ell(x) = Phi_ell(x).
inline ZPoly odd_part(unsigned ell) {
    if (ell % 2 == 0) throw DomainError("odd_part: degree must be odd");
    const ZPoly phi = chebyshev(ell);
    return ZPoly(std::vector<BigInt>(phi.coeffs().begin() + 1, phi.coeffs().end()));
}

inline FpPoly reduce_mod(const ZPoly& f, u64 p) {
    std::vector<u64> v;
    v.reserve(f.coeffs().size());
    const BigInt bp = p;
    for (const auto& c : f.coeffs()) {
        BigInt r = c % bp;
        if (r < 0) r += bp;
        v.push_back(static_cast<u64>(r));
    }
    return FpPoly(p, std::move(v));
}

/// Separability of phi_d over F_q, q a prime power.
inline bool is_separable(u64 d, u64 q) {
    return d == 1 || std::gcd(q, 2 * d) == 1;
}

/// gcd(phi_d, phi_d') = 1 over F_p, computed directly.
inline bool is_squarefree_mod(unsigned d, u64 p) {
    const FpPoly f = reduce_mod(chebyshev(d), p);
    return gcd(f, f.derivative()).degree() == 0;
}

/// Irreducibility over F_p: x^{p^n} = x mod f and gcd(x^{p^{n/t}} - x, f) = 1
/// for every prime t dividing n = deg f.
inline bool is_irreducible(const FpPoly& f_in) {
    if (f_in.degree() < 1) throw DomainError("is_irreducible: constant polynomial");
    const FpPoly f = f_in.monic();
    const u64 p = f.modulus();
    const unsigned n = static_cast<unsigned>(f.degree());
    if (n == 1) return true;
    const FpPoly x = FpPoly::x(p) % f;
    // frob[k] = x^{p^k} mod f
    std::vector<FpPoly> frob{x};
    for (unsigned k = 1; k <= n; ++k) frob.push_back(powmod(frob.back(), BigInt(p), f));
    if (frob[n] != x) return false;
    for (u64 t : prime_factors(n)) {
        if (gcd(frob[n / t] - x, f).degree() != 0) return false;
    }
    return true;
}

}  // namespace chebmax
