#pragma once

// F_{p^n} as F_p[x]/(f) with f the lexicographically least monic irreducible
// of degree n. Elements are coefficient vectors of length n.

#include <cstdint>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "chebmax/errors.hpp"
#include "chebmax/intpoly.hpp"
#include "chebmax/numtheory.hpp"

namespace chebmax {

class FieldCtx {
   public:
    u64 characteristic() const noexcept { return d_->p; }
    unsigned degree() const noexcept { return d_->n; }
    const FpPoly& modulus() const noexcept { return d_->modulus; }
    /// p^n.
    const BigInt& order() const noexcept { return d_->order; }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->modulus == b.d_->modulus);
    }

    // Raw kernels on coefficient arrays of length n. `scratch` needs 2n-1
    // entries; `out` may alias either input.

    void mul(const u64* a, const u64* b, u64* out, u64* scratch) const {
        const unsigned n = d_->n;
        const u64 p = d_->p;
        const std::size_t len = 2 * n - 1;
        std::fill(scratch, scratch + len, u64{0});
        if (d_->lazy) {
            for (unsigned i = 0; i < n; ++i) {
                const u64 ai = a[i];
                if (ai == 0) continue;
                for (unsigned j = 0; j < n; ++j) scratch[i + j] += ai * b[j];
            }
            for (std::size_t k = len - 1; k >= n; --k) {
                const u64 c = scratch[k] % p;
                if (c == 0) continue;
                const u64* nm = d_->neg_mod.data();
                u64* dst = scratch + (k - n);
                for (unsigned i = 0; i < n; ++i) dst[i] += c * nm[i];
            }
            for (unsigned i = 0; i < n; ++i) out[i] = scratch[i] % p;
        } else {
            for (unsigned i = 0; i < n; ++i) {
                for (unsigned j = 0; j < n; ++j) scratch[i + j] = (scratch[i + j] + mulmod(a[i], b[j], p)) % p;
            }
            for (std::size_t k = len - 1; k >= n; --k) {
                const u64 c = scratch[k];
                for (unsigned i = 0; i < n; ++i) {
                    u64& dst = scratch[k - n + i];
                    dst = (dst + mulmod(c, d_->neg_mod[i], p)) % p;
                }
            }
            for (unsigned i = 0; i < n; ++i) out[i] = scratch[i];
        }
    }

    /// out = a^p (the p-power Frobenius, a linear map over F_p).
    void frobenius(const u64* a, u64* out, u64* scratch) const {
        const unsigned n = d_->n;
        const u64 p = d_->p;
        for (unsigned i = 0; i < n; ++i) {
            u64 acc = 0;
            const u64* row = d_->frob.data() + static_cast<std::size_t>(i) * n;
            if (d_->lazy) {
                for (unsigned j = 0; j < n; ++j) acc += row[j] * a[j];
                acc %= p;
            } else {
                for (unsigned j = 0; j < n; ++j) acc = (acc + mulmod(row[j], a[j], p)) % p;
            }
            scratch[i] = acc;
        }
        std::copy(scratch, scratch + n, out);
    }

    /// Norm to F_p: the product of the n Galois conjugates. `work` needs 4n entries.
    u64 norm(const u64* a, u64* work) const {
        const unsigned n = d_->n;
        if (n == 1) return a[0];
        u64* conj = work;
        u64* prod = work + n;
        u64* scratch = work + 2 * n;
        std::copy(a, a + n, conj);
        std::copy(a, a + n, prod);
        for (unsigned i = 1; i < n; ++i) {
            frobenius(conj, conj, scratch);
            mul(prod, conj, prod, scratch);
        }
        return prod[0];
    }

   private:
    struct Data {
        u64 p = 0;
        unsigned n = 0;
        FpPoly modulus;
        BigInt order;
        std::vector<u64> neg_mod;  // p - f_i, i < n
        std::vector<u64> frob;     // row-major n x n; column j holds x^{jp} mod f
        bool lazy = false;         // 2n(p-1)^2 fits in 64 bits
    };
    explicit FieldCtx(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    friend FieldCtx make_field(u64 p, unsigned n);
    friend FieldCtx make_field_with_modulus(const FpPoly& modulus);

    std::shared_ptr<const Data> d_;
};

namespace detail {

inline FpPoly canonical_modulus(u64 p, unsigned n) {
    if (n == 1) return FpPoly(p, {0, 1});
    // Lexicographic on (c_0, c_1, ..., c_{n-1}): c_0 is the most significant digit.
    // c_0 = 0 gives a root at 0, so the search starts at c_0 = 1.
    std::vector<u64> c(n + 1, 0);
    c[0] = 1;
    c[n] = 1;
    while (true) {
        FpPoly f(p, c);
        if (is_irreducible(f)) return f;
        int i = static_cast<int>(n) - 1;
        while (i >= 0 && ++c[i] == p) c[i--] = 0;
        if (i < 0) throw DomainError("no irreducible polynomial found");  // unreachable for prime p
    }
}

}  // namespace detail

inline FieldCtx make_field_with_modulus(const FpPoly& modulus) {
    const u64 p = modulus.modulus();
    if (p < 3 || !is_prime(p)) throw DomainError("field characteristic must be an odd prime, got " + std::to_string(p));
    if (p >= (u64{1} << 32)) throw DomainError("field characteristic must be below 2^32");
    if (modulus.degree() < 1 || modulus.leading() != 1 || !is_irreducible(modulus)) {
        throw DomainError("field modulus must be monic irreducible");
    }
    auto d = std::make_shared<FieldCtx::Data>();
    d->p = p;
    d->n = static_cast<unsigned>(modulus.degree());
    d->modulus = modulus;
    d->order = big_pow(p, d->n);
    const unsigned n = d->n;
    for (unsigned i = 0; i < n; ++i) d->neg_mod.push_back((p - modulus.coeff(i)) % p);
    const unsigned __int128 bound = static_cast<unsigned __int128>(2 * n) * (p - 1) * (p - 1) + p;
    d->lazy = bound < (static_cast<unsigned __int128>(1) << 64);
    d->frob.assign(static_cast<std::size_t>(n) * n, 0);
    const FpPoly xp = powmod(FpPoly::x(p), BigInt(p), modulus);
    FpPoly col = FpPoly::constant(p, 1);
    for (unsigned j = 0; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i) d->frob[static_cast<std::size_t>(i) * n + j] = col.coeff(i);
        col = (col * xp) % modulus;
    }
    return FieldCtx(std::move(d));
}

/// Deterministic: equal (p, n) always give the same modulus.
inline FieldCtx make_field(u64 p, unsigned n) {
    if (p == 2) throw DomainError("characteristic 2 is not supported");
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (n < 1) throw DomainError("extension degree must be at least 1");
    return make_field_with_modulus(detail::canonical_modulus(p, n));
}

class FieldElement {
   public:
    FieldElement(FieldCtx ctx, std::vector<u64> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        if (c_.size() != ctx_.degree()) throw DomainError("FieldElement: coefficient vector has wrong length");
        for (auto& x : c_) x %= ctx_.characteristic();
    }
    static FieldElement zero(const FieldCtx& ctx) { return FieldElement(ctx, std::vector<u64>(ctx.degree(), 0)); }
    static FieldElement from_int(const FieldCtx& ctx, i64 v) {
        std::vector<u64> c(ctx.degree(), 0);
        c[0] = mod_floor(v, ctx.characteristic());
        return FieldElement(ctx, std::move(c));
    }
    static FieldElement one(const FieldCtx& ctx) { return from_int(ctx, 1); }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    std::span<const u64> coeffs() const noexcept { return c_; }
    bool is_zero() const {
        for (u64 x : c_)
            if (x) return false;
        return true;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c_ == b.c_; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        FieldElement r = a;
        const u64 p = a.ctx_.characteristic();
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + b.c_[i]) % p;
        return r;
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        FieldElement r = a;
        const u64 p = a.ctx_.characteristic();
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + p - b.c_[i]) % p;
        return r;
    }
    FieldElement operator-() const { return zero(ctx_) - *this; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        FieldElement r = a;
        std::vector<u64> scratch(2 * a.c_.size());
        a.ctx_.mul(a.c_.data(), b.c_.data(), r.c_.data(), scratch.data());
        return r;
    }

    FieldElement pow(BigInt e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElement r = one(ctx_), base = *this;
        while (e > 0) {
            if (static_cast<unsigned>(e & 1)) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    /// Extended Euclid in F_p[x] against the modulus.
    FieldElement inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        const u64 p = ctx_.characteristic();
        FpPoly r0 = ctx_.modulus(), r1(p, c_);
        FpPoly s0(p, {}), s1 = FpPoly::constant(p, 1);
        while (!r1.is_zero()) {
            auto [q, r] = r0.divmod(r1);
            FpPoly s = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r0 is a nonzero constant
        const FpPoly inv = s0.scaled(powmod(r0.coeff(0), p - 2, p)) % ctx_.modulus();
        std::vector<u64> c(ctx_.degree(), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = inv.coeff(i);
        return FieldElement(ctx_, std::move(c));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

    std::string to_string() const {
        std::vector<std::pair<std::string, unsigned>> terms;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i]) terms.emplace_back(std::to_string(c_[i]), static_cast<unsigned>(i));
        return detail::format_terms(terms, false);
    }

   private:
    FieldCtx ctx_;
    std::vector<u64> c_;
};

/// Element with base-p digits of `index` as coefficients (index < p^n).
inline FieldElement element_at(const FieldCtx& ctx, u64 index) {
    std::vector<u64> c(ctx.degree(), 0);
    const u64 p = ctx.characteristic();
    for (auto& x : c) {
        x = index % p;
        index /= p;
    }
    return FieldElement(ctx, std::move(c));
}

inline u64 index_of(const FieldElement& a) {
    const u64 p = a.ctx().characteristic();
    u64 idx = 0;
    const auto c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) idx = idx * p + c[i];
    return idx;
}

/// Quadratic character: a^{(q-1)/2} in {-1, 0, 1}. Prime fields use Euler's
/// criterion on the integer residue.
inline int quad_char(const FieldElement& a) {
    if (a.is_zero()) return 0;
    if (a.ctx().degree() == 1) return legendre(static_cast<i64>(a.coeffs()[0]), a.ctx().characteristic());
    const FieldElement r = a.pow((a.ctx().order() - 1) / 2);
    return r == FieldElement::one(a.ctx()) ? 1 : -1;
}

/// The elements with index in [first, last), in index order.
class ElementStream {
   public:
    class iterator {
       public:
        using iterator_category = std::input_iterator_tag;
        using value_type = FieldElement;
        using difference_type = std::ptrdiff_t;

        iterator(const FieldCtx* ctx, u64 i) : ctx_(ctx), i_(i) {}
        FieldElement operator*() const { return element_at(*ctx_, i_); }
        iterator& operator++() {
            ++i_;
            return *this;
        }
        iterator operator++(int) {
            auto t = *this;
            ++i_;
            return t;
        }
        bool operator==(const iterator& o) const { return i_ == o.i_; }

       private:
        const FieldCtx* ctx_;
        u64 i_;
    };

    ElementStream(FieldCtx ctx, u64 first, u64 last) : ctx_(std::move(ctx)), first_(first), last_(last) {}

    iterator begin() const { return {&ctx_, first_}; }
    iterator end() const { return {&ctx_, last_}; }
    u64 first() const noexcept { return first_; }
    u64 last() const noexcept { return last_; }
    u64 size() const noexcept { return last_ - first_; }
    const FieldCtx& ctx() const noexcept { return ctx_; }

    /// `parts` disjoint contiguous slices covering this stream, in order.
    std::vector<ElementStream> partition(unsigned parts) const {
        if (parts == 0) parts = 1;
        std::vector<ElementStream> out;
        const u64 n = size();
        for (unsigned k = 0; k < parts; ++k) {
            const u64 lo = first_ + n * k / parts;
            const u64 hi = first_ + n * (k + 1) / parts;
            out.emplace_back(ctx_, lo, hi);
        }
        return out;
    }

   private:
    FieldCtx ctx_;
    u64 first_, last_;
};

inline ElementStream enumerate(const FieldCtx& ctx, const Budget& budget = {}) {
    budget.require(ctx.order(), ctx.order(), "enumerating F_" + std::to_string(ctx.characteristic()) + "^" +
                                                 std::to_string(ctx.degree()));
    return ElementStream(ctx, 0, static_cast<u64>(ctx.order()));
}

}  // namespace chebmax
