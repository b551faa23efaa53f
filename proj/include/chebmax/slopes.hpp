#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include <boost/rational.hpp>

#include "chebmax/errors.hpp"

namespace chebmax {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

/// Slopes in [0, 1] with positive integer lengths.
class SlopeMultiset {
   public:
    SlopeMultiset() = default;
    SlopeMultiset(std::initializer_list<std::pair<const Rational, std::int64_t>> init) {
        for (const auto& [s, len] : init) add(s, len);
    }

    void add(const Rational& slope, std::int64_t length) {
        if (length <= 0) throw DomainError("slope length must be positive");
        if (slope < 0 || slope > 1) throw DomainError("slope outside [0,1]: " + chebmax::to_string(slope));
        m_[slope] += length;
    }

    const std::map<Rational, std::int64_t>& entries() const noexcept { return m_; }
    bool empty() const noexcept { return m_.empty(); }

    std::int64_t total_length() const {
        std::int64_t t = 0;
        for (const auto& [s, len] : m_) t += len;
        return t;
    }

    std::set<Rational> support() const {
        std::set<Rational> out;
        for (const auto& [s, len] : m_) out.insert(s);
        return out;
    }

    bool contains(const Rational& s) const { return m_.count(s) != 0; }

    /// True iff `s` is the only slope.
    bool only(const Rational& s) const { return m_.size() == 1 && m_.begin()->first == s; }

    /// Invariant under s -> 1 - s with matching lengths.
    bool is_symmetric() const {
        for (const auto& [s, len] : m_) {
            auto it = m_.find(Rational(1) - s);
            if (it == m_.end() || it->second != len) return false;
        }
        return true;
    }

    friend bool operator==(const SlopeMultiset&, const SlopeMultiset&) = default;

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (const auto& [s, len] : m_) {
            if (!first) out += ", ";
            first = false;
            out += chebmax::to_string(s) + " x" + std::to_string(len);
        }
        return out + "}";
    }

   private:
    std::map<Rational, std::int64_t> m_;
};

}  // namespace chebmax
