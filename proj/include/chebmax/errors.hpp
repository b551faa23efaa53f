#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace chebmax {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A hypothesis of a theorem-backed computation does not hold.
class PreconditionError : public DomainError {
   public:
    using DomainError::DomainError;
};

/// Point counts that cannot come from a curve (non-integral Newton identity
/// step or a Weil bound violation).
class InvalidCountsError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured element-visit budget.
class InfeasibleError : public std::runtime_error {
   public:
    InfeasibleError(const std::string& what, BigInt visits, BigInt cost, std::uint64_t budget)
        : std::runtime_error(what + " (visits " + visits.str() + ", estimated cost " + cost.str() +
                             " multiplications, budget " + std::to_string(budget) + ")"),
          visits_(std::move(visits)),
          cost_(std::move(cost)),
          budget_(budget) {}

    const BigInt& visits() const noexcept { return visits_; }
    const BigInt& cost_estimate() const noexcept { return cost_; }
    std::uint64_t budget() const noexcept { return budget_; }

   private:
    BigInt visits_;
    BigInt cost_;
    std::uint64_t budget_;
};

/// Element-visit budget shared by every enumeration.
struct Budget {
    static constexpr std::uint64_t kDefaultVisits = 100'000'000;
    std::uint64_t max_visits = kDefaultVisits;

    bool allows(const BigInt& visits) const { return visits <= max_visits; }

    /// Throws InfeasibleError unless `visits` fits; `cost` is reported alongside.
    void require(const BigInt& visits, const BigInt& cost, const std::string& what) const {
        if (!allows(visits)) throw InfeasibleError(what, visits, cost, max_visits);
    }
};

}  // namespace chebmax
