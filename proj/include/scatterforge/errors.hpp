#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scatterforge {

/// Violated precondition on user-supplied input (bad parameters, degenerate objects).
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A proven implication failed or two independent routes disagreed. Always a defect.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Work budget for exhaustive predicates, counted in field-element operations (roughly).
struct Budget {
    static constexpr std::uint64_t kDefault = std::uint64_t{1} << 24;
    std::uint64_t limit = kDefault;

    void require(std::uint64_t cost, const std::string& what) const {
        if (cost > limit)
            throw BudgetExceeded(what + ": estimated cost " + std::to_string(cost) + " exceeds budget " +
                                 std::to_string(limit));
    }
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw PreconditionError(msg);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw PreconditionError(msg);
}

}  // namespace scatterforge
