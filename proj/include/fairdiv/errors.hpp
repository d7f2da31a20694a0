#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

// Thrown when an enumeration would exceed the configured allocation budget.
// Callers that can degrade gracefully catch this and report "skipped".
class EnumerationLimitError : public std::runtime_error {
public:
    explicit EnumerationLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Precondition check on caller-supplied data.
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Internal invariant check; failure means a bug, not bad input.
inline void check_invariant(bool cond, const std::string& msg) {
    if (!cond) throw std::logic_error("internal invariant violated: " + msg);
}

} // namespace fairdiv
