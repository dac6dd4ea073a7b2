#pragma once

// Shared error types and the check-result record used by the verification
// operations. Every construction in this library is a finite truncation of
// an infinite object; truncation limits are signalled loudly instead of
// being clamped.

#include <stdexcept>
#include <string>
#include <vector>

namespace carpet {

/// Raised when an operation needs a larger materialized window than the one
/// it was constructed with. Carries the window that would have sufficed so
/// callers can retry.
class WindowExceeded : public std::runtime_error {
public:
    WindowExceeded(long need_a, long need_b)
        : std::runtime_error("window exceeded: need columns |a| <= " +
                             std::to_string(need_a) + ", rows |b| <= " +
                             std::to_string(need_b)),
          need_a(need_a), need_b(need_b) {}

    long need_a;
    long need_b;
};

/// A pulled-back ball is not representable in the supported shape classes.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// The obstacle-avoiding path construction could not close out; carries the
/// audit trail of the failed attempt. Indicates a caller bug or an invariant
/// violated upstream, never expected in a valid state.
class ConstructionFailure : public std::runtime_error {
public:
    explicit ConstructionFailure(const std::string& what)
        : std::runtime_error(what) {}
};

/// An orbit did not reach the requested displacement threshold within the
/// iteration budget.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what)
        : std::runtime_error(what) {}
};

/// Outcome of one verification operation: an overall flag plus
/// human-readable witnesses for anything that failed (or that is worth
/// reporting, like slack values).
struct CheckResult {
    bool passed = true;
    std::vector<std::string> witnesses;

    void fail(const std::string& w) {
        passed = false;
        witnesses.push_back(w);
    }
    void note(const std::string& w) { witnesses.push_back(w); }
};

}  // namespace carpet
