#pragma once

#include <stdexcept>
#include <string>

namespace solenoid {

/// Precondition failures: bad arguments, unsupported configurations.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A mathematical invariant the library relies on was observed to fail.
/// These are never caught internally; reaching one means either corrupted
/// input or a genuine bug, and the message carries the exact witness.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace solenoid
