#pragma once

#include <stdexcept>
#include <string>

namespace papr {

// Argument or configuration outside an operation's domain.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A signal with zero average power; PAPR is undefined.
class DegenerateSignal : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The request is well-formed but the library declines to run it
// (search space above the safety cap, too few samples for a CCDF level).
class Refusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace papr
