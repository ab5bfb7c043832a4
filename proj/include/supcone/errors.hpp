#pragma once

#include <stdexcept>
#include <string>

namespace supcone {

// Error taxonomy shared by every module. The C API maps these onto
// error codes; inside the library we throw.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands live on spaces with different atom counts.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Input outside the operation's domain (negative scalar on the cone,
// non-summable tail, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A stated precondition of a theorem/operation does not hold.
struct ContractError : Error {
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

// Operation needs the float backend (or vice versa).
struct BackendError : Error {
    explicit BackendError(const std::string& msg) : Error(msg) {}
};

// Combinatorial blowup guard (independence checks, product harness).
struct SizeError : Error {
    explicit SizeError(const std::string& msg) : Error(msg) {}
};

// Model file / expression parsing.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace supcone
