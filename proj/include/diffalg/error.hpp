#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffalg {

inline constexpr const char* version = "0.1.0";

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input; pos is a 0-based offset into the input string.
struct ParseError : Error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t pos_)
        : Error(msg + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
};

// Operands belong to different rings or fields.
struct RingMismatchError : Error {
    using Error::Error;
};

// Input violates a mathematical precondition (improper ideal, wrong
// characteristic, zero divisor, ill-defined derivation on a quotient, ...).
struct DomainError : Error {
    using Error::Error;
};

// A computation exceeded the configured degree / term / size caps.
struct ResourceError : Error {
    using Error::Error;
};

// Global guardrails against runaway computations.  Mutated only from
// single-threaded setup code (CLI flag handling, test setup); algorithms
// read them.
struct Limits {
    unsigned max_degree = 64;       // total degree cap for any produced polynomial
    std::size_t max_terms = 500000; // term count cap per polynomial
    std::size_t max_basis = 2048;   // Groebner basis size cap
    std::size_t max_monomials = 200000; // monomial enumeration cap (linear algebra)
};

inline Limits& limits() {
    static Limits l;
    return l;
}

inline void check_degree(unsigned deg) {
    if (deg > limits().max_degree)
        throw ResourceError("degree cap exceeded: " + std::to_string(deg) + " > " +
                            std::to_string(limits().max_degree));
}

} // namespace diffalg
