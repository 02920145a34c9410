#pragma once

#include <stdexcept>
#include <string>

namespace charweb {

// Input text or JSON that does not parse. `pos` is a byte offset when known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t pos = npos)
        : std::runtime_error(std::move(msg)), pos_(pos) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Well-formed input that violates a precondition (dimension mismatch,
// variable out of range, containment failure, ...).
class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration or search exceeded its configured budget. Distinct from a
// negative verdict: nothing was decided.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A construction left the regime where it is defined (non-injective
// projection, collapsed complement, certificate that fails verification).
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bounded retry loops that ran out of attempts; indicates a bad entry range
// or a bug, not a property of the input.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace charweb
