#pragma once

#include <stdexcept>
#include <string>

#include "polynomial.hpp"

namespace crsing {

struct ParseError : std::runtime_error {
    int pos;  // 0-based offset into the input text
    ParseError(const std::string& msg, int at)
        : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

// Expression grammar over a ring: + - * / ^ ( ), integer literals, the
// imaginary unit i, variable names, conj(...).  Division requires a
// nonzero constant divisor.  conj applies to whole subexpressions and
// resolves variables to their mates.
Polynomial parse_polynomial(const std::string& text, const RingPtr& ring);

}  // namespace crsing
