#pragma once

#include <string>
#include <string_view>

#include "psdeg/polynomial.hpp"

namespace psdeg {

// Textual syntax: terms joined by "+"/"-", rational coefficients "a/b",
// variables "x3" and "~x3", powers "^", optional "*" between factors and
// parentheses. Whitespace is ignored. The Unicode minus sign is accepted.
//
// nvars == 0 infers the pair count from the largest index mentioned.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars = 0);

std::string to_string(const Monomial& m);

// Terms in descending graded-lex order, e.g. "x1*~x2 - 3/2*x1 + 1".
// parse_polynomial(to_string(p), p.nvars()) == p.
std::string to_string(const Polynomial& p);

}  // namespace psdeg
