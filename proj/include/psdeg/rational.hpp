#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace psdeg {

using Rational = mpq_class;

// "p/q" or "p" for integers; canonical (lowest terms, positive denominator).
std::string to_string(const Rational& q);

// Accepts "p", "p/q", and plain decimals such as "-1.25".
Rational parse_rational(std::string_view text);

// Exact value of a finite double.
Rational from_double(double x);

double to_double(const Rational& q);

// Best continued-fraction convergent of x whose denominator does not exceed
// max_denominator. Ties to the last admissible convergent (or the best
// semiconvergent when that is closer).
Rational round_continued_fraction(double x, std::int64_t max_denominator);

}  // namespace psdeg
