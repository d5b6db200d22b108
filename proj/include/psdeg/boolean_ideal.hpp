#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "psdeg/polynomial.hpp"

namespace psdeg {

// Generators of the Boolean ideal I_n.
enum class AxiomKind : std::uint8_t {
  basic_square = 0,  // x_i^2 - x_i
  twin_square = 1,   // ~x_i^2 - ~x_i
  complement = 2,    // x_i + ~x_i - 1
};

struct Axiom {
  AxiomKind kind = AxiomKind::basic_square;
  std::uint32_t index = 1;

  Polynomial polynomial(std::size_t nvars) const;
  auto operator<=>(const Axiom&) const = default;
};

// The 3n generators, grouped by kind and ascending index.
std::vector<Axiom> boolean_axioms(std::size_t nvars);

// Identify an axiom from its polynomial; throws ValidationError otherwise.
Axiom axiom_from_polynomial(const Polynomial& p);

// Canonical representative modulo I_n: twins replaced by 1 - x_i and every
// exponent collapsed to 1. The result is multilinear over basic variables.
Polynomial normal_form(const Polynomial& p);

// Replaces x^l by x for l >= 2, keeping twins.
Polynomial multilinearize(const Polynomial& p);

// Assigns x_i := b and ~x_i := 1 - b. The pair count is unchanged; the
// result simply no longer mentions index i.
Polynomial restrict(const Polynomial& p, std::uint32_t index, bool value);

bool equal_mod_ideal(const Polynomial& p, const Polynomial& q);

struct IdealReduction {
  std::map<Axiom, Polynomial> quotients;
  Polynomial remainder;
};

// Division by B_n: p == sum_q quotients[q] * q + remainder holds as a formal
// identity, and remainder == normal_form(p).
IdealReduction reduce_with_quotients(const Polynomial& p);

}  // namespace psdeg
