#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "psdeg/polynomial.hpp"

namespace psdeg {

// Multilinear monomial over basic variables: bit i-1 stands for x_i.
using Mask = std::uint64_t;

// Canonical order of multilinear monomials, consistent with Monomial's
// graded order: fewer variables first; otherwise the mask holding the
// lowest differing variable is larger.
bool mask_less(Mask a, Mask b);

Monomial mask_monomial(Mask m);
Mask monomial_mask(const Monomial& m);  // requires a multilinear basic monomial

// normal_form(p) keyed by mask. Requires n <= 64.
std::map<Mask, Rational> mask_terms(const Polynomial& p);
Polynomial from_mask_terms(std::size_t n, const std::map<Mask, Rational>& terms);

// All multilinear monomials over n basic variables with degree <= d, in
// canonical order. size() = sum_{i<=d} C(n, i).
struct MomentBasis {
  std::size_t n = 0;
  std::uint32_t degree = 0;
  std::vector<Mask> monomials;

  static MomentBasis build(std::size_t n, std::uint32_t degree, std::size_t cap = 1u << 20);
  std::size_t size() const { return monomials.size(); }
};

std::size_t binomial_sum(std::size_t n, std::uint32_t d);

}  // namespace psdeg
