#pragma once

#include <cstdint>
#include <vector>

#include "psdeg/constraint_system.hpp"
#include "psdeg/instances.hpp"
#include "psdeg/polynomial.hpp"
#include "psdeg/ps_proof.hpp"

namespace psdeg::test {

// Random polynomial with small integer coefficients over n pairs. Exponents
// up to max_exp; twins allowed.
inline Polynomial random_poly(SplitMix64& rng, std::size_t n, std::size_t terms,
                              std::uint32_t max_deg, std::uint32_t max_exp = 2,
                              bool twins = true) {
  Polynomial::Terms t;
  for (std::size_t k = 0; k < terms; ++k) {
    std::vector<Monomial::Factor> fs;
    const std::uint32_t deg = static_cast<std::uint32_t>(rng.uniform(max_deg + 1));
    for (std::uint32_t f = 0; f < deg; ++f) {
      const auto idx = static_cast<std::uint32_t>(rng.uniform(n) + 1);
      const bool twin = twins && rng.bit();
      const auto e = static_cast<std::uint32_t>(rng.uniform(max_exp) + 1);
      fs.emplace_back(twin ? VarRef::twin(idx) : VarRef::basic(idx), e);
    }
    const long c = static_cast<long>(rng.uniform(9)) - 4;
    if (c == 0) continue;
    Monomial m(std::move(fs));
    auto [it, inserted] = t.emplace(m, Rational(c));
    if (!inserted) it->second += c;
  }
  Polynomial::Terms clean;
  for (auto& [m, c] : t)
    if (c != 0) clean.emplace(m, c);
  return Polynomial(n, std::move(clean));
}

// Independent evaluation: expands every factor by repeated multiplication.
inline Rational eval_oracle(const Polynomial& p, std::uint64_t mask) {
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational v = c;
    for (const auto& [var, e] : m.factors()) {
      const int bit = static_cast<int>((mask >> (var.index - 1)) & 1u);
      const int val = var.is_twin() ? 1 - bit : bit;
      for (std::uint32_t k = 0; k < e; ++k) v *= val;
    }
    total += v;
  }
  return total;
}

// A proof whose target is defined as its own right-hand side, hence valid.
inline std::pair<ConstraintSystem, PsProof> random_valid_proof(SplitMix64& rng, std::size_t n) {
  ConstraintSystem Q;
  Q.n = n;
  const std::size_t l = rng.uniform(3), m = rng.uniform(3);
  for (std::size_t j = 0; j < l; ++j) Q.ineqs.push_back(random_poly(rng, n, 3, 2));
  for (std::size_t j = 0; j < m; ++j) Q.eqs.push_back(random_poly(rng, n, 3, 2));
  PsProof P;
  P.n = n;
  P.add_square({}, random_poly(rng, n, 3, 2));
  for (std::uint32_t j = 1; j <= l; ++j)
    if (rng.bit()) P.add_square({j}, random_poly(rng, n, 2, 1), Rational(1 + rng.uniform(3)));
  for (std::uint32_t j = 1; j <= m; ++j) {
    Polynomial t = random_poly(rng, n, 2, 2);
    if (!t.is_zero()) P.multipliers.emplace(j, std::move(t));
  }
  P.target = proof_rhs(Q, P, false);
  return {std::move(Q), std::move(P)};
}

}  // namespace psdeg::test
