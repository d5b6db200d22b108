#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psdeg/constraint_system.hpp"
#include "psdeg/polynomial.hpp"

namespace psdeg {

// SplitMix64: 64-bit counter-based generator. state += 0x9e3779b97f4a7c15,
// then the output is the state passed through the SplitMix finalizer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform on [0, bound) by Lemire's multiply-and-reject method.
  std::uint64_t uniform(std::uint64_t bound);
  bool bit() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

// Undirected multigraph on vertices 0..vertices-1; loops allowed.
struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::optional<std::uint32_t> regular_degree;

  // A loop counts twice.
  std::vector<std::uint32_t> degrees() const;
};

Graph cycle_graph(std::size_t vertices);
// Pairing model: n*d half-edges matched by a uniform shuffle, loops and
// parallel edges kept.
Graph random_regular_graph(std::size_t vertices, std::uint32_t degree, std::uint64_t seed);

// One variable per edge (edge e -> x_{e+1}); at each vertex u the equality
// prod_{e at u} (1 - 2 x_e) - (-1)^{charge(u)} = 0, multilinearized.
ConstraintSystem gen_tseitin(const Graph& g, const std::vector<std::uint8_t>& charges);

// 2 x_1 + ... + 2 x_n - k = 0.
ConstraintSystem gen_knapsack(std::size_t n, std::int64_t k);

enum class CspMode { xor_parity, sat };

struct CspConstraint {
  std::vector<std::uint32_t> vars;     // 1-based, distinct
  std::vector<std::uint8_t> negated;   // sat: per-literal negation
  std::uint8_t rhs = 0;                // xor: parity of the sum
  Polynomial p;                        // multilinear 0/1 indicator

  bool holds(std::uint64_t mask, CspMode mode) const;
};

struct CspInstance {
  std::size_t n = 0;
  CspMode mode = CspMode::xor_parity;
  std::uint32_t arity = 0;
  std::uint64_t seed = 0;
  std::vector<CspConstraint> constraints;
};

// Unique multilinear polynomial agreeing with `truth` on {0,1}^vars, where
// truth(local) reads bit b of local as the value of vars[b].
template <class Truth>
Polynomial interpolate(std::size_t n, const std::vector<std::uint32_t>& vars, Truth truth);

CspConstraint xor_constraint(std::size_t n, std::vector<std::uint32_t> vars, std::uint8_t rhs);
CspConstraint sat_clause(std::size_t n, std::vector<std::uint32_t> vars,
                         std::vector<std::uint8_t> negated);

CspInstance gen_random_csp(std::size_t n, std::size_t m, std::uint32_t arity, CspMode mode,
                           std::uint64_t seed);

enum class Formulation { direct, withvars, refutation };

struct MaxCspEncoding {
  ConstraintSystem system;
  // Empty for the refutation formulation.
  std::optional<Polynomial> objective;
};

// direct: no constraints, objective (1/m) sum p_j over n pairs.
// withvars: p_j - y_j = 0 over n + m pairs (y_j is x_{n+j}), objective (1/m) sum y_j.
// refutation: withvars plus (1/m) sum y_j - gamma >= 0.
MaxCspEncoding encode_maxcsp(const CspInstance& inst, const Rational& gamma,
                             Formulation formulation);

// max over {0,1}^n of the fraction of satisfied constraints.
Rational opt_brute_force(const CspInstance& inst, std::size_t limit = 24, int jobs = 1);

std::string to_string(CspMode mode);
CspMode parse_csp_mode(const std::string& s);
std::string to_string(Formulation f);
Formulation parse_formulation(const std::string& s);

template <class Truth>
Polynomial interpolate(std::size_t n, const std::vector<std::uint32_t>& vars, Truth truth) {
  const std::size_t a = vars.size();
  const std::uint64_t size = std::uint64_t{1} << a;
  std::vector<Rational> coeff(size);
  for (std::uint64_t s = 0; s < size; ++s) coeff[s] = truth(s) ? 1 : 0;
  // Moebius transform over the subset lattice.
  for (std::size_t b = 0; b < a; ++b)
    for (std::uint64_t s = 0; s < size; ++s)
      if ((s >> b) & 1u) coeff[s] -= coeff[s ^ (std::uint64_t{1} << b)];
  Polynomial::Terms terms;
  for (std::uint64_t s = 0; s < size; ++s) {
    if (coeff[s] == 0) continue;
    std::vector<Monomial::Factor> fs;
    for (std::size_t b = 0; b < a; ++b)
      if ((s >> b) & 1u) fs.emplace_back(VarRef::basic(vars[b]), 1);
    terms.emplace(Monomial(std::move(fs)), coeff[s]);
  }
  return Polynomial(n, std::move(terms));
}

}  // namespace psdeg
