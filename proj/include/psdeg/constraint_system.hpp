#pragma once

#include <cstdint>
#include <vector>

#include "psdeg/polynomial.hpp"

namespace psdeg {

// Sorted, duplicate-free set of 1-based inequality indices.
using IndexSet = std::vector<std::uint32_t>;

// q_1 >= 0, ..., q_l >= 0 and p_1 = 0, ..., p_m = 0 over n pairs of twins.
struct ConstraintSystem {
  std::size_t n = 0;
  std::vector<Polynomial> ineqs;
  std::vector<Polynomial> eqs;

  std::size_t num_ineqs() const { return ineqs.size(); }
  std::size_t num_eqs() const { return eqs.size(); }

  // k: largest degree among the listed constraints (0 if none or all zero).
  std::uint32_t max_degree() const;

  const Polynomial& ineq(std::uint32_t j) const;  // 1-based
  const Polynomial& eq(std::uint32_t j) const;    // 1-based
  std::uint32_t ineq_degree(std::uint32_t j) const;
  std::uint32_t eq_degree(std::uint32_t j) const;

  // prod_{j in J} q_j; the constant 1 for the empty set.
  Polynomial product(const IndexSet& J) const;

  // Every constraint declared over exactly n pairs.
  void validate() const;
  void validate_index_set(const IndexSet& J) const;

  // Q[i/b].
  ConstraintSystem restricted(std::uint32_t index, bool value) const;

  // Brute-force satisfiability over {0,1}^n; n <= 24.
  bool satisfied_by(std::uint64_t mask) const;
  std::optional<std::uint64_t> find_satisfying_assignment() const;
};

// Nonempty subsets of [l] of size at most w, ordered by size then
// lexicographically. Throws once more than cap subsets would be produced.
std::vector<IndexSet> enumerate_subsets(std::size_t l, std::size_t w, std::size_t cap);

}  // namespace psdeg
