#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "psdeg/boolean_ideal.hpp"
#include "psdeg/constraint_system.hpp"
#include "psdeg/cutoff.hpp"
#include "psdeg/polynomial.hpp"

namespace psdeg {

// weight * root^2 with weight > 0. Hand-written proofs use weight 1; exact
// certificates recovered from a Gram matrix carry the LDL^T pivots here.
struct WeightedRoot {
  Rational weight = 1;
  Polynomial root;
};

// target == s_0 + sum_J s_J prod_{j in J} q_j + sum_j t_j p_j + sum_q u_q q
// with s_J = sum_i w_{i,J} r_{i,J}^2. The empty J holds s_0.
struct PsProof {
  std::size_t n = 0;
  Polynomial target;
  std::map<IndexSet, std::vector<WeightedRoot>> squares;
  std::map<std::uint32_t, Polynomial> multipliers;
  std::map<Axiom, Polynomial> ideal;

  // Max |J| over nonempty keys that hold at least one root.
  std::size_t product_width() const;
  // Monomials of every r_{i,J} and t_j, with multiplicity.
  std::vector<Monomial> explicit_monomials() const;
  std::size_t monomial_size() const;
  bool is_refutation() const;
  bool is_multilinear() const;

  void add_square(const IndexSet& J, Polynomial root, Rational weight = 1);
};

struct ProofMeasures {
  bool valid = false;
  std::uint32_t degree = 0;
  std::optional<std::uint32_t> degree_mod_c;
  std::size_t monomial_size = 0;
  std::size_t product_width = 0;
  // normal_form(right side - target); zero iff valid.
  Polynomial residual;
};

// Right-hand side of the identity, optionally without the ideal terms.
Polynomial proof_rhs(const ConstraintSystem& Q, const PsProof& proof, bool with_ideal = true);

// Exact check modulo I_n plus the cut-free measures.
ProofMeasures verify(const ConstraintSystem& Q, const PsProof& proof);

// verify() plus degree mod c. Throws ValidationError when c falls below its
// lower bound at an index the proof uses.
ProofMeasures measures(const ConstraintSystem& Q, const PsProof& proof, const CutoffRule& c);

// Replaces the u_q so that the identity holds literally: the difference
// target - rhs (without ideal terms) is divided by B_n. Leaves the remainder
// in place when the proof is invalid.
PsProof with_recomputed_ideal(const ConstraintSystem& Q, PsProof proof);

}  // namespace psdeg
