#pragma once

#include <optional>
#include <utility>

#include "psdeg/constraint_system.hpp"
#include "psdeg/cutoff.hpp"
#include "psdeg/ps_proof.hpp"

namespace psdeg {

// Substitutes x_i := b, ~x_i := 1 - b into every constraint and every part of
// the proof. Axioms at index i vanish and their multipliers are dropped.
std::pair<ConstraintSystem, PsProof> restrict_proof(const ConstraintSystem& Q,
                                                    const PsProof& proof, std::uint32_t index,
                                                    bool value);

// Collapses powers in every root and multiplier, then recomputes the ideal
// multipliers against Q.
PsProof multilinearize_proof(const ConstraintSystem& Q, const PsProof& proof);

struct VariableSelection {
  // t: explicit monomials of degree >= d, counted with multiplicity.
  std::size_t large_count = 0;
  // Most frequent variable among them; empty iff large_count == 0.
  std::optional<VarRef> variable;
  std::size_t occurrences = 0;

  bool twin() const { return variable && variable->is_twin(); }
};

VariableSelection select_variable(const PsProof& proof, std::uint32_t d);

// From Q |- low - eps >= 0 (degree mod c <= two_d - 2) and
// Q |- twin(low) - delta >= 0 (degree mod c <= two_d), builds Q |- -1 >= 0 of
// degree mod c <= two_d. `low` is x_i or ~x_i; the other one is its twin.
PsProof compose_refutations(const ConstraintSystem& Q, VarRef low, const PsProof& cert_low,
                            const Rational& eps, const PsProof& cert_high, const Rational& delta,
                            std::uint32_t two_d, const CutoffRule& c);

}  // namespace psdeg
