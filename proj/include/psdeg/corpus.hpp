#pragma once

#include <string>
#include <vector>

#include "psdeg/constraint_system.hpp"
#include "psdeg/ps_proof.hpp"

namespace psdeg {

struct CorpusSystem {
  std::string id;
  ConstraintSystem system;
};

struct CorpusRefutation {
  std::string id;
  ConstraintSystem system;
  PsProof proof;
};

// {x1 = 0, ~x1 = 0} with t_1 = t_2 = -1.
CorpusRefutation eq_pair_refutation();
// KS_{1,1}: 2 x1 - 1 = 0 with t_1 = -(2 x1 - 1) and u = 4 on x1^2 - x1.
CorpusRefutation ks11_refutation();

// Bundled small instances (n <= 6) that have a satisfying assignment.
std::vector<CorpusSystem> satisfiable_corpus();

// Bundled hand-built refutations, each verifying exactly.
std::vector<CorpusRefutation> refutation_corpus();

}  // namespace psdeg
