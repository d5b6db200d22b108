#include "psdeg/corpus.hpp"

#include <stdexcept>

#include "psdeg/instance_json.hpp"
#include "psdeg/instances.hpp"
#include "psdeg/poly_text.hpp"

namespace psdeg {

namespace {

Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }

CorpusRefutation finish(std::string id, ConstraintSystem Q, PsProof proof) {
  proof.n = Q.n;
  proof = with_recomputed_ideal(Q, std::move(proof));
  if (!verify(Q, proof).valid) throw std::logic_error("bundled refutation " + id + " is invalid");
  return {std::move(id), std::move(Q), std::move(proof)};
}

// First seed from `seed` on whose satisfaction system a point exists.
CspInstance satisfiable_csp(std::size_t n, std::size_t m, std::uint32_t arity, CspMode mode,
                            std::uint64_t seed) {
  for (;; ++seed) {
    CspInstance inst = gen_random_csp(n, m, arity, mode, seed);
    if (csp_system(inst).find_satisfying_assignment()) return inst;
  }
}

}  // namespace

CorpusRefutation eq_pair_refutation() {
  ConstraintSystem Q{1, {}, {P("x1", 1), P("~x1", 1)}};
  PsProof proof;
  proof.target = P("-1", 1);
  proof.multipliers.emplace(1, P("-1", 1));
  proof.multipliers.emplace(2, P("-1", 1));
  return finish("eq_pair", std::move(Q), std::move(proof));
}

CorpusRefutation ks11_refutation() {
  ConstraintSystem Q = gen_knapsack(1, 1);
  PsProof proof;
  proof.target = P("-1", 1);
  proof.multipliers.emplace(1, P("-2*x1 + 1", 1));
  return finish("ks_1_1", std::move(Q), std::move(proof));
}

std::vector<CorpusSystem> satisfiable_corpus() {
  std::vector<CorpusSystem> out;
  out.push_back({"empty_3", ConstraintSystem{3, {}, {}}});
  out.push_back({"ks_2_2", gen_knapsack(2, 2)});
  out.push_back({"ks_4_4", gen_knapsack(4, 4)});
  out.push_back({"ks_3_2", gen_knapsack(3, 2)});
  out.push_back({"tseitin_c4_even", gen_tseitin(cycle_graph(4), {0, 0, 0, 0})});
  out.push_back({"tseitin_c3_110", gen_tseitin(cycle_graph(3), {1, 1, 0})});
  out.push_back({"half_and_eq", ConstraintSystem{2, {P("x1 - 1/2", 2)}, {P("x1 - x2", 2)}}});
  out.push_back({"sat3_n6", csp_system(satisfiable_csp(6, 10, 3, CspMode::sat, 1))});
  out.push_back({"xor3_n6", csp_system(satisfiable_csp(6, 4, 3, CspMode::xor_parity, 1))});
  return out;
}

std::vector<CorpusRefutation> refutation_corpus() {
  std::vector<CorpusRefutation> out;
  out.push_back(eq_pair_refutation());
  out.push_back(ks11_refutation());
  {
    // x1 - 1 >= 0 and -x1 >= 0.
    ConstraintSystem Q{1, {P("x1 - 1", 1), P("-x1", 1)}, {}};
    PsProof proof;
    proof.target = P("-1", 1);
    proof.add_square({1}, P("1", 1));
    proof.add_square({2}, P("1", 1));
    out.push_back(finish("ineq_pair", std::move(Q), std::move(proof)));
  }
  {
    // With y_e = 1 - 2 x_e the equalities read y1 y3 = y1 y2 = y2 y3 = -1,
    // and y1 y3 == (y1 y2)(y2 y3) mod I_n.
    ConstraintSystem Q = gen_tseitin(cycle_graph(3), {1, 1, 1});
    PsProof proof;
    proof.target = P("-1", 3);
    const Polynomial half = P("1/2", 3);
    proof.multipliers.emplace(1, -half);
    proof.multipliers.emplace(2, (Q.eq(3) - P("1", 3)).scaled(Rational(1, 2)));
    proof.multipliers.emplace(3, -half);
    out.push_back(finish("tseitin_c3_odd", std::move(Q), std::move(proof)));
  }
  {
    // eq_pair over six pairs with a degree-6 term that cancels mod I_n.
    ConstraintSystem Q{6, {}, {P("x1", 6), P("~x1", 6)}};
    PsProof proof;
    proof.target = P("-1", 6);
    proof.multipliers.emplace(1, P("~x1*x2*x3*x4*x5*x6 - 1", 6));
    proof.multipliers.emplace(2, P("-1", 6));
    out.push_back(finish("eq_pair_bloated", std::move(Q), std::move(proof)));
  }
  return out;
}

}  // namespace psdeg
