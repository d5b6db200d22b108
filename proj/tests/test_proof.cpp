#include <doctest.h>

#include "psdeg/corpus.hpp"
#include "psdeg/errors.hpp"
#include "psdeg/poly_text.hpp"
#include "psdeg/proof_json.hpp"
#include "psdeg/proof_transform.hpp"
#include "support.hpp"

using namespace psdeg;

namespace {
Polynomial P(const char* s, std::size_t n) { return parse_polynomial(s, n); }
}  // namespace

TEST_SUITE("proof") {
  TEST_CASE("hand refutations verify") {
    const auto a = eq_pair_refutation();
    const ProofMeasures ma = verify(a.system, a.proof);
    CHECK(ma.valid);
    CHECK(ma.degree == 1);
    CHECK(ma.monomial_size == 2);
    CHECK(a.proof.ideal.size() == 1);
    CHECK(a.proof.ideal.begin()->second == P("1", 1));

    const auto b = ks11_refutation();
    const ProofMeasures mb = verify(b.system, b.proof);
    CHECK(mb.valid);
    CHECK(mb.degree == 2);
    CHECK(mb.monomial_size == 2);
    CHECK(b.proof.ideal.at(Axiom{AxiomKind::basic_square, 1}) == P("4", 1));
  }

  TEST_CASE("invalid proof reports its residual") {
    ConstraintSystem Q{1, {}, {P("x1", 1)}};
    PsProof proof;
    proof.n = 1;
    proof.target = P("-1", 1);
    proof.multipliers.emplace(1, P("1", 1));
    const ProofMeasures m = verify(Q, proof);
    CHECK_FALSE(m.valid);
    CHECK(m.residual == P("x1 + 1", 1));
  }

  TEST_CASE("ideal multipliers do not count") {
    auto r = ks11_refutation();
    const ProofMeasures before = measures(r.system, r.proof, CutoffRule::kw(r.system, 1));
    r.proof.ideal[Axiom{AxiomKind::basic_square, 1}] = P("x1^5 + 7", 1);
    r.proof.ideal[Axiom{AxiomKind::complement, 1}] = P("~x1^3", 1);
    const ProofMeasures after = measures(r.system, r.proof, CutoffRule::kw(r.system, 1));
    // Ideal terms vanish modulo I_n, so validity is unaffected too.
    CHECK(after.valid);
    CHECK(after.degree == before.degree);
    CHECK(after.degree_mod_c == before.degree_mod_c);
    CHECK(after.monomial_size == before.monomial_size);
  }

  TEST_CASE("width, size and degree") {
    ConstraintSystem Q{2, {P("x1", 2), P("x2", 2), P("1", 2)}, {}};
    PsProof proof;
    proof.n = 2;
    proof.add_square({1, 2}, P("1", 2));
    CHECK(proof.product_width() == 2);

    PsProof s;
    s.n = 2;
    s.add_square({}, P("x1 - x2", 2));
    s.target = proof_rhs(Q, s);
    const ProofMeasures m = verify(Q, s);
    CHECK(m.valid);
    CHECK(m.monomial_size == 2);
    CHECK(m.degree == 2);
  }

  TEST_CASE("degree mod a constant cut-off") {
    ConstraintSystem Q{2, {}, {P("x1*x2*~x1 + x2", 2)}};
    PsProof proof;
    proof.n = 2;
    proof.multipliers.emplace(1, P("x1", 2));
    proof.target = proof_rhs(Q, proof);
    const ProofMeasures m = measures(Q, proof, CutoffRule::constant(3));
    CHECK(m.degree_mod_c.value() >= 4);
    CHECK_THROWS_AS(measures(Q, proof, CutoffRule::constant(2)), ValidationError);
  }

  TEST_CASE("cut-off rules") {
    ConstraintSystem Q{2, {P("x1*x2", 2), P("x1", 2)}, {P("x2 - 1", 2)}};
    CHECK(CutoffRule::kw(Q, 2).at_subset(Q, {1, 2}) == 4);
    CHECK(CutoffRule::degree_sum_plus(1).at_subset(Q, {1, 2}) == 4);
    CHECK(CutoffRule::degree_sum_plus(0).at_equality(Q, 1) == 1);
    CHECK_THROWS_AS(CutoffRule::constant(2).at_subset(Q, {1, 2}), ValidationError);
    const auto t = CutoffRule::table({{{1}, 5}}, {});
    CHECK(t.at_subset(Q, {1}) == 5);
    CHECK_THROWS_AS(t.at_subset(Q, {2}), ValidationError);
    CHECK(enumerate_subsets(3, 2, 100).size() == 6);
    CHECK_THROWS_AS(enumerate_subsets(10, 3, 50), ValidationError);
  }

  TEST_CASE("dangling indices and weights are rejected") {
    auto r = eq_pair_refutation();
    r.proof.multipliers.emplace(3, P("1", 1));
    CHECK_THROWS_AS(verify(r.system, r.proof), ValidationError);
    auto s = eq_pair_refutation();
    s.proof.add_square({}, P("1", 1), Rational(-1));
    CHECK_THROWS_AS(verify(s.system, s.proof), ValidationError);
  }

  TEST_CASE("restriction of KS_{1,1}") {
    const auto r = ks11_refutation();
    auto [Q0, P0] = restrict_proof(r.system, r.proof, 1, false);
    CHECK(Q0.eq(1) == P("-1", 1));
    CHECK(P0.multipliers.at(1) == P("1", 1));
    CHECK(verify(Q0, P0).valid);
    CHECK(P0.is_refutation());
  }

  TEST_CASE("restriction kills monomials") {
    ConstraintSystem Q{2, {}, {P("x1", 2), P("x2", 2)}};
    PsProof proof;
    proof.n = 2;
    proof.multipliers.emplace(1, P("x1*x2", 2));
    proof.multipliers.emplace(2, P("x2", 2));
    proof.target = proof_rhs(Q, proof);
    auto [Q0, P0] = restrict_proof(Q, proof, 1, false);
    const auto ms = P0.explicit_monomials();
    CHECK(ms.size() <= 2);
    CHECK(ms.size() == 1);
    CHECK(verify(Q0, P0).valid);
  }

  TEST_CASE("restriction preserves validity") {
    SplitMix64 rng(31337);
    for (int it = 0; it < 1000; ++it) {
      const std::size_t n = 1 + rng.uniform(4);
      auto [Q, proof] = test::random_valid_proof(rng, n);
      REQUIRE(verify(Q, proof).valid);
      const auto i = static_cast<std::uint32_t>(1 + rng.uniform(n));
      auto [Qr, Pr] = restrict_proof(Q, proof, i, rng.bit());
      REQUIRE(verify(Qr, Pr).valid);
      REQUIRE(Pr.monomial_size() <= proof.monomial_size());
    }
  }

  TEST_CASE("multilinearized proofs") {
    ConstraintSystem Q{2, {}, {P("x1", 2)}};
    PsProof proof;
    proof.n = 2;
    proof.add_square({}, P("x1^2 - x2", 2));
    proof.multipliers.emplace(1, P("3*x1^3*x2", 2));
    proof.target = proof_rhs(Q, proof);
    const PsProof m = multilinearize_proof(Q, proof);
    CHECK(m.squares.at({}).front().root == P("x1 - x2", 2));
    CHECK(m.multipliers.at(1) == P("3*x1*x2", 2));
    CHECK(verify(Q, m).valid);

    SplitMix64 rng(8);
    for (int it = 0; it < 200; ++it) {
      auto [Qr, pr] = test::random_valid_proof(rng, 1 + rng.uniform(4));
      const PsProof ml = multilinearize_proof(Qr, pr);
      REQUIRE(verify(Qr, ml).valid);
      REQUIRE(ml.monomial_size() <= pr.monomial_size());
      REQUIRE(ml.is_multilinear());
    }
  }

  TEST_CASE("variable selection") {
    PsProof proof;
    proof.n = 3;
    proof.multipliers.emplace(1, P("x1*x2 + x1*x3 + x2", 3));
    auto sel = select_variable(proof, 2);
    CHECK(sel.large_count == 2);
    CHECK(sel.variable == VarRef::basic(1));
    CHECK(sel.occurrences == 2);
    CHECK_FALSE(sel.twin());

    CHECK(select_variable(proof, 3).large_count == 0);
    CHECK_FALSE(select_variable(proof, 3).variable.has_value());

    PsProof tw;
    tw.n = 3;
    tw.multipliers.emplace(1, P("~x1*x2 + ~x1*x3", 3));
    sel = select_variable(tw, 2);
    CHECK(sel.variable == VarRef::twin(1));
    CHECK(sel.twin());
  }

  TEST_CASE("the twin product identity") {
    // -~x1 x1 = (x1^2 - x1) - x1 (x1 + ~x1 - 1)
    ConstraintSystem Q{1, {}, {}};
    PsProof proof;
    proof.n = 1;
    proof.target = P("-~x1*x1", 1);
    proof.ideal[Axiom{AxiomKind::basic_square, 1}] = P("1", 1);
    proof.ideal[Axiom{AxiomKind::complement, 1}] = P("-x1", 1);
    CHECK(proof_rhs(Q, proof) == proof.target);
    CHECK(verify(Q, proof).valid);
  }

  TEST_CASE("composition") {
    // x1 >= 1/2 and ~x1 >= 1/2.
    ConstraintSystem Q{2, {P("x1 - 1/2", 2), P("~x1 - 1/2", 2)}, {}};
    const CutoffRule c = CutoffRule::kw(Q, 1);
    const Rational half(1, 2);
    PsProof lo;
    lo.n = 2;
    lo.target = P("x1 - 1/2", 2);
    lo.add_square({1}, P("1", 2));
    lo = with_recomputed_ideal(Q, lo);
    PsProof hi;
    hi.n = 2;
    hi.target = P("~x1 - 1/2", 2);
    hi.add_square({2}, P("1", 2));
    hi = with_recomputed_ideal(Q, hi);
    const PsProof out = compose_refutations(Q, VarRef::basic(1), lo, half, hi, half, 4, c);
    const ProofMeasures m = measures(Q, out, c);
    CHECK(m.valid);
    CHECK(out.is_refutation());
    CHECK(*m.degree_mod_c <= 4);

    CHECK_THROWS_WITH_AS(compose_refutations(Q, VarRef::basic(1), lo, 0, hi, half, 4, c),
                         "nonpositive margin", ValidationError);
    CHECK_THROWS_AS(compose_refutations(Q, VarRef::twin(1), lo, half, hi, half, 4, c),
                    ValidationError);
  }

  TEST_CASE("JSON round trip") {
    for (const auto& r : refutation_corpus()) {
      const Json j = proof_to_json(r.proof);
      const PsProof back = proof_from_json(Json::parse(j.dump()));
      CHECK(proof_to_json(back) == j);
      CHECK(verify(r.system, back).valid);
      const ConstraintSystem Q = system_from_json(Json::parse(system_to_json(r.system).dump()));
      CHECK(system_to_json(Q) == system_to_json(r.system));
    }
    PsProof w;
    w.n = 1;
    w.target = P("2", 1);
    w.add_square({}, P("1", 1), Rational(2));
    CHECK(proof_from_json(proof_to_json(w)).squares.at({}).front().weight == 2);
    CHECK_THROWS_AS(proof_from_json(Json::parse(R"({"n": 1, "target": "x2"})")), ValidationError);
  }

  TEST_CASE("bundled refutations") {
    for (const auto& r : refutation_corpus()) {
      CAPTURE(r.id);
      CHECK(verify(r.system, r.proof).valid);
      CHECK(r.proof.is_refutation());
      CHECK_FALSE(r.system.find_satisfying_assignment().has_value());
    }
  }
}
