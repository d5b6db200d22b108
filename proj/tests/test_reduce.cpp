#include <doctest.h>

#include <cmath>

#include "psdeg/corpus.hpp"
#include "psdeg/degree_reduce.hpp"
#include "psdeg/errors.hpp"

using namespace psdeg;

TEST_SUITE("reduce") {
  TEST_CASE("tradeoff bound") {
    CHECK(tradeoff_bound(24, std::exp(2.0), 1, 1) == 45);
    for (std::size_t n : {0u, 3u, 10u})
      for (std::uint32_t k : {0u, 1u, 3u}) CHECK(tradeoff_bound(n, 1.0, k, 2) == k * 2 + 4);
    CHECK(tradeoff_bound(1, 2.0, 1, 1) == 12);
    CHECK_THROWS_AS(tradeoff_bound(1, 0.5, 1, 1), ValidationError);
  }

  TEST_CASE("tradeoff bound is monotone") {
    for (std::size_t n = 0; n < 12; ++n)
      for (double s = 1; s < 1e6; s *= 3.7)
        for (std::uint32_t k = 0; k < 4; ++k)
          for (std::uint32_t w = 1; w < 4; ++w) {
            const auto b = tradeoff_bound(n, s, k, w);
            CHECK(tradeoff_bound(n + 1, s, k, w) >= b);
            CHECK(tradeoff_bound(n, s * 1.5, k, w) >= b);
            CHECK(tradeoff_bound(n, s, k + 1, w) >= b);
            CHECK(tradeoff_bound(n, s, k, w + 1) >= b);
          }
  }

  TEST_CASE("size lower bound") {
    CHECK(size_lower_bound(7, 5, 1, 1) == 1.0);
    CHECK(std::abs(size_lower_bound(24, 45, 1, 1) - std::exp(2.0)) < 1e-12 * std::exp(2.0));
    CHECK_THROWS_WITH_AS(size_lower_bound(3, 4, 1, 1), "criterion not applicable: d < kw + 4",
                         ValidationError);
  }

  TEST_CASE("the two formulas are consistent") {
    for (std::size_t n = 0; n < 30; n += 3)
      for (std::uint32_t k = 1; k < 4; ++k)
        for (std::uint32_t w = 1; w < 3; ++w)
          for (std::int64_t d = k * w + 4; d < k * w + 40; d += 3)
            CHECK(tradeoff_bound(n, size_lower_bound(n, d, k, w), k, w) >= d);
  }

  TEST_CASE("threshold helpers") {
    CHECK(initial_threshold(1, 2.0) == 2);
    CHECK(initial_threshold(5, 3.0) == 4);
    CHECK(lifted_degree(1, 2.0, 2) == 3);
    CHECK(lifted_degree(5, 1.0, 4) == 4);
  }

  TEST_CASE("KS_{1,1} in both modes") {
    const auto r = ks11_refutation();
    const CutoffRule c = CutoffRule::kw(r.system, 1);
    for (auto mode : {ReduceMode::bound_only, ReduceMode::constructive}) {
      ReduceOptions o;
      o.mode = mode;
      const ReductionResult res = reduce_degree(r.system, r.proof, c, o);
      CHECK(res.d0 == 2);
      CHECK(res.trace.size() == 1);
      CHECK(res.trace.front().leaf);
      CHECK(res.degree_bound <= 11);
      CHECK(res.degree_bound <= res.tradeoff);
      if (mode == ReduceMode::constructive) {
        REQUIRE(res.proof.has_value());
        CHECK(res.measures->valid);
        CHECK(*res.measures->degree_mod_c == 2);
      } else {
        CHECK_FALSE(res.proof.has_value());
      }
    }
  }

  TEST_CASE("constructive output for the equality pair") {
    const auto r = eq_pair_refutation();
    ReduceOptions o;
    o.mode = ReduceMode::constructive;
    const ReductionResult res = reduce_degree(r.system, r.proof, CutoffRule::kw(r.system, 1), o);
    REQUIRE(res.proof.has_value());
    CHECK(res.measures->valid);
    CHECK(res.measures->residual.is_zero());
    CHECK(*res.measures->degree_mod_c <= res.degree_bound);
  }

  TEST_CASE("a proof that needs branching") {
    const auto corpus = refutation_corpus();
    const auto& r = corpus.back();
    REQUIRE(r.id == "eq_pair_bloated");
    const CutoffRule c = CutoffRule::kw(r.system, 1);
    ReduceOptions o;
    const ReductionResult b = reduce_degree(r.system, r.proof, c, o);
    CHECK(b.d0 == 4);
    CHECK(b.trace.size() > 1);
    CHECK_FALSE(b.trace.front().leaf);
    CHECK(b.trace.front().variable == VarRef::twin(1));
    CHECK(b.degree_bound <= b.tradeoff);
    std::size_t depth = 0;
    for (const auto& t : b.trace) {
      depth = std::max(depth, t.depth);
      if (t.leaf) continue;
      CHECK(t.d_other <= t.d_prime);
      if (t.d_a) CHECK(*t.d_a <= t.d_prime - 1);
      CHECK(t.s_prime < static_cast<double>(t.t));
    }
    CHECK(depth <= r.system.n);

    o.mode = ReduceMode::constructive;
    const ReductionResult k = reduce_degree(r.system, r.proof, c, o);
    REQUIRE(k.proof.has_value());
    CHECK(k.measures->valid);
    CHECK(k.proof->is_refutation());
    CHECK(*k.measures->degree_mod_c <= k.degree_bound);
    for (const auto& t : k.trace) {
      if (t.leaf) continue;
      CHECK(t.eps.has_value());
      CHECK(*t.eps > 0);
      CHECK(*t.delta > 0);
    }
  }

  TEST_CASE("preconditions") {
    auto r = ks11_refutation();
    r.proof.multipliers.clear();
    CHECK_THROWS_AS(reduce_degree(r.system, r.proof, CutoffRule::kw(r.system, 1), {}),
                    ValidationError);
  }
}
