#include <doctest.h>

#include "psdeg/boolean_ideal.hpp"
#include "psdeg/errors.hpp"
#include "psdeg/poly_text.hpp"
#include "support.hpp"

using namespace psdeg;
using psdeg::test::eval_oracle;
using psdeg::test::random_poly;

namespace {
Polynomial P(const char* s, std::size_t n = 0) { return parse_polynomial(s, n); }
}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("arithmetic") {
    CHECK((P("x1") + P("-x1")).is_zero());
    CHECK(P("x1 + 1") * P("x1 - 1") == P("x1^2 - 1"));
    CHECK(P("2*x1").scaled(Rational(1, 2)) == P("x1"));
    CHECK_THROWS_AS(P("x1", 1) + P("x2", 2), ValidationError);
    CHECK(P("0").is_zero());
    CHECK_FALSE(P("x1").degree() == std::nullopt);
    CHECK(P("0").degree() == std::nullopt);
  }

  TEST_CASE("graded order puts basic before twin") {
    const Polynomial p = P("~x1 + x2 + x1 + 1", 2);
    std::vector<std::string> order;
    for (const auto& [m, c] : p.terms()) order.push_back(to_string(m));
    CHECK(order == std::vector<std::string>{"1", "~x1", "x2", "x1"});
    CHECK(to_string(p) == "x1 + x2 + ~x1 + 1");
  }

  TEST_CASE("parse and print") {
    CHECK(to_string(P("3/2*x1*~x2 - x1 + 1")) == "3/2*x1*~x2 - x1 + 1");
    CHECK(P("(x1 + 1)^2") == P("x1^2 + 2*x1 + 1"));
    CHECK(P("\xe2\x88\x92x1") == P("-x1"));
    CHECK(P("x3").nvars() == 3);
    CHECK_THROWS_AS(P("x0"), ValidationError);
    CHECK_THROWS_AS(P("x1 +"), ValidationError);
    CHECK_THROWS_AS(P("x3", 2), ValidationError);
  }

  TEST_CASE("normal form") {
    CHECK(normal_form(P("~x1")) == P("1 - x1"));
    CHECK(normal_form(P("x1^2*~x1")).is_zero());
    CHECK(normal_form(P("(1 - 2*x1)^2")) == P("1", 1));
    for (std::uint64_t x : {0u, 1u}) CHECK(eval_oracle(P("(1 - 2*x1)^2"), x) == 1);
    CHECK(normal_form(P("x1^2 - x1")).is_zero());
    CHECK(normal_form(P("x1 + ~x1 - 1")).is_zero());
  }

  TEST_CASE("multilinearize") {
    CHECK(multilinearize(P("x1^3")) == P("x1"));
    CHECK(multilinearize(P("~x2^2*x1", 2)) == P("~x2*x1", 2));
    CHECK(multilinearize(P("2*x1^2 - x1")) == P("x1"));
  }

  TEST_CASE("restrict") {
    CHECK(restrict(P("x1*x2 + ~x1"), 1, false) == P("1", 2));
    CHECK(restrict(P("2*x1 - 1"), 1, true) == P("1", 1));
    CHECK(restrict(P("x1*x2 + ~x1"), 1, true) == P("x2"));
    CHECK(restrict(P("x1*x2"), 2, true).nvars() == 2);
    CHECK_THROWS_AS(restrict(P("x1"), 2, true), ValidationError);
  }

  TEST_CASE("ideal equivalence") {
    CHECK(equal_mod_ideal(P("x1^2"), P("x1")));
    CHECK(equal_mod_ideal(P("~x1"), P("1 - x1")));
    CHECK_FALSE(equal_mod_ideal(P("x1", 2), P("x2")));
  }

  TEST_CASE("axioms") {
    const auto ax = boolean_axioms(2);
    REQUIRE(ax.size() == 6);
    CHECK(ax[0].polynomial(2) == P("x1^2 - x1", 2));
    CHECK(ax[3].polynomial(2) == P("~x2^2 - ~x2", 2));
    CHECK(ax[5].polynomial(2) == P("x2 + ~x2 - 1", 2));
    CHECK(axiom_from_polynomial(P("x2 + ~x2 - 1")).kind == AxiomKind::complement);
    CHECK_THROWS_AS(axiom_from_polynomial(P("x1 + x2")), ValidationError);
  }

  TEST_CASE("division by the Boolean generators") {
    SplitMix64 rng(11);
    for (int it = 0; it < 300; ++it) {
      const std::size_t n = 1 + rng.uniform(4);
      const Polynomial p = random_poly(rng, n, 6, 4, 3);
      const IdealReduction r = reduce_with_quotients(p);
      Polynomial sum = r.remainder;
      for (const auto& [q, u] : r.quotients) sum = sum + u * q.polynomial(n);
      CHECK(sum == p);
      CHECK(r.remainder == normal_form(p));
    }
  }

  TEST_CASE("evaluation oracle, exhaustive up to 10 variables") {
    SplitMix64 rng(2024);
    int cases = 0;
    for (int it = 0; it < 1000; ++it, ++cases) {
      const std::size_t n = 1 + rng.uniform(10);
      const Polynomial p = random_poly(rng, n, 5, 4, 3);
      const Polynomial q = p + random_poly(rng, n, 2, 3, 2);
      const Polynomial np = normal_form(p);
      REQUIRE(np.is_multilinear());
      bool agree_pq = true;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const Rational v = eval_oracle(p, x);
        REQUIRE(np.evaluate_mask(x) == v);
        REQUIRE(p.evaluate_mask(x) == v);
        if (eval_oracle(q, x) != v) agree_pq = false;
      }
      REQUIRE(equal_mod_ideal(p, q) == agree_pq);
    }
    CHECK(cases == 1000);
  }

  TEST_CASE("normal form is idempotent and a ring homomorphism") {
    SplitMix64 rng(7);
    for (int it = 0; it < 1000; ++it) {
      const std::size_t n = 1 + rng.uniform(6);
      const Polynomial a = random_poly(rng, n, 4, 3);
      const Polynomial b = random_poly(rng, n, 4, 3);
      const Polynomial na = normal_form(a), nb = normal_form(b);
      REQUIRE(normal_form(na) == na);
      REQUIRE(normal_form(a + b) == normal_form(na + nb));
      REQUIRE(normal_form(a * b) == normal_form(na * nb));
      REQUIRE(normal_form(a.scaled(Rational(3, 7))) == na.scaled(Rational(3, 7)));
    }
  }

  TEST_CASE("multilinearization never increases size") {
    SplitMix64 rng(99);
    for (int it = 0; it < 1000; ++it) {
      const std::size_t n = 1 + rng.uniform(5);
      const Polynomial p = random_poly(rng, n, 8, 5, 4);
      const Polynomial m = multilinearize(p);
      REQUIRE(m.size() <= p.size());
      REQUIRE(m.is_multilinear());
      REQUIRE(equal_mod_ideal(m, p));
    }
  }

  TEST_CASE("print and parse round trip") {
    SplitMix64 rng(5);
    for (int it = 0; it < 1000; ++it) {
      const std::size_t n = 1 + rng.uniform(6);
      Polynomial p = random_poly(rng, n, 5, 4, 3).scaled(Rational(1 + rng.uniform(5), 1 + rng.uniform(5)));
      REQUIRE(parse_polynomial(to_string(p), n) == p);
    }
  }
}
