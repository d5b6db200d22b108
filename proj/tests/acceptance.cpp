// Acceptance criteria 1-9: one PASS/FAIL line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "psdeg/boolean_ideal.hpp"
#include "psdeg/certificate.hpp"
#include "psdeg/corpus.hpp"
#include "psdeg/degree_reduce.hpp"
#include "psdeg/experiment.hpp"
#include "psdeg/instances.hpp"
#include "psdeg/lasserre.hpp"
#include "psdeg/proof_json.hpp"
#include "psdeg/proof_transform.hpp"
#include "support.hpp"

using namespace psdeg;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

int run(int id, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail << "over time limit " << limit_s << " s; ";
  }
  std::printf("criterion %d: %s  %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL",
              o.detail.str().c_str(), secs);
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

double max_abs(const Polynomial& p) {
  double m = 0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, std::abs(to_double(c)));
  return m;
}

// Random system satisfied at a hidden point, so both sides of the duality
// are finite.
ConstraintSystem random_feasible_system(SplitMix64& rng, std::size_t n) {
  const std::uint64_t x = rng.uniform(std::uint64_t{1} << n);
  ConstraintSystem Q;
  Q.n = n;
  const std::size_t l = 1 + rng.uniform(2), m = rng.uniform(3);
  for (std::size_t j = 0; j < l; ++j) {
    Polynomial q = test::random_poly(rng, n, 3, 2, 1, false);
    const Rational slack(static_cast<long>(rng.uniform(3)), 2);
    q = q - Polynomial::constant(n, q.evaluate_mask(x)) + Polynomial::constant(n, slack);
    if (!q.is_zero()) Q.ineqs.push_back(q);
  }
  for (std::size_t j = 0; j < m; ++j) {
    Polynomial p = test::random_poly(rng, n, 3, 2, 1, false);
    p = p - Polynomial::constant(n, p.evaluate_mask(x));
    if (!p.is_zero()) Q.eqs.push_back(p);
  }
  return Q;
}

// Satisfiability of the refutation formulation: the equalities force
// y_j = p_j(x), so enumerating x covers every candidate point.
bool encoding_satisfiable(const CspInstance& inst, const Rational& gamma) {
  const MaxCspEncoding enc = encode_maxcsp(inst, gamma, Formulation::refutation);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.n); ++x) {
    std::uint64_t full = x;
    for (std::size_t j = 0; j < inst.constraints.size(); ++j)
      if (inst.constraints[j].p.evaluate_mask(x) == 1) full |= std::uint64_t{1} << (inst.n + j);
    if (enc.system.satisfied_by(full)) return true;
  }
  return false;
}

void criterion1(Outcome& o) {
  for (const auto& [r, size, degree] : {std::tuple{eq_pair_refutation(), 2u, 1u},
                                         std::tuple{ks11_refutation(), 2u, 2u}}) {
    const ProofMeasures m = verify(r.system, r.proof);
    o.require(m.valid && m.residual.is_zero(), r.id + " verifies with zero residual");
    o.require(m.monomial_size == size, r.id + " size");
    o.require(m.degree == degree, r.id + " degree");
    const PsProof back = proof_from_json(Json::parse(proof_to_json(r.proof).dump()));
    o.require(verify(r.system, back).valid, r.id + " JSON round trip");

    const CutoffRule c = CutoffRule::kw(r.system, 1);
    const ProofMeasures before = measures(r.system, r.proof, c);
    PsProof mutated = r.proof;
    for (auto& [ax, u] : mutated.ideal) u = u * Polynomial::variable(r.system.n, VarRef::basic(1)) +
                                            Polynomial::constant(r.system.n, 5);
    mutated.ideal[Axiom{AxiomKind::twin_square, 1}] = Polynomial::constant(r.system.n, 3);
    const ProofMeasures after = measures(r.system, mutated, c);
    o.require(after.degree == before.degree && after.monomial_size == before.monomial_size &&
                  after.degree_mod_c == before.degree_mod_c,
              r.id + " measures ignore u_q");
  }
  o.detail << "sizes 2/2, degrees 1/2, u_q mutation leaves measures unchanged";
}

void criterion2(Outcome& o) {
  SplitMix64 rng(20240601);
  int finite = 0, tried = 0;
  double worst = 0;
  while (finite < 60 && tried < 200) {
    ++tried;
    const std::size_t n = 1 + rng.uniform(4);
    const ConstraintSystem Q = random_feasible_system(rng, n);
    const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.uniform(2));
    LasserreOptions lo;
    lo.w = 1 + static_cast<std::uint32_t>(rng.uniform(2));
    const Polynomial p = test::random_poly(rng, n, 4, 2 * d, 1, true);
    const DualityResult r = duality_eval(Q, p, d, lo);
    if (!r.best_bound || !r.min_pseudoexpectation) continue;
    ++finite;
    worst = std::max(worst, std::abs(*r.best_bound - *r.min_pseudoexpectation));
  }
  o.require(finite >= 50, "at least 50 finite instances");
  o.require(worst <= 1e-5, "gap within 1e-5");
  o.detail << finite << " finite instances of " << tried << ", worst gap " << worst;
}

void criterion3(Outcome& o) {
  std::size_t systems = 0, points = 0;
  for (const auto& s : satisfiable_corpus()) {
    const ConstraintSystem& Q = s.system;
    o.require(Q.n <= 12, s.id + " within the exhaustive limit");
    std::vector<std::uint64_t> sat;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << Q.n); ++x)
      if (Q.satisfied_by(x)) sat.push_back(x);
    o.require(!sat.empty(), s.id + " is satisfiable");
    LasserreOptions lo;
    const RefutationSearch r = min_refutation_degree(Q, 8, lo, false);
    o.require(!r.degree.has_value(), s.id + " reports no refutation up to degree 8");
    for (std::uint32_t d = 1; d <= 4; ++d)
      for (std::size_t i = 0; i < sat.size() && i < 4; ++i) {
        ++points;
        o.require(check_pseudoexpectation(point_evaluation(Q.n, 2 * d, sat[i]), Q, d, lo, 1e-9).ok,
                  s.id + " point evaluation passes");
      }
    ++systems;
  }
  o.detail << systems << " satisfiable systems, " << points << " point evaluations";
}

void criterion4(Outcome& o) {
  for (std::size_t n : {1u, 3u}) {
    const auto k = static_cast<std::int64_t>(n);
    const auto oracle = test::knapsack_min_degree_oracle(n, k, 8);
    const RefutationSearch r = min_refutation_degree(gen_knapsack(n, k), 8, {}, false);
    o.require(oracle.has_value() && r.degree == oracle,
              "KS_{" + std::to_string(n) + "," + std::to_string(n) + "} matches the oracle");
    o.detail << "KS_{" << n << "," << n << "}: sdp " << (r.degree ? int(*r.degree) : -1)
             << " oracle " << (oracle ? int(*oracle) : -1) << (n == 1 ? "; " : "");
  }
  const ConstraintSystem Q = gen_knapsack(3, 3);
  const LasserreSdp L = build_sdp(Q, 1, {});
  const MarginResult m = solve_margin(L, {});
  o.require(!m.refutable, "KS_{3,3} has no degree-2 refutation");
  if (!m.refutable) {
    const PseudoExpectation E = extract_pseudoexpectation(L, m.solution);
    o.require(check_pseudoexpectation(E, Q, 1, {}, 1e-6).ok, "degree-2 pseudo-expectation checks");
  }
  o.require(check_pseudoexpectation(test::knapsack_symmetric_pexp(3, 3, 2), Q, 1, {}, 1e-9).ok,
            "symmetric pseudo-expectation checks");
}

void criterion5(Outcome& o) {
  const ConstraintSystem tri = gen_tseitin(cycle_graph(3), {1, 1, 1});
  const RefutationSearch r = min_refutation_degree(tri, 6, {}, true);
  o.require(r.degree.has_value(), "triangle refuted by degree 6");
  if (r.degree && r.certificate) {
    const ProofMeasures m = verify(tri, r.certificate->proof);
    o.require(m.valid || max_abs(m.residual) <= 1e-6, "certificate re-verifies");
    o.detail << "triangle at degree " << *r.degree << (m.valid ? " (exact)" : " (numeric)") << "; ";
  } else {
    o.require(false, "certificate attached");
  }
  const ConstraintSystem c4 = gen_tseitin(cycle_graph(4), {1, 1, 1, 1});
  for (std::uint32_t d : {1u, 2u}) {
    const LasserreSdp L = build_sdp(c4, d, {});
    const MarginResult m = solve_margin(L, {});
    o.require(!m.refutable, "4-cycle not refuted at degree " + std::to_string(2 * d));
    if (!m.refutable)
      o.require(check_pseudoexpectation(extract_pseudoexpectation(L, m.solution), c4, d, {}, 1e-6).ok,
                "4-cycle pseudo-expectation at degree " + std::to_string(2 * d));
  }
  o.detail << "4-cycle pseudo-expectations at 2 and 4";
}

void criterion6(Outcome& o) {
  std::size_t levels = 0;
  for (const auto& r : refutation_corpus()) {
    const std::uint32_t w = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(r.proof.product_width()));
    const ProofMeasures m = verify(r.system, r.proof);
    const auto bound = tradeoff_bound(r.system.n, static_cast<double>(m.monomial_size),
                                      r.system.max_degree(), w);
    LasserreOptions lo;
    lo.w = w;
    const auto cap = static_cast<std::uint32_t>(bound + (bound & 1));
    const RefutationSearch s = min_refutation_degree(r.system, std::min<std::uint32_t>(cap, 8), lo, false);
    o.require(s.degree.has_value() && *s.degree <= cap, r.id + " refuted within the tradeoff bound");

    const CutoffRule c = CutoffRule::kw(r.system, w);
    const ReductionResult red = reduce_degree(r.system, r.proof, c, {});
    o.require(red.degree_bound <= red.tradeoff, r.id + " reduction bound within tradeoff");
    for (const auto& t : red.trace) {
      if (t.leaf) continue;
      ++levels;
      o.require(t.d_other <= t.d_prime, r.id + " d_{1-a} <= d'");
      if (t.d_a) o.require(*t.d_a <= t.d_prime - 1, r.id + " d_a <= d' - 1");
    }
  }
  for (const auto& r : {ks11_refutation(), eq_pair_refutation(), refutation_corpus().back()}) {
    ReduceOptions ro;
    ro.mode = ReduceMode::constructive;
    const ReductionResult red = reduce_degree(r.system, r.proof, CutoffRule::kw(r.system, 1), ro);
    o.require(red.proof && red.measures->valid && red.proof->is_refutation(),
              r.id + " constructive output verifies");
    o.require(red.measures && *red.measures->degree_mod_c <= red.degree_bound &&
                  red.degree_bound <= red.tradeoff,
              r.id + " constructive output respects the bound");
    o.detail << r.id << " -> degree " << (red.measures ? int(*red.measures->degree_mod_c) : -1)
             << " (bound " << red.degree_bound << "); ";
  }
  o.detail << levels << " branching levels checked";
}

void criterion7(Outcome& o) {
  const double e2 = std::exp(2.0);
  const auto b = tradeoff_bound(24, e2, 1, 1);
  const double s = size_lower_bound(24, 45, 1, 1);
  o.require(b == 45, "tradeoff_bound(24, e^2, 1, 1) == 45");
  o.require(std::abs(s - e2) <= 1e-12 * e2, "size_lower_bound(24, 45, 1, 1) == e^2");
  char buf[96];
  std::snprintf(buf, sizeof buf, "bound %lld, size %.15g vs e^2 %.15g", static_cast<long long>(b), s, e2);
  o.detail << buf;
}

void criterion8(Outcome& o) {
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.m = 32;
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.degrees = {4};
  const ExperimentResult res = run_experiment(cfg);
  o.require(res.gap_records.size() == 10, "ten records");
  o.require(res.exit_code == 0, "experiment exit code 0");
  double worst = 1e300;
  for (const auto& g : res.gap_records) {
    o.require(g.sos.has_value(), g.id + " has an sos value");
    if (!g.sos) continue;
    worst = std::min(worst, *g.sos - to_double(g.opt));
    o.require(to_double(g.opt) <= *g.sos + 1e-5, g.id + " opt <= sos + 1e-5");
    o.require(g.opt == opt_brute_force(gen_random_csp(8, 32, 3, CspMode::xor_parity, g.seed)),
              g.id + " opt recomputed");
  }
  for (std::uint64_t seed : cfg.seeds) {
    const CspInstance inst = gen_random_csp(8, 32, 3, CspMode::xor_parity, seed);
    const Rational opt = opt_brute_force(inst);
    o.require(encoding_satisfiable(inst, opt), "encoding satisfiable at gamma = opt");
    const Rational above = opt + Rational(1, 32);
    if (above <= 1) o.require(!encoding_satisfiable(inst, above), "unsatisfiable at opt + 1/m");
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "min(sos - opt) = %.3g, alpha_hat = %.6g", worst,
                res.alpha_hat.value_or(0.0));
  o.detail << buf;
}

void criterion9(Outcome& o) {
  SplitMix64 rng(909);
  int eval = 0, hom = 0, ml = 0, res = 0;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 1 + rng.uniform(10);
    const Polynomial p = test::random_poly(rng, n, 5, 4, 3);
    const Polynomial np = normal_form(p);
    bool ok = np.is_multilinear();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n) && ok; ++x)
      ok = np.evaluate_mask(x) == test::eval_oracle(p, x);
    eval += ok;
  }
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 1 + rng.uniform(6);
    const Polynomial a = test::random_poly(rng, n, 4, 3), b = test::random_poly(rng, n, 4, 3);
    const Polynomial na = normal_form(a), nb = normal_form(b);
    hom += normal_form(na) == na && normal_form(a + b) == normal_form(na + nb) &&
           normal_form(a * b) == normal_form(na * nb);
  }
  for (int it = 0; it < 1000; ++it) {
    const Polynomial p = test::random_poly(rng, 1 + rng.uniform(5), 8, 5, 4);
    ml += multilinearize(p).size() <= p.size();
  }
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 1 + rng.uniform(4);
    auto [Q, proof] = test::random_valid_proof(rng, n);
    auto [Qr, Pr] = restrict_proof(Q, proof, static_cast<std::uint32_t>(1 + rng.uniform(n)), rng.bit());
    res += verify(Q, proof).valid && verify(Qr, Pr).valid;
  }
  o.require(eval == 1000, "evaluation oracle");
  o.require(hom == 1000, "normal form idempotence and homomorphism");
  o.require(ml == 1000, "multilinearization size");
  o.require(res == 1000, "restriction validity");
  o.detail << "evaluation " << eval << "/1000, homomorphism " << hom << "/1000, multilinear "
           << ml << "/1000, restriction " << res << "/1000";
}

}  // namespace

int main() {
  int failures = 0;
  failures += run(1, 1, criterion1);
  failures += run(2, 300, criterion2);
  failures += run(3, 120, criterion3);
  failures += run(4, 300, criterion4);
  failures += run(5, 300, criterion5);
  failures += run(6, 300, criterion6);
  failures += run(7, 1, criterion7);
  failures += run(8, 600, criterion8);
  failures += run(9, 600, criterion9);
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
