#include "psdeg/degree_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psdeg/errors.hpp"
#include "psdeg/lasserre.hpp"
#include "psdeg/proof_transform.hpp"

namespace psdeg {

namespace {

constexpr double kSnap = 1e-9;

double snapped(double x) {
  const double r = std::round(x);
  return std::abs(x - r) < kSnap ? r : x;
}

std::int64_t snap_floor(double x) { return static_cast<std::int64_t>(std::floor(snapped(x))); }
std::int64_t snap_ceil(double x) { return static_cast<std::int64_t>(std::ceil(snapped(x))); }

void require_size(double s) {
  if (!(s >= 1.0) || !std::isfinite(s)) throw ValidationError("size parameter must be >= 1");
}

std::uint32_t even_up(std::uint32_t x) { return x + (x & 1u); }

std::string var_name(VarRef v) {
  return (v.is_twin() ? "~x" : "x") + std::to_string(v.index);
}

// Largest cut-off value the proof system can charge.
std::uint32_t max_cutoff(const ConstraintSystem& Q, const CutoffRule& c, std::uint32_t w) {
  std::uint32_t best = 0;
  if (!Q.ineqs.empty() && w > 0)
    for (const auto& J : enumerate_subsets(Q.ineqs.size(), w, 1u << 20))
      best = std::max(best, c.at_subset(Q, J));
  for (std::uint32_t j = 1; j <= Q.eqs.size(); ++j) best = std::max(best, c.at_equality(Q, j));
  return best;
}

struct Context {
  CutoffRule c;
  std::uint32_t w = 1;
  std::int64_t d = 0;
  std::int64_t d2 = 0;  // d''
  ReduceOptions opts;
  std::vector<TraceNode>* trace = nullptr;
};

LasserreOptions sdp_options(const Context& ctx) {
  LasserreOptions lo;
  lo.w = ctx.w;
  lo.cutoff = ctx.c;
  lo.tol = ctx.opts.tol;
  lo.jobs = ctx.opts.jobs;
  return lo;
}

// An exact certificate of v - eps >= 0 at degree mod c <= two_d.
PsProof lower_bound_certificate(const ConstraintSystem& Q, VarRef v, std::uint32_t two_d,
                                const Context& ctx, Rational& eps) {
  const std::size_t n = Q.n;
  const Polynomial p = Polynomial::variable(n, v);
  const LasserreOptions lo = sdp_options(ctx);
  const std::uint32_t half = two_d / 2;
  const std::string where = " for " + var_name(v) + " at degree " + std::to_string(two_d);

  const LasserreSdp margin_sdp = build_sdp(Q, half, lo);
  const MarginResult margin = solve_margin(margin_sdp, lo);
  if (margin.refutable) {
    // No pseudo-expectation exists: v - eps == v^2 + eps * (refutation).
    const CertificateReport rep = extract_certificate(Q, margin_sdp, margin, lo, true);
    if (!rep.exact) throw SolverError("rationalization failed" + where + ": " + rep.note);
    eps = Rational(1, 2);
    PsProof out;
    out.n = n;
    out.target = p - Polynomial::constant(n, eps);
    out.add_square({}, p);
    for (const auto& [J, roots] : rep.proof.squares)
      for (const auto& r : roots) out.add_square(J, r.root, r.weight * eps);
    for (const auto& [j, t] : rep.proof.multipliers) out.multipliers.emplace(j, t.scaled(eps));
    return with_recomputed_ideal(Q, std::move(out));
  }

  const LasserreSdp bound_sdp = build_sdp(Q, half, lo, p);
  const DualityResult res = solve_bound(bound_sdp, lo);
  if (!res.best_bound) throw SolverError("bound problem unusable" + where);
  const double gamma = *res.best_bound;
  if (gamma <= ctx.opts.tol)
    throw GuaranteeViolation("margin below tolerance" + where + " (best bound " +
                             std::to_string(gamma) + ")");
  eps = round_continued_fraction(gamma / 2, 1000000);
  if (eps <= 0 || to_double(eps) >= gamma) eps = from_double(gamma / 4);
  const CertificateReport rep =
      extract_bound_certificate(Q, bound_sdp, res.solution, p, eps, lo, true);
  if (!rep.exact) throw SolverError("rationalization failed" + where + ": " + rep.note);
  return rep.proof;
}

// Returns the (even) degree the node is refuted at; fills proof in
// constructive mode.
std::int64_t reduce_node(const ConstraintSystem& Q, const PsProof& proof, std::size_t n_eff,
                         double s, std::size_t depth, const std::string& path,
                         const Context& ctx, std::optional<PsProof>* out) {
  const std::int64_t d = ctx.d;
  const VariableSelection sel = select_variable(proof, static_cast<std::uint32_t>(d));
  const std::size_t slot = ctx.trace->size();
  {
    TraceNode node;
    node.depth = depth;
    node.path = path;
    node.n_eff = n_eff;
    node.s = s;
    node.t = sel.large_count;
    node.d_double_prime = ctx.d2;
    ctx.trace->push_back(node);
  }
  const bool constructive = ctx.opts.mode == ReduceMode::constructive;

  if (sel.large_count == 0) {
    const std::int64_t guarantee = 2 * (d - 1) + 2 * ctx.d2;
    auto& node = (*ctx.trace)[slot];
    node.leaf = true;
    node.guaranteed_degree = guarantee;
    const ProofMeasures m = measures(Q, proof, ctx.c);
    if (!m.valid) throw std::logic_error("restricted proof failed verification at " + path);
    const std::int64_t achieved = even_up(*m.degree_mod_c);
    if (achieved > guarantee)
      throw GuaranteeViolation("leaf degree " + std::to_string(achieved) + " exceeds " +
                               std::to_string(guarantee) + " at " + path);
    node.achieved_degree = achieved;
    if (out) *out = proof;
    return constructive ? achieved : guarantee;
  }
  if (n_eff == 0) throw std::logic_error("large monomial with every variable restricted");

  const VarRef v = *sel.variable;
  const bool a = v.is_twin();
  const double n = static_cast<double>(n_eff);
  const std::int64_t d_prime = lifted_degree(n_eff, s, d);
  const double s_prime = static_cast<double>(sel.large_count) * (1.0 - d / (2.0 * n));
  {
    auto& node = (*ctx.trace)[slot];
    node.variable = v;
    node.d_prime = d_prime;
    node.s_prime = s_prime;
    node.guaranteed_degree = 2 * d_prime + 2 * ctx.d2;
    node.d_other = d + snap_floor(2.0 * n * std::log(s) / d);
    if (node.d_other > d_prime)
      throw GuaranteeViolation("d_{1-a} = " + std::to_string(node.d_other) + " exceeds d' = " +
                               std::to_string(d_prime) + " at " + path);
    if (s_prime >= 1.0) {
      node.d_a = d + snap_floor(2.0 * n * std::log(s_prime) / d);
      if (*node.d_a > d_prime - 1)
        throw GuaranteeViolation("d_a = " + std::to_string(*node.d_a) + " exceeds d' - 1 = " +
                                 std::to_string(d_prime - 1) + " at " + path);
    }
  }
  const std::int64_t guarantee = 2 * d_prime + 2 * ctx.d2;
  const std::string sep = path.empty() ? "" : ",";
  const std::string path_a = path + sep + "x" + std::to_string(v.index) + "=" + (a ? "1" : "0");
  const std::string path_b = path + sep + "x" + std::to_string(v.index) + "=" + (a ? "0" : "1");

  // The a-branch sets v to 0, which kills every monomial containing v.
  std::optional<PsProof> proof_a, proof_b;
  auto [Qa, Pa] = restrict_proof(Q, proof, v.index, a);
  const std::int64_t deg_a = reduce_node(Qa, Pa, n_eff - 1, std::max(s_prime, 1.0), depth + 1,
                                         path_a, ctx, constructive ? &proof_a : nullptr);
  auto [Qb, Pb] = restrict_proof(Q, proof, v.index, !a);
  const std::int64_t deg_b = reduce_node(Qb, Pb, n_eff - 1, s, depth + 1, path_b, ctx,
                                         constructive ? &proof_b : nullptr);
  if (deg_a > guarantee - 2 || deg_b > guarantee)
    throw GuaranteeViolation("branch degrees " + std::to_string(deg_a) + "/" +
                             std::to_string(deg_b) + " exceed the node budget " +
                             std::to_string(guarantee) + " at " + path);
  if (!constructive) return guarantee;

  // Q[v=0] is refuted at deg_a and Q[v=1] at deg_b, so v >= eps holds at
  // two_d - 2 and twin(v) >= delta at two_d.
  const std::uint32_t two_d =
      static_cast<std::uint32_t>(std::max<std::int64_t>({4, deg_a + 2, deg_b}));
  if (two_d > ctx.opts.max_degree)
    throw ValidationError("composition degree " + std::to_string(two_d) +
                          " over the constructive cap " + std::to_string(ctx.opts.max_degree));
  const VarRef high = a ? VarRef::basic(v.index) : VarRef::twin(v.index);
  Rational eps, delta;
  const PsProof cert_low = lower_bound_certificate(Q, v, two_d - 2, ctx, eps);
  const PsProof cert_high = lower_bound_certificate(Q, high, two_d, ctx, delta);
  PsProof composed = compose_refutations(Q, v, cert_low, eps, cert_high, delta, two_d, ctx.c);
  const ProofMeasures m = measures(Q, composed, ctx.c);
  const std::int64_t achieved = even_up(*m.degree_mod_c);
  auto& node = (*ctx.trace)[slot];
  node.eps = eps;
  node.delta = delta;
  node.achieved_degree = achieved;
  if (achieved > guarantee)
    throw GuaranteeViolation("composed degree " + std::to_string(achieved) + " exceeds " +
                             std::to_string(guarantee) + " at " + path);
  if (out) *out = std::move(composed);
  return achieved;
}

}  // namespace

std::int64_t tradeoff_bound(std::size_t n, double s, std::uint32_t k, std::uint32_t w) {
  require_size(s);
  const double v = 4.0 * std::sqrt(2.0 * (n + 1.0) * std::log(s)) + double(k) * w + 4.0;
  return snap_ceil(v);
}

double size_lower_bound(std::size_t n, std::int64_t d, std::uint32_t k, std::uint32_t w) {
  const std::int64_t kw = std::int64_t(k) * w;
  if (d < kw + 4) throw ValidationError("criterion not applicable: d < kw + 4");
  const double e = double(d - kw - 4);
  return std::exp(e * e / (32.0 * (n + 1.0)));
}

std::int64_t lifted_degree(std::size_t n, double s, std::int64_t d) {
  require_size(s);
  if (d <= 0) throw ValidationError("degree threshold must be positive");
  return d + snap_floor(2.0 * (n + 1.0) * std::log(s) / double(d));
}

std::int64_t initial_threshold(std::size_t n, double s) {
  require_size(s);
  return snap_floor(std::sqrt(2.0 * (n + 1.0) * std::log(s))) + 1;
}

ReductionResult reduce_degree(const ConstraintSystem& Q, const PsProof& proof, const CutoffRule& c,
                              const ReduceOptions& opts) {
  Q.validate();
  const ProofMeasures m0 = measures(Q, proof, c);
  if (!m0.valid) throw ValidationError("input proof fails verification");
  if (!proof.is_refutation()) throw ValidationError("input proof is not a refutation");
  if (opts.mode == ReduceMode::constructive && Q.n > opts.max_vars)
    throw ValidationError("constructive mode supports at most " + std::to_string(opts.max_vars) +
                          " variables");

  const PsProof ml = proof.is_multilinear() ? proof : multilinearize_proof(Q, proof);
  ReductionResult res;
  res.s = std::max<double>(1.0, static_cast<double>(ml.monomial_size()));
  res.k = Q.max_degree();
  res.w = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(ml.product_width()));
  res.d0 = initial_threshold(Q.n, res.s);
  res.tradeoff = tradeoff_bound(Q.n, res.s, res.k, res.w);

  Context ctx{c, res.w, res.d0, 0, opts, &res.trace};
  const std::uint32_t maxc = max_cutoff(Q, c, res.w);
  ctx.d2 = std::max<std::int64_t>(1, (maxc + 1) / 2);

  std::optional<PsProof> out;
  const std::int64_t root = reduce_node(Q, ml, Q.n, res.s, 0, "", ctx,
                                        opts.mode == ReduceMode::constructive ? &out : nullptr);
  res.degree_bound = res.trace.front().guaranteed_degree;
  if (root > res.degree_bound) throw std::logic_error("root degree above its guarantee");
  if (c.kind() == CutoffRule::Kind::constant && maxc <= res.k * res.w &&
      res.degree_bound > res.tradeoff)
    throw GuaranteeViolation("degree bound " + std::to_string(res.degree_bound) +
                             " exceeds the tradeoff bound " + std::to_string(res.tradeoff));
  if (out) {
    res.measures = measures(Q, *out, c);
    res.proof = std::move(out);
  }
  return res;
}

}  // namespace psdeg
