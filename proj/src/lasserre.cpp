#include "psdeg/lasserre.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "psdeg/errors.hpp"

namespace psdeg {

namespace {

struct MaskOrder {
  bool operator()(Mask a, Mask b) const { return mask_less(a, b); }
};

using Ordered = std::map<Mask, Rational, MaskOrder>;

void axpy(Ordered& v, const Rational& a, const Ordered& x) {
  for (const auto& [m, c] : x) {
    auto [it, inserted] = v.emplace(m, -a * c);
    if (!inserted) {
      it->second -= a * c;
      if (it->second == 0) v.erase(it);
    }
  }
}

void axpy(std::map<std::size_t, Rational>& v, const Rational& a,
          const std::map<std::size_t, Rational>& x) {
  for (const auto& [k, c] : x) {
    auto [it, inserted] = v.emplace(k, -a * c);
    if (!inserted) {
      it->second -= a * c;
      if (it->second == 0) v.erase(it);
    }
  }
}

// Keeps a linearly independent subset of the candidate columns and decides
// whether the constant 1 lies in their span.
void eliminate(std::vector<FreeColumn> candidates, LasserreSdp& L) {
  struct Row {
    Ordered v;
    std::map<std::size_t, Rational> combo;  // over candidate indices
  };
  std::vector<Row> basis;
  std::map<Mask, std::size_t> pivot;
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    Row r;
    r.v = Ordered(candidates[c].g.begin(), candidates[c].g.end());
    r.combo[c] = 1;
    while (!r.v.empty()) {
      const Mask lead = r.v.rbegin()->first;
      auto it = pivot.find(lead);
      if (it == pivot.end()) break;
      const Row& b = basis[it->second];
      const Rational factor = r.v.rbegin()->second / b.v.rbegin()->second;
      axpy(r.v, factor, b.v);
      axpy(r.combo, factor, b.combo);
    }
    if (r.v.empty()) {
      ++L.dropped_columns;
      continue;
    }
    pivot.emplace(r.v.rbegin()->first, basis.size());
    basis.push_back(std::move(r));
    kept.push_back(c);
  }
  std::vector<std::size_t> position(candidates.size(), 0);
  for (std::size_t i = 0; i < kept.size(); ++i) position[kept[i]] = i;
  auto it = pivot.find(Mask{0});
  if (it != pivot.end()) {
    const Row& b = basis[it->second];
    const Rational c0 = b.v.begin()->second;
    std::vector<Rational> coeffs(kept.size(), Rational(0));
    for (const auto& [k, c] : b.combo) coeffs[position[k]] = c / c0;
    L.equality_refutation = std::move(coeffs);
  }
  for (auto c : kept) L.columns.push_back(std::move(candidates[c]));
}

ExactSparse shifted(const ExactSparse& p, Mask m) {
  ExactSparse out;
  for (const auto& [b, c] : p) {
    auto [it, inserted] = out.emplace(b | m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

}  // namespace

LasserreSdp build_sdp(const ConstraintSystem& Q, std::uint32_t d, const LasserreOptions& opts,
                      const std::optional<Polynomial>& objective) {
  Q.validate();
  if (Q.n > 64) throw ValidationError("SDP path supports at most 64 variables");
  if (d == 0) throw ValidationError("half-degree must be at least 1");
  if (opts.w == 0) throw ValidationError("product width must be at least 1");
  const CutoffRule rule = opts.rule(Q);
  LasserreSdp L;
  L.n = Q.n;
  L.two_d = 2 * d;
  L.kind = objective ? SdpKind::bound : SdpKind::margin;
  if (objective) {
    L.objective = mask_terms(objective->with_nvars(Q.n));
    for (const auto& [m, c] : *L.objective)
      if (static_cast<std::uint32_t>(std::popcount(m)) > L.two_d)
        throw ValidationError("objective degree exceeds 2d");
  }

  const std::size_t nrows = binomial_sum(Q.n, L.two_d) - 1;
  if (nrows > opts.row_cap)
    throw ValidationError("moment basis size " + std::to_string(nrows) + " over configured cap " +
                          std::to_string(opts.row_cap));
  {
    MomentBasis all = MomentBasis::build(Q.n, L.two_d, opts.row_cap + 1);
    L.rows.assign(all.monomials.begin() + 1, all.monomials.end());
  }
  for (std::size_t i = 0; i < L.rows.size(); ++i) L.row_of.emplace(L.rows[i], i);

  L.blocks.push_back(SdpBlock{{}, 0, MomentBasis::build(Q.n, d), ExactSparse{{0, Rational(1)}}});
  for (const auto& J : enumerate_subsets(Q.num_ineqs(), opts.w, opts.subset_cap)) {
    const std::uint32_t cJ = rule.at_subset(Q, J);
    if (cJ > L.two_d) continue;
    ExactSparse prod = mask_terms(Q.product(J));
    if (prod.empty()) continue;
    L.blocks.push_back(SdpBlock{J, cJ, MomentBasis::build(Q.n, (L.two_d - cJ) / 2), std::move(prod)});
  }

  std::vector<FreeColumn> candidates;
  for (std::uint32_t j = 1; j <= Q.num_eqs(); ++j) {
    const std::uint32_t cj = rule.at_equality(Q, j);
    if (cj > L.two_d) continue;
    const ExactSparse pj = mask_terms(Q.eq(j));
    if (pj.empty()) continue;
    for (Mask m : MomentBasis::build(Q.n, L.two_d - cj).monomials)
      candidates.push_back(FreeColumn{j, m, shifted(pj, m)});
  }
  eliminate(std::move(candidates), L);
  if (L.equality_refutation) return L;

  const bool margin = L.kind == SdpKind::margin;
  const std::size_t m = L.rows.size() + (margin ? 1 : 0);
  SdpProblem& P = L.sdp;
  P.A.assign(m, {});
  P.C.assign(L.blocks.size(), {});
  for (std::size_t bk = 0; bk < L.blocks.size(); ++bk) {
    const SdpBlock& B = L.blocks[bk];
    const auto& mons = B.basis.monomials;
    P.block_sizes.push_back(mons.size());
    std::unordered_map<std::size_t, std::vector<kernels::BlockEntry>> pieces;
    std::vector<std::pair<Mask, double>> prod;
    for (const auto& [beta, c] : B.product) prod.emplace_back(beta, to_double(c));
    for (std::uint32_t a = 0; a < mons.size(); ++a) {
      for (std::uint32_t b = a; b < mons.size(); ++b) {
        for (const auto& [beta, c] : prod) {
          const Mask alpha = mons[a] | mons[b] | beta;
          if (alpha == 0) {
            P.C[bk].push_back({a, b, c});
          } else {
            pieces[L.row_of.at(alpha)].push_back({a, b, c});
          }
        }
      }
    }
    for (auto& [row, entries] : pieces)
      P.A[row].push_back(kernels::ConstraintBlock{static_cast<std::uint32_t>(bk), std::move(entries)});
    if (margin) {
      kernels::ConstraintBlock eye{static_cast<std::uint32_t>(bk), {}};
      for (std::uint32_t a = 0; a < mons.size(); ++a) eye.entries.push_back({a, a, 1.0});
      P.A[m - 1].push_back(std::move(eye));
    }
  }
  for (auto& row : P.A)
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.block < y.block; });

  P.b = Eigen::VectorXd::Zero(m);
  if (margin) {
    P.b(m - 1) = 1.0;
  } else {
    for (const auto& [alpha, c] : *L.objective)
      if (alpha != 0) P.b(L.row_of.at(alpha)) = to_double(c);
  }
  P.G = Eigen::MatrixXd::Zero(m, L.columns.size());
  P.f = Eigen::VectorXd::Zero(L.columns.size());
  for (std::size_t k = 0; k < L.columns.size(); ++k) {
    for (const auto& [alpha, c] : L.columns[k].g) {
      if (alpha == 0) {
        P.f(k) = to_double(c);
      } else {
        P.G(L.row_of.at(alpha), k) = to_double(c);
      }
    }
  }
  return L;
}

double PseudoExpectation::at(Mask m) const {
  auto it = values.find(m);
  return it == values.end() ? 0.0 : it->second;
}

double PseudoExpectation::apply(const Polynomial& p) const {
  double s = 0.0;
  for (const auto& [m, c] : mask_terms(p)) s += to_double(c) * at(m);
  return s;
}

PseudoExpectation point_evaluation(std::size_t n, std::uint32_t two_d, Mask assignment) {
  PseudoExpectation E;
  E.n = n;
  E.two_d = two_d;
  E.provenance = "point evaluation";
  for (Mask m : MomentBasis::build(n, two_d).monomials)
    E.values[m] = (m & ~assignment) == 0 ? 1.0 : 0.0;
  return E;
}

PseudoExpectation uniform_measure(std::size_t n, std::uint32_t two_d) {
  PseudoExpectation E;
  E.n = n;
  E.two_d = two_d;
  E.provenance = "uniform measure";
  for (Mask m : MomentBasis::build(n, two_d).monomials) E.values[m] = std::ldexp(1.0, -std::popcount(m));
  return E;
}

PseudoExpectation extract_pseudoexpectation(const LasserreSdp& L, const SdpSolution& sol) {
  if (L.equality_refutation) throw ValidationError("no pseudo-expectation: system is refuted");
  PseudoExpectation E;
  E.n = L.n;
  E.two_d = L.two_d;
  E.provenance = L.kind == SdpKind::margin ? "margin dual" : "bound dual";
  E.values[0] = 1.0;
  for (std::size_t i = 0; i < L.rows.size(); ++i) E.values[L.rows[i]] = -sol.y(i);
  return E;
}

namespace {

double psd_violation(const Eigen::MatrixXd& M) {
  if (M.rows() == 0) return -1.0;
  const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
  return -lmin - 1e-7 * (1.0 + M.trace());
}

Eigen::MatrixXd localized(const PseudoExpectation& E, const MomentBasis& B,
                          const ExactSparse& product) {
  const auto s = static_cast<Eigen::Index>(B.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(s, s);
  for (Eigen::Index a = 0; a < s; ++a)
    for (Eigen::Index b = a; b < s; ++b) {
      double v = 0.0;
      for (const auto& [beta, c] : product)
        v += to_double(c) * E.at(B.monomials[a] | B.monomials[b] | beta);
      M(a, b) = M(b, a) = v;
    }
  return M;
}

std::string describe_set(const IndexSet& J) {
  std::string s = "{";
  for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i]);
  return s + "}";
}

}  // namespace

PexpCheck check_pseudoexpectation(const PseudoExpectation& E, const ConstraintSystem& Q,
                                  std::uint32_t d, const LasserreOptions& opts, double tol) {
  Q.validate();
  if (E.n != Q.n) throw ValidationError("pseudo-expectation and system disagree on n");
  if (E.two_d < 2 * d) throw ValidationError("pseudo-expectation degree below 2d");
  const CutoffRule rule = opts.rule(Q);
  const std::uint32_t two_d = 2 * d;
  PexpCheck out;

  FamilyViolation norm{"normalization", std::abs(E.at(0) - 1.0) - tol, true, "E(1)"};
  norm.ok = norm.worst <= 0;

  FamilyViolation moment{"moment", psd_violation(localized(E, MomentBasis::build(Q.n, d), {{0, Rational(1)}})), true, "J={}"};
  moment.ok = moment.worst <= 0;

  FamilyViolation loc{"localized", -1.0, true, ""};
  for (const auto& J : enumerate_subsets(Q.num_ineqs(), opts.w, opts.subset_cap)) {
    const std::uint32_t cJ = rule.at_subset(Q, J);
    if (cJ > two_d) continue;
    const double v = psd_violation(
        localized(E, MomentBasis::build(Q.n, (two_d - cJ) / 2), mask_terms(Q.product(J))));
    if (v > loc.worst) {
      loc.worst = v;
      loc.where = "J=" + describe_set(J);
    }
  }
  loc.ok = loc.worst <= 0;

  FamilyViolation eq{"equality", -tol, true, ""};
  for (std::uint32_t j = 1; j <= Q.num_eqs(); ++j) {
    const std::uint32_t cj = rule.at_equality(Q, j);
    if (cj > two_d) continue;
    const ExactSparse pj = mask_terms(Q.eq(j));
    for (Mask m : MomentBasis::build(Q.n, two_d - cj).monomials) {
      double v = 0.0;
      for (const auto& [beta, c] : shifted(pj, m)) v += to_double(c) * E.at(beta);
      if (std::abs(v) - tol > eq.worst) {
        eq.worst = std::abs(v) - tol;
        eq.where = "j=" + std::to_string(j);
      }
    }
  }
  eq.ok = eq.worst <= 0;

  out.families = {norm, moment, loc, eq};
  for (const auto& f : out.families) out.ok = out.ok && f.ok;
  return out;
}

double margin_threshold(double tol) { return std::max(1e-6, 100.0 * tol); }

namespace {

bool usable(const SdpSolution& s, double tol) {
  if (s.status == SdpStatus::optimal) return true;
  const double loose = std::max(1e-6, 100.0 * tol);
  return s.status == SdpStatus::max_iter && s.primal_infeasibility <= loose &&
         s.dual_infeasibility <= loose && s.relative_gap <= loose;
}

SdpOptions sdp_options(const LasserreOptions& opts) {
  SdpOptions o;
  o.tol = opts.tol;
  o.max_iter = opts.max_iter;
  o.jobs = opts.jobs;
  return o;
}

}  // namespace

MarginResult solve_margin(const LasserreSdp& L, const LasserreOptions& opts) {
  if (L.kind != SdpKind::margin) throw ValidationError("not a margin problem");
  MarginResult r;
  if (L.equality_refutation) {
    r.refutable = true;
    r.by_equalities = true;
    r.lambda = -1.0;
    return r;
  }
  r.solution = solve_sdp(L.sdp, sdp_options(opts));
  const double threshold = margin_threshold(opts.tol);
  if (!usable(r.solution, opts.tol)) {
    // A feasible dual iterate bounds lambda from below by weak duality, which
    // settles non-refutability even when the primal side stalls.
    const SdpSolution& s = r.solution;
    if (s.status == SdpStatus::max_iter && s.dual_infeasibility <= threshold &&
        s.dual_objective >= -threshold) {
      r.lambda = s.dual_objective;
      r.refutable = false;
      return r;
    }
    throw SolverError("margin SDP ended with status " + to_string(r.solution.status));
  }
  r.lambda = r.solution.primal_objective;
  r.refutable = r.lambda < -threshold;
  return r;
}

DualityResult duality_eval(const ConstraintSystem& Q, const Polynomial& p, std::uint32_t d,
                           const LasserreOptions& opts) {
  const LasserreSdp margin = build_sdp(Q, d, opts);
  MarginResult mr = solve_margin(margin, opts);
  if (mr.refutable) {
    DualityResult r;
    r.margin = mr.lambda;
    r.solution = std::move(mr.solution);
    return r;
  }
  DualityResult r = solve_bound(build_sdp(Q, d, opts, p), opts);
  r.margin = mr.lambda;
  return r;
}

DualityResult solve_bound(const LasserreSdp& L, const LasserreOptions& opts) {
  if (L.kind != SdpKind::bound) throw ValidationError("not a bound problem");
  DualityResult r;
  if (L.equality_refutation) return r;
  r.solution = solve_sdp(L.sdp, sdp_options(opts));
  r.status = r.solution.status;
  if (r.status == SdpStatus::infeasible) return r;
  if (!usable(r.solution, opts.tol))
    throw SolverError("bound SDP ended with status " + to_string(r.status));
  const double p0 = L.objective->count(0) ? to_double(L.objective->at(0)) : 0.0;
  r.best_bound = p0 - r.solution.primal_objective;
  r.E = extract_pseudoexpectation(L, r.solution);
  double e = 0.0;
  for (const auto& [m, c] : *L.objective) e += to_double(c) * r.E->at(m);
  r.min_pseudoexpectation = e;
  r.gap = std::abs(*r.best_bound - e);
  return r;
}

}  // namespace psdeg
