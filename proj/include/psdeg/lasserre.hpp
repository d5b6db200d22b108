#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "psdeg/constraint_system.hpp"
#include "psdeg/cutoff.hpp"
#include "psdeg/moment.hpp"
#include "psdeg/sdp_solver.hpp"

namespace psdeg {

struct LasserreOptions {
  std::uint32_t w = 1;
  // Defaults to the constant rule k*w.
  std::optional<CutoffRule> cutoff;
  double tol = 1e-8;
  int max_iter = 200;
  int jobs = 1;
  std::size_t subset_cap = 4096;
  // Cap on the number of monomial rows of the SDP.
  std::size_t row_cap = 20000;

  CutoffRule rule(const ConstraintSystem& Q) const {
    return cutoff ? *cutoff : CutoffRule::kw(Q, w);
  }
};

using ExactSparse = std::map<Mask, Rational>;

// One PSD block: s_J times prod_{j in J} q_j, with s_J over basis.
struct SdpBlock {
  IndexSet J;
  std::uint32_t cutoff = 0;
  MomentBasis basis;
  ExactSparse product;  // normal form of prod_{j in J} q_j
};

// One free variable: the coefficient of basis monomial m in t_j.
struct FreeColumn {
  std::uint32_t j = 0;
  Mask m = 0;
  ExactSparse g;  // normal_form(m * p_j)
};

enum class SdpKind { margin, bound };

// The degree-2d search problem for Q. The margin problem maximizes lambda
// subject to M_J(E) - lambda I psd on every block, E(1) = 1 and E(g) = 0 on
// every free column; Q is refutable at this degree iff lambda < 0. The bound
// problem minimizes E(p) over the same E with lambda = 0.
struct LasserreSdp {
  std::size_t n = 0;
  std::uint32_t two_d = 0;
  SdpKind kind = SdpKind::margin;
  std::optional<ExactSparse> objective;
  std::vector<SdpBlock> blocks;
  // Linearly independent columns kept in the SDP.
  std::vector<FreeColumn> columns;
  std::size_t dropped_columns = 0;
  // Set when 1 lies in the span of the equality columns: 1 = sum c_k g_k.
  std::optional<std::vector<Rational>> equality_refutation;
  std::vector<Mask> rows;  // row i <-> nonconstant monomial; margin row last
  std::unordered_map<Mask, std::size_t> row_of;
  SdpProblem sdp;
};

// d is the half-degree (the SDP certifies degree mod c <= 2d). Blocks whose
// cut-off exceeds 2d are omitted, as are equalities with c(j) > 2d.
LasserreSdp build_sdp(const ConstraintSystem& Q, std::uint32_t d, const LasserreOptions& opts,
                      const std::optional<Polynomial>& objective = std::nullopt);

struct PseudoExpectation {
  std::size_t n = 0;
  std::uint32_t two_d = 0;
  std::map<Mask, double> values;  // missing monomials read as 0
  std::string provenance;

  double at(Mask m) const;
  double apply(const Polynomial& p) const;  // on normal_form(p)
};

PseudoExpectation point_evaluation(std::size_t n, std::uint32_t two_d, Mask assignment);
PseudoExpectation uniform_measure(std::size_t n, std::uint32_t two_d);

// E(alpha) = -y_alpha, E(1) = 1.
PseudoExpectation extract_pseudoexpectation(const LasserreSdp& L, const SdpSolution& sol);

struct FamilyViolation {
  std::string family;
  double worst = 0.0;  // amount by which the family's condition fails (<= 0: holds)
  bool ok = true;
  std::string where;
};

struct PexpCheck {
  bool ok = true;
  std::vector<FamilyViolation> families;  // normalization, moment, localized, equality
};

// PSD conditions use the slack 1e-7 * (1 + trace); normalization and the
// equality conditions use tol.
PexpCheck check_pseudoexpectation(const PseudoExpectation& E, const ConstraintSystem& Q,
                                  std::uint32_t d, const LasserreOptions& opts, double tol);

struct MarginResult {
  bool refutable = false;
  bool by_equalities = false;
  double lambda = 0.0;
  SdpSolution solution;
};

// Threshold below which a margin counts as negative.
double margin_threshold(double tol);

MarginResult solve_margin(const LasserreSdp& L, const LasserreOptions& opts);

struct DualityResult {
  // nullopt stands for +infinity (Q refutable at this degree).
  std::optional<double> best_bound;
  std::optional<double> min_pseudoexpectation;
  double gap = 0.0;
  std::optional<PseudoExpectation> E;
  SdpStatus status = SdpStatus::optimal;
  double margin = 0.0;
  SdpSolution solution;
};

// sup{r : Q |- p - r >= 0} against inf{E(p)} at degree 2d.
DualityResult duality_eval(const ConstraintSystem& Q, const Polynomial& p, std::uint32_t d,
                           const LasserreOptions& opts);
// Solves a bound problem without first testing refutability. A system that
// is refutable at this degree typically ends with status infeasible.
DualityResult solve_bound(const LasserreSdp& bound_problem, const LasserreOptions& opts);

}  // namespace psdeg
