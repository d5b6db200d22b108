#include "psdeg/certificate.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "psdeg/errors.hpp"

namespace psdeg {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

Polynomial basis_poly(std::size_t n, const MomentBasis& B, const std::vector<Rational>& coeffs) {
  std::map<Mask, Rational> t;
  for (std::size_t a = 0; a < coeffs.size(); ++a)
    if (coeffs[a] != 0) t.emplace(B.monomials[a], coeffs[a]);
  return from_mask_terms(n, t);
}

// Exact eigen-roots of a psd block: sqrt(lambda) * u per significant eigenpair.
std::vector<std::vector<double>> float_roots(const Eigen::MatrixXd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (X + X.transpose()));
  const double lmax = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<std::vector<double>> out;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l <= 1e-14 * lmax) continue;
    std::vector<double> r(X.rows());
    for (Eigen::Index a = 0; a < X.rows(); ++a) r[a] = std::sqrt(l) * es.eigenvectors()(a, i);
    out.push_back(std::move(r));
  }
  return out;
}

// Gram matrix of sum_{m != 1} (1 - m)^2 + m^2, which is (N - 1) mod I_n.
Eigen::MatrixXd slack_gram(std::size_t N) {
  Eigen::MatrixXd G0 = 2.0 * Eigen::MatrixXd::Identity(N, N);
  G0(0, 0) = static_cast<double>(N - 1);
  for (std::size_t a = 1; a < N; ++a) G0(0, a) = G0(a, 0) = -1.0;
  return G0;
}

double max_abs(const Polynomial& p) {
  double m = 0.0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, std::abs(to_double(c)));
  return m;
}

struct Scaled {
  std::vector<Eigen::MatrixXd> X;  // block 0 already includes the slack Gram
  std::vector<double> t;
};

Scaled scale_solution(const LasserreSdp& L, const SdpSolution& sol, double kappa, double slack) {
  Scaled s;
  for (std::size_t bk = 0; bk < L.blocks.size(); ++bk) s.X.push_back(sol.X[bk] / kappa);
  const std::size_t N = L.blocks[0].basis.size();
  if (N > 1) s.X[0] += (slack / static_cast<double>(N - 1)) * slack_gram(N);
  for (Eigen::Index k = 0; k < sol.t.size(); ++k) s.t.push_back(sol.t(k) / kappa);
  return s;
}

template <class Round>
void add_multipliers(const LasserreSdp& L, const std::vector<double>& t, PsProof& proof,
                     Round round) {
  std::map<std::uint32_t, std::map<Mask, Rational>> by_eq;
  for (std::size_t k = 0; k < L.columns.size(); ++k) {
    Rational c = round(t[k]);
    if (c != 0) by_eq[L.columns[k].j][L.columns[k].m] += c;
  }
  for (auto& [j, terms] : by_eq) {
    Polynomial p = from_mask_terms(L.n, terms);
    if (!p.is_zero()) proof.multipliers.emplace(j, std::move(p));
  }
}

template <class Round>
void add_block_roots(const LasserreSdp& L, const Scaled& s, std::size_t bk, PsProof& proof,
                     Round round) {
  for (const auto& r : float_roots(s.X[bk])) {
    std::vector<Rational> coeffs;
    for (double v : r) coeffs.push_back(round(v));
    Polynomial root = basis_poly(L.n, L.blocks[bk].basis, coeffs);
    if (!root.is_zero()) proof.add_square(L.blocks[bk].J, std::move(root));
  }
}

PsProof numeric_proof(const LasserreSdp& L, const Scaled& s, const Polynomial& target) {
  PsProof proof;
  proof.n = L.n;
  proof.target = target;
  auto exact = [](double v) { return from_double(v); };
  for (std::size_t bk = 0; bk < L.blocks.size(); ++bk) add_block_roots(L, s, bk, proof, exact);
  add_multipliers(L, s.t, proof, exact);
  return proof;
}

// Exact LDL^T of a symmetric matrix; false unless it is psd.
bool exact_ldlt(RMatrix A, RMatrix& Lm, std::vector<Rational>& D) {
  const std::size_t n = A.size();
  Lm.assign(n, std::vector<Rational>(n, Rational(0)));
  D.assign(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    D[k] = A[k][k];
    Lm[k][k] = 1;
    if (D[k] < 0) return false;
    if (D[k] == 0) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (A[i][k] != 0) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (A[i][k] == 0) continue;
      Lm[i][k] = A[i][k] / D[k];
      for (std::size_t j = k + 1; j <= i; ++j) {
        if (A[j][k] == 0) continue;
        A[i][j] -= Lm[i][k] * A[j][k];
        A[j][i] = A[i][j];
      }
    }
  }
  return true;
}

// Rounds the certificate, then repairs the constant block exactly. Returns
// an empty string on success, the failure reason otherwise.
std::string rationalize(const ConstraintSystem& Q, const LasserreSdp& L, const Scaled& s,
                        const Polynomial& target, std::int64_t cap, PsProof& out) {
  auto round = [cap](double v) { return round_continued_fraction(v, cap); };
  PsProof proof;
  proof.n = L.n;
  proof.target = target;
  for (std::size_t bk = 1; bk < L.blocks.size(); ++bk) add_block_roots(L, s, bk, proof, round);
  add_multipliers(L, s.t, proof, round);

  const std::map<Mask, Rational> rho = mask_terms(target - proof_rhs(Q, proof, false));
  const MomentBasis& B = L.blocks[0].basis;
  const std::size_t N = B.size();
  RMatrix Y(N, std::vector<Rational>(N));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b) Y[a][b] = Y[b][a] = round(0.5 * (s.X[0](a, b) + s.X[0](b, a)));

  // Orthogonal projection onto the affine set {Y : Gram(Y) == rho}: each
  // monomial class absorbs its discrepancy evenly.
  std::map<Mask, std::pair<Rational, std::size_t>> classes;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      auto& [sum, count] = classes[B.monomials[a] | B.monomials[b]];
      sum += Y[a][b];
      ++count;
    }
  for (const auto& [alpha, c] : rho)
    if (!classes.count(alpha)) return "residual monomial outside the constant block";
  std::map<Mask, Rational> shift;
  for (const auto& [alpha, sc] : classes) {
    auto it = rho.find(alpha);
    const Rational want = it == rho.end() ? Rational(0) : it->second;
    shift[alpha] = (want - sc.first) / Rational(static_cast<unsigned long>(sc.second));
  }
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) Y[a][b] += shift[B.monomials[a] | B.monomials[b]];

  RMatrix Lm;
  std::vector<Rational> D;
  if (!exact_ldlt(Y, Lm, D)) return "rounded Gram matrix is not positive semidefinite";
  for (std::size_t k = 0; k < N; ++k) {
    if (D[k] == 0) continue;
    std::vector<Rational> col(N, Rational(0));
    for (std::size_t a = k; a < N; ++a) col[a] = Lm[a][k];
    proof.add_square({}, basis_poly(L.n, B, col), D[k]);
  }
  proof = with_recomputed_ideal(Q, std::move(proof));
  if (!verify(Q, proof).valid) return "rounded certificate does not verify";
  out = std::move(proof);
  return "";
}

CertificateReport finish(const ConstraintSystem& Q, const LasserreSdp& L, const Scaled& s,
                         const Polynomial& target, const LasserreOptions& opts, bool round,
                         std::int64_t cap) {
  CertificateReport rep;
  rep.proof = with_recomputed_ideal(Q, numeric_proof(L, s, target));
  rep.measures = measures(Q, rep.proof, opts.rule(Q));
  rep.numeric_residual = max_abs(rep.measures.residual);
  rep.exact = rep.measures.valid;
  if (round && !rep.exact) {
    rep.rationalization_attempted = true;
    PsProof exact;
    rep.note = rationalize(Q, L, s, target, cap, exact);
    if (rep.note.empty()) {
      rep.proof = std::move(exact);
      rep.measures = measures(Q, rep.proof, opts.rule(Q));
      rep.exact = rep.measures.valid;
    }
  }
  return rep;
}

}  // namespace

CertificateReport extract_certificate(const ConstraintSystem& Q, const LasserreSdp& L,
                                      const MarginResult& margin, const LasserreOptions& opts,
                                      bool rationalize, std::int64_t denom_cap) {
  if (L.kind != SdpKind::margin || !margin.refutable) throw ValidationError("no certificate");
  const Polynomial minus_one = Polynomial::constant(Q.n, -1);
  if (margin.by_equalities) {
    CertificateReport rep;
    rep.proof.n = Q.n;
    rep.proof.target = minus_one;
    const auto& coeffs = *L.equality_refutation;
    std::map<std::uint32_t, std::map<Mask, Rational>> by_eq;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (coeffs[k] != 0) by_eq[L.columns[k].j][L.columns[k].m] -= coeffs[k];
    for (auto& [j, terms] : by_eq) {
      Polynomial p = from_mask_terms(Q.n, terms);
      if (!p.is_zero()) rep.proof.multipliers.emplace(j, std::move(p));
    }
    rep.proof = with_recomputed_ideal(Q, std::move(rep.proof));
    rep.measures = measures(Q, rep.proof, opts.rule(Q));
    rep.exact = rep.measures.valid;
    return rep;
  }
  if (margin.solution.X.size() != L.blocks.size() ||
      margin.solution.status == SdpStatus::max_iter)
    throw ValidationError("no certificate");
  // sigma == lambda < 0; scaled by |lambda|/2 it reads -2 == -1 - 1, and the
  // unit slack is carried by the constant block.
  const double kappa = -margin.lambda / 2.0;
  const Scaled s = scale_solution(L, margin.solution, kappa, 1.0);
  return finish(Q, L, s, minus_one, opts, rationalize, denom_cap);
}

CertificateReport extract_bound_certificate(const ConstraintSystem& Q, const LasserreSdp& L,
                                            const SdpSolution& sol, const Polynomial& p,
                                            const Rational& eps,
                                            const LasserreOptions& opts, bool rationalize,
                                            std::int64_t denom_cap) {
  if (L.kind != SdpKind::bound || sol.X.size() != L.blocks.size() ||
      sol.status == SdpStatus::max_iter)
    throw ValidationError("no certificate");
  if (mask_terms(p) != *L.objective) throw ValidationError("objective differs from the SDP's");
  const double p0 = L.objective->count(0) ? to_double(L.objective->at(0)) : 0.0;
  const double gamma = p0 - sol.primal_objective;
  const double slack = gamma - to_double(eps);
  if (slack <= 0) throw ValidationError("bound does not exceed the requested margin");
  // sigma == p - gamma == (p - eps) - slack.
  const Scaled s = scale_solution(L, sol, 1.0, slack);
  const Polynomial target = p - Polynomial::constant(Q.n, eps);
  return finish(Q, L, s, target, opts, rationalize, denom_cap);
}

}  // namespace psdeg

namespace psdeg {

RefutationSearch min_refutation_degree(const ConstraintSystem& Q, std::uint32_t d_max,
                                       const LasserreOptions& opts, bool rationalize,
                                       std::int64_t denom_cap) {
  if (d_max < 2 || d_max % 2 != 0) throw ValidationError("d_max must be a positive even degree");
  RefutationSearch out;
  for (std::uint32_t two_d = 2; two_d <= d_max; two_d += 2) {
    const LasserreSdp L = build_sdp(Q, two_d / 2, opts);
    const MarginResult mr = solve_margin(L, opts);
    out.probes.push_back({two_d, mr.refutable, mr.by_equalities, mr.lambda, mr.solution.iterations});
    if (mr.refutable) {
      out.degree = two_d;
      if (mr.by_equalities || mr.solution.status != SdpStatus::max_iter)
        out.certificate = extract_certificate(Q, L, mr, opts, rationalize, denom_cap);
      break;
    }
  }
  return out;
}

}  // namespace psdeg
