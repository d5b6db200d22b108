#include "psdeg/ps_proof.hpp"

#include <algorithm>
#include <string>

#include "psdeg/errors.hpp"

namespace psdeg {

std::size_t PsProof::product_width() const {
  std::size_t w = 0;
  for (const auto& [J, roots] : squares)
    if (!roots.empty()) w = std::max(w, J.size());
  return w;
}

std::vector<Monomial> PsProof::explicit_monomials() const {
  std::vector<Monomial> out;
  for (const auto& [J, roots] : squares)
    for (const auto& r : roots)
      for (const auto& [m, c] : r.root.terms()) out.push_back(m);
  for (const auto& [j, t] : multipliers)
    for (const auto& [m, c] : t.terms()) out.push_back(m);
  return out;
}

std::size_t PsProof::monomial_size() const {
  std::size_t s = 0;
  for (const auto& [J, roots] : squares)
    for (const auto& r : roots) s += r.root.size();
  for (const auto& [j, t] : multipliers) s += t.size();
  return s;
}

bool PsProof::is_refutation() const { return target == Polynomial::constant(n, -1); }

bool PsProof::is_multilinear() const {
  for (const auto& [J, roots] : squares)
    for (const auto& r : roots)
      if (!r.root.is_multilinear()) return false;
  for (const auto& [j, t] : multipliers)
    if (!t.is_multilinear()) return false;
  return true;
}

void PsProof::add_square(const IndexSet& J, Polynomial root, Rational weight) {
  squares[J].push_back(WeightedRoot{std::move(weight), std::move(root)});
}

namespace {

void validate_shape(const ConstraintSystem& Q, const PsProof& proof) {
  if (proof.n != Q.n) throw ValidationError("proof and system disagree on the pair count");
  auto check_poly = [&](const Polynomial& p) {
    if (p.nvars() != Q.n) throw ValidationError("variable index exceeds declared pair count");
  };
  check_poly(proof.target);
  for (const auto& [J, roots] : proof.squares) {
    Q.validate_index_set(J);
    for (const auto& r : roots) {
      if (r.weight <= 0) throw ValidationError("square weight must be positive");
      check_poly(r.root);
    }
  }
  for (const auto& [j, t] : proof.multipliers) {
    Q.eq(j);
    check_poly(t);
  }
  for (const auto& [q, u] : proof.ideal) {
    if (q.index == 0 || q.index > Q.n) throw ValidationError("ideal axiom index out of range");
    check_poly(u);
  }
}

std::uint32_t deg0(const Polynomial& p) { return p.degree().value_or(0); }

// Degree of sum_i w_i r_i^2 with w_i > 0: leading forms cannot cancel.
std::optional<std::uint32_t> square_degree(const std::vector<WeightedRoot>& roots) {
  std::optional<std::uint32_t> d;
  for (const auto& r : roots)
    if (auto dr = r.root.degree()) d = std::max(d.value_or(0), 2 * *dr);
  return d;
}

}  // namespace

Polynomial proof_rhs(const ConstraintSystem& Q, const PsProof& proof, bool with_ideal) {
  Polynomial rhs(Q.n);
  for (const auto& [J, roots] : proof.squares) {
    Polynomial s(Q.n);
    for (const auto& r : roots) s = s + (r.root * r.root).scaled(r.weight);
    rhs = rhs + (J.empty() ? s : s * Q.product(J));
  }
  for (const auto& [j, t] : proof.multipliers) rhs = rhs + t * Q.eq(j);
  if (with_ideal)
    for (const auto& [q, u] : proof.ideal) rhs = rhs + u * q.polynomial(Q.n);
  return rhs;
}

ProofMeasures verify(const ConstraintSystem& Q, const PsProof& proof) {
  Q.validate();
  validate_shape(Q, proof);
  ProofMeasures m;
  m.residual = normal_form(proof_rhs(Q, proof) - proof.target);
  m.valid = m.residual.is_zero();
  m.monomial_size = proof.monomial_size();
  m.product_width = proof.product_width();
  std::uint32_t d = deg0(proof.target);
  for (const auto& [J, roots] : proof.squares) {
    auto ds = square_degree(roots);
    if (!ds) continue;
    std::uint32_t extra = 0;
    for (auto j : J) extra += Q.ineq_degree(j);
    d = std::max(d, *ds + extra);
  }
  for (const auto& [j, t] : proof.multipliers)
    if (!t.is_zero()) d = std::max(d, deg0(t) + Q.eq_degree(j));
  m.degree = d;
  return m;
}

ProofMeasures measures(const ConstraintSystem& Q, const PsProof& proof, const CutoffRule& c) {
  ProofMeasures m = verify(Q, proof);
  std::uint32_t d = deg0(proof.target);
  for (const auto& [J, roots] : proof.squares) {
    auto ds = square_degree(roots);
    if (!ds) continue;
    d = std::max(d, J.empty() ? *ds : c.at_subset(Q, J) + *ds);
  }
  for (const auto& [j, t] : proof.multipliers)
    if (!t.is_zero()) d = std::max(d, c.at_equality(Q, j) + deg0(t));
  m.degree_mod_c = d;
  return m;
}

PsProof with_recomputed_ideal(const ConstraintSystem& Q, PsProof proof) {
  proof.ideal.clear();
  IdealReduction red = reduce_with_quotients(proof.target - proof_rhs(Q, proof, false));
  for (auto& [q, u] : red.quotients)
    if (!u.is_zero()) proof.ideal.emplace(q, std::move(u));
  return proof;
}

}  // namespace psdeg
