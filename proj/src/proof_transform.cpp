#include "psdeg/proof_transform.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "psdeg/errors.hpp"

namespace psdeg {

std::pair<ConstraintSystem, PsProof> restrict_proof(const ConstraintSystem& Q,
                                                    const PsProof& proof, std::uint32_t index,
                                                    bool value) {
  if (index == 0 || index > Q.n)
    throw ValidationError("restriction index " + std::to_string(index) + " out of range");
  ConstraintSystem R = Q.restricted(index, value);
  PsProof out;
  out.n = proof.n;
  out.target = restrict(proof.target, index, value);
  for (const auto& [J, roots] : proof.squares) {
    for (const auto& r : roots) {
      Polynomial root = restrict(r.root, index, value);
      if (!root.is_zero()) out.add_square(J, std::move(root), r.weight);
    }
  }
  for (const auto& [j, t] : proof.multipliers) {
    Polynomial tr = restrict(t, index, value);
    if (!tr.is_zero()) out.multipliers.emplace(j, std::move(tr));
  }
  for (const auto& [q, u] : proof.ideal) {
    if (q.index == index) continue;
    Polynomial ur = restrict(u, index, value);
    if (!ur.is_zero()) out.ideal.emplace(q, std::move(ur));
  }
  return {std::move(R), std::move(out)};
}

PsProof multilinearize_proof(const ConstraintSystem& Q, const PsProof& proof) {
  PsProof out;
  out.n = proof.n;
  out.target = proof.target;
  for (const auto& [J, roots] : proof.squares)
    for (const auto& r : roots) out.add_square(J, multilinearize(r.root), r.weight);
  for (const auto& [j, t] : proof.multipliers) {
    Polynomial tm = multilinearize(t);
    if (!tm.is_zero()) out.multipliers.emplace(j, std::move(tm));
  }
  return with_recomputed_ideal(Q, std::move(out));
}

VariableSelection select_variable(const PsProof& proof, std::uint32_t d) {
  VariableSelection sel;
  // Keyed by (index, kind) so that ties resolve to the lowest index, basic first.
  std::map<std::pair<std::uint32_t, VarKind>, std::size_t> counts;
  for (const auto& m : proof.explicit_monomials()) {
    if (m.degree() < d) continue;
    ++sel.large_count;
    for (const auto& [v, e] : m.factors()) ++counts[{v.index, v.kind}];
  }
  for (const auto& [key, count] : counts) {
    if (count > sel.occurrences) {
      sel.occurrences = count;
      sel.variable = VarRef{key.second, key.first};
    }
  }
  return sel;
}

PsProof compose_refutations(const ConstraintSystem& Q, VarRef low, const PsProof& cert_low,
                            const Rational& eps, const PsProof& cert_high, const Rational& delta,
                            std::uint32_t two_d, const CutoffRule& c) {
  if (eps <= 0 || delta <= 0) throw ValidationError("nonpositive margin");
  const std::size_t n = Q.n;
  const VarRef high = low.is_twin() ? VarRef::basic(low.index) : VarRef::twin(low.index);
  const Polynomial L = Polynomial::variable(n, low);
  const Polynomial H = Polynomial::variable(n, high);

  if (cert_low.target != L - Polynomial::constant(n, eps))
    throw ValidationError("low certificate has the wrong target");
  if (cert_high.target != H - Polynomial::constant(n, delta))
    throw ValidationError("high certificate has the wrong target");
  const ProofMeasures ml = measures(Q, cert_low, c);
  const ProofMeasures mh = measures(Q, cert_high, c);
  if (!ml.valid || !mh.valid) throw ValidationError("certificate fails verification");
  if (two_d < 2 || *ml.degree_mod_c > two_d - 2 || *mh.degree_mod_c > two_d)
    throw ValidationError("degree budget exceeded");

  // H^2 (L - eps) == -eps H and eps (H - delta) sum to -eps delta mod I_n.
  const Rational scale = 1 / (eps * delta);
  PsProof out;
  out.n = n;
  out.target = Polynomial::constant(n, -1);
  for (const auto& [J, roots] : cert_low.squares)
    for (const auto& r : roots) out.add_square(J, H * r.root, r.weight * scale);
  for (const auto& [J, roots] : cert_high.squares)
    for (const auto& r : roots) out.add_square(J, r.root, r.weight / delta);
  for (const auto& [j, t] : cert_low.multipliers) out.multipliers[j] = (H * H * t).scaled(scale);
  for (const auto& [j, t] : cert_high.multipliers) {
    auto it = out.multipliers.find(j);
    Polynomial add = t.scaled(1 / Rational(delta));
    if (it == out.multipliers.end()) {
      out.multipliers.emplace(j, std::move(add));
    } else {
      it->second = it->second + add;
      if (it->second.is_zero()) out.multipliers.erase(it);
    }
  }
  out = with_recomputed_ideal(Q, std::move(out));
  const ProofMeasures mo = measures(Q, out, c);
  if (!mo.valid || *mo.degree_mod_c > two_d)
    throw std::logic_error("composed refutation failed its own check");
  return out;
}

}  // namespace psdeg
