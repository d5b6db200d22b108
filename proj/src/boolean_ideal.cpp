#include "psdeg/boolean_ideal.hpp"

#include <algorithm>

#include "psdeg/errors.hpp"

namespace psdeg {

namespace {

void accumulate(Polynomial::Terms& terms, const Monomial& m, const Rational& c) {
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace

Polynomial Axiom::polynomial(std::size_t nvars) const {
  if (index == 0 || index > nvars) throw ValidationError("axiom index out of range");
  const auto x = Polynomial::variable(nvars, VarRef::basic(index));
  const auto xt = Polynomial::variable(nvars, VarRef::twin(index));
  switch (kind) {
    case AxiomKind::basic_square:
      return x * x - x;
    case AxiomKind::twin_square:
      return xt * xt - xt;
    case AxiomKind::complement:
      return x + xt - Polynomial::constant(nvars, 1);
  }
  return Polynomial(nvars);
}

std::vector<Axiom> boolean_axioms(std::size_t nvars) {
  std::vector<Axiom> out;
  out.reserve(3 * nvars);
  for (auto kind : {AxiomKind::basic_square, AxiomKind::twin_square, AxiomKind::complement})
    for (std::uint32_t i = 1; i <= nvars; ++i) out.push_back({kind, i});
  return out;
}

Axiom axiom_from_polynomial(const Polynomial& p) {
  for (const auto& f : p.terms()) {
    const auto i = f.first.max_index();
    if (i == 0) continue;
    for (auto kind : {AxiomKind::basic_square, AxiomKind::twin_square, AxiomKind::complement}) {
      Axiom a{kind, i};
      if (a.polynomial(p.nvars()) == p) return a;
    }
    break;
  }
  throw ValidationError("polynomial is not a Boolean axiom");
}

Polynomial normal_form(const Polynomial& p) {
  Polynomial::Terms out;
  std::vector<std::uint32_t> twins;
  std::vector<Monomial::Factor> basics;
  for (const auto& [m, c] : p.terms()) {
    twins.clear();
    basics.clear();
    for (const auto& [v, e] : m.factors()) {
      if (v.is_twin()) {
        twins.push_back(v.index);
      } else {
        basics.emplace_back(v, 1);
      }
    }
    // x_i * ~x_i is in the ideal.
    bool vanishes = false;
    for (auto i : twins) {
      if (m.contains(VarRef::basic(i))) {
        vanishes = true;
        break;
      }
    }
    if (vanishes) continue;
    // prod_{t in twins} (1 - x_t), expanded over subsets.
    const std::size_t k = twins.size();
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << k); ++subset) {
      std::vector<Monomial::Factor> fs = basics;
      int sign = 1;
      for (std::size_t b = 0; b < k; ++b) {
        if ((subset >> b) & 1u) {
          fs.emplace_back(VarRef::basic(twins[b]), 1);
          sign = -sign;
        }
      }
      accumulate(out, Monomial(std::move(fs)), sign > 0 ? c : Rational(-c));
    }
  }
  return Polynomial(p.nvars(), std::move(out));
}

Polynomial multilinearize(const Polynomial& p) {
  Polynomial::Terms out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> fs;
    fs.reserve(m.factors().size());
    for (const auto& [v, e] : m.factors()) fs.emplace_back(v, 1);
    accumulate(out, Monomial(std::move(fs)), c);
  }
  return Polynomial(p.nvars(), std::move(out));
}

Polynomial restrict(const Polynomial& p, std::uint32_t index, bool value) {
  if (index == 0 || index > p.nvars())
    throw ValidationError("restriction index " + std::to_string(index) + " out of range");
  Polynomial::Terms out;
  const VarRef x = VarRef::basic(index);
  const VarRef xt = VarRef::twin(index);
  for (const auto& [m, c] : p.terms()) {
    const bool killed = value ? m.contains(xt) : m.contains(x);
    if (killed) continue;
    accumulate(out, m.without(x).without(xt), c);
  }
  return Polynomial(p.nvars(), std::move(out));
}

bool equal_mod_ideal(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) throw ValidationError("nvars mismatch");
  return normal_form(p - q).is_zero();
}

namespace {

struct Reducer {
  std::size_t n;
  std::map<Axiom, Polynomial::Terms> quotients;
  Polynomial::Terms remainder;

  void reduce(const Monomial& m, const Rational& c) {
    for (const auto& [v, e] : m.factors()) {
      if (e >= 2) {
        // v^e = v^(e-2) (v^2 - v) + v^(e-1)
        const Monomial rest = m.without(v);
        const AxiomKind kind = v.is_twin() ? AxiomKind::twin_square : AxiomKind::basic_square;
        accumulate(quotients[{kind, v.index}], rest * Monomial::of(v, e - 2), c);
        reduce(rest * Monomial::of(v, e - 1), c);
        return;
      }
    }
    for (const auto& [v, e] : m.factors()) {
      if (v.is_twin()) {
        // ~x m' = m' (x + ~x - 1) - x m' + m'
        const Monomial rest = m.without(v);
        accumulate(quotients[{AxiomKind::complement, v.index}], rest, c);
        reduce(rest * Monomial::of(VarRef::basic(v.index)), -c);
        reduce(rest, c);
        return;
      }
    }
    accumulate(remainder, m, c);
  }
};

}  // namespace

IdealReduction reduce_with_quotients(const Polynomial& p) {
  Reducer r{p.nvars(), {}, {}};
  for (const auto& [m, c] : p.terms()) r.reduce(m, c);
  IdealReduction out;
  for (auto& [axiom, terms] : r.quotients) {
    Polynomial q(p.nvars(), std::move(terms));
    if (!q.is_zero()) out.quotients.emplace(axiom, std::move(q));
  }
  out.remainder = Polynomial(p.nvars(), std::move(r.remainder));
  return out;
}

}  // namespace psdeg
