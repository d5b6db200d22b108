#include "psdeg/moment.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "psdeg/boolean_ideal.hpp"
#include "psdeg/errors.hpp"

namespace psdeg {

bool mask_less(Mask a, Mask b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  const Mask diff = a ^ b;
  const Mask lowest = diff & (~diff + 1);
  return (b & lowest) != 0;
}

Monomial mask_monomial(Mask m) {
  std::vector<Monomial::Factor> fs;
  while (m) {
    const int b = std::countr_zero(m);
    fs.emplace_back(VarRef::basic(static_cast<std::uint32_t>(b + 1)), 1);
    m &= m - 1;
  }
  return Monomial(std::move(fs));
}

Mask monomial_mask(const Monomial& m) {
  Mask out = 0;
  for (const auto& [v, e] : m.factors()) {
    if (v.is_twin() || e != 1 || v.index > 64)
      throw ValidationError("monomial is not multilinear over basic variables");
    out |= Mask{1} << (v.index - 1);
  }
  return out;
}

std::map<Mask, Rational> mask_terms(const Polynomial& p) {
  if (p.nvars() > 64) throw ValidationError("SDP path supports at most 64 variables");
  std::map<Mask, Rational> out;
  const Polynomial nf = normal_form(p);
  for (const auto& [m, c] : nf.terms()) out.emplace(monomial_mask(m), c);
  return out;
}

Polynomial from_mask_terms(std::size_t n, const std::map<Mask, Rational>& terms) {
  Polynomial::Terms t;
  for (const auto& [m, c] : terms)
    if (c != 0) t.emplace(mask_monomial(m), c);
  return Polynomial(n, std::move(t));
}

std::size_t binomial_sum(std::size_t n, std::uint32_t d) {
  std::size_t total = 0;
  std::size_t binom = 1;
  for (std::uint32_t i = 0; i <= d && i <= n; ++i) {
    total += binom;
    binom = binom * (n - i) / (i + 1);
  }
  return total;
}

MomentBasis MomentBasis::build(std::size_t n, std::uint32_t degree, std::size_t cap) {
  if (n > 64) throw ValidationError("SDP path supports at most 64 variables");
  const std::size_t size = binomial_sum(n, degree);
  if (size > cap)
    throw ValidationError("moment basis of size " + std::to_string(size) + " exceeds cap " +
                          std::to_string(cap));
  MomentBasis B;
  B.n = n;
  B.degree = degree;
  B.monomials.reserve(size);
  // Subsets of {0..n-1} of each size in lexicographic index order, which is
  // descending canonical order within a degree.
  for (std::uint32_t k = 0; k <= std::min<std::size_t>(degree, n); ++k) {
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<Mask> level;
    while (true) {
      Mask m = 0;
      for (auto i : idx) m |= Mask{1} << i;
      level.push_back(m);
      int pos = static_cast<int>(k) - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (std::uint32_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    std::sort(level.begin(), level.end(), mask_less);
    B.monomials.insert(B.monomials.end(), level.begin(), level.end());
  }
  return B;
}

}  // namespace psdeg
