#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "psdeg/lasserre.hpp"
#include "psdeg/rational.hpp"

namespace psdeg::test {

// Exact positive semidefiniteness by symmetric elimination over the rationals.
inline bool exact_psd(std::vector<std::vector<Rational>> M) {
  const std::size_t n = M.size();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (M[i][i] < 0) return false;
      if (M[i][i] > 0 && p == n) p = i;
    }
    if (p == n) {
      // Every remaining diagonal is zero; so must be every remaining entry.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && M[i][j] != 0) return false;
      return true;
    }
    done[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || M[i][p] == 0) continue;
      const Rational f = M[i][p] / M[p][p];
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) M[i][j] -= f * M[p][j];
    }
  }
  return true;
}

// Symmetric moments y_s = E(x_S), |S| = s, of KS_{n,k} at degree two_d under
// the cut-off k w = 1, or nullopt when the equality constraints alone are
// inconsistent. Relations: E(x_S (2 sum x_i - k)) = 0 for |S| <= two_d - 1.
inline std::optional<std::vector<Rational>> knapsack_symmetric_moments(std::size_t n,
                                                                       std::int64_t k,
                                                                       std::uint32_t two_d) {
  const std::size_t top = std::min<std::size_t>(n, two_d);
  std::vector<Rational> y(top + 1, 0);
  y[0] = 1;
  for (std::size_t s = 0; s + 1 <= two_d && s <= n; ++s) {
    const Rational lead = Rational(static_cast<long>(2 * s) - k) * y[s];
    if (s == n) {
      if (lead != 0) return std::nullopt;
      continue;
    }
    // 2 s y_s + 2 (n - s) y_{s+1} - k y_s = 0
    y[s + 1] = -lead / Rational(static_cast<long>(2 * (n - s)));
  }
  return y;
}

// Oracle for the refutability of KS_{n,k} at degree two_d: no symmetric
// pseudo-expectation exists. Symmetrizing any pseudo-expectation gives a
// symmetric one, so this decides the question.
inline bool knapsack_refutable_oracle(std::size_t n, std::int64_t k, std::uint32_t two_d) {
  const auto y = knapsack_symmetric_moments(n, k, two_d);
  if (!y) return true;
  const std::uint32_t d = two_d / 2;
  std::vector<Mask> rows;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (static_cast<std::uint32_t>(std::popcount(m)) <= d) rows.push_back(m);
  std::vector<std::vector<Rational>> M(rows.size(), std::vector<Rational>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      M[i][j] = (*y)[std::popcount(rows[i] | rows[j])];
  return !exact_psd(std::move(M));
}

inline std::optional<std::uint32_t> knapsack_min_degree_oracle(std::size_t n, std::int64_t k,
                                                               std::uint32_t d_max) {
  for (std::uint32_t two_d = 2; two_d <= d_max; two_d += 2)
    if (knapsack_refutable_oracle(n, k, two_d)) return two_d;
  return std::nullopt;
}

// The symmetric pseudo-expectation as a PseudoExpectation value.
inline PseudoExpectation knapsack_symmetric_pexp(std::size_t n, std::int64_t k,
                                                 std::uint32_t two_d) {
  const auto y = knapsack_symmetric_moments(n, k, two_d);
  PseudoExpectation E;
  E.n = n;
  E.two_d = two_d;
  E.provenance = "symmetric";
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    const auto s = static_cast<std::size_t>(std::popcount(m));
    if (s <= two_d) E.values[m] = to_double((*y)[s]);
  }
  return E;
}

}  // namespace psdeg::test
