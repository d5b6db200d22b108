#include "psdeg/constraint_system.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "psdeg/boolean_ideal.hpp"
#include "psdeg/errors.hpp"

namespace psdeg {

namespace {

std::uint32_t degree_or_zero(const Polynomial& p) { return p.degree().value_or(0); }

}  // namespace

std::uint32_t ConstraintSystem::max_degree() const {
  std::uint32_t k = 0;
  for (const auto& q : ineqs) k = std::max(k, degree_or_zero(q));
  for (const auto& p : eqs) k = std::max(k, degree_or_zero(p));
  return k;
}

const Polynomial& ConstraintSystem::ineq(std::uint32_t j) const {
  if (j == 0 || j > ineqs.size())
    throw ValidationError("dangling inequality index " + std::to_string(j));
  return ineqs[j - 1];
}

const Polynomial& ConstraintSystem::eq(std::uint32_t j) const {
  if (j == 0 || j > eqs.size())
    throw ValidationError("dangling equality index " + std::to_string(j));
  return eqs[j - 1];
}

std::uint32_t ConstraintSystem::ineq_degree(std::uint32_t j) const {
  return degree_or_zero(ineq(j));
}

std::uint32_t ConstraintSystem::eq_degree(std::uint32_t j) const { return degree_or_zero(eq(j)); }

Polynomial ConstraintSystem::product(const IndexSet& J) const {
  Polynomial acc = Polynomial::constant(n, 1);
  for (auto j : J) acc = acc * ineq(j);
  return acc;
}

void ConstraintSystem::validate() const {
  for (const auto& q : ineqs)
    if (q.nvars() != n) throw ValidationError("inequality declared over the wrong pair count");
  for (const auto& p : eqs)
    if (p.nvars() != n) throw ValidationError("equality declared over the wrong pair count");
}

void ConstraintSystem::validate_index_set(const IndexSet& J) const {
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (J[i] == 0 || J[i] > ineqs.size())
      throw ValidationError("dangling inequality index " + std::to_string(J[i]));
    if (i > 0 && J[i] <= J[i - 1])
      throw ValidationError("index set must be sorted and duplicate-free");
  }
}

ConstraintSystem ConstraintSystem::restricted(std::uint32_t index, bool value) const {
  ConstraintSystem out{n, {}, {}};
  out.ineqs.reserve(ineqs.size());
  out.eqs.reserve(eqs.size());
  for (const auto& q : ineqs) out.ineqs.push_back(restrict(q, index, value));
  for (const auto& p : eqs) out.eqs.push_back(restrict(p, index, value));
  return out;
}

bool ConstraintSystem::satisfied_by(std::uint64_t mask) const {
  for (const auto& q : ineqs)
    if (q.evaluate_mask(mask) < 0) return false;
  for (const auto& p : eqs)
    if (p.evaluate_mask(mask) != 0) return false;
  return true;
}

std::optional<std::uint64_t> ConstraintSystem::find_satisfying_assignment() const {
  if (n > 24) throw ValidationError("brute force limited to 24 variables");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    if (satisfied_by(mask)) return mask;
  return std::nullopt;
}

std::vector<IndexSet> enumerate_subsets(std::size_t l, std::size_t w, std::size_t cap) {
  std::vector<IndexSet> out;
  IndexSet current;
  for (std::size_t size = 1; size <= std::min(l, w); ++size) {
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t next) {
      if (current.size() == size) {
        if (out.size() >= cap)
          throw ValidationError("subset enumeration exceeds cap of " + std::to_string(cap));
        out.push_back(current);
        return;
      }
      for (std::uint32_t j = next; j <= l; ++j) {
        current.push_back(j);
        rec(j + 1);
        current.pop_back();
      }
    };
    rec(1);
  }
  return out;
}

}  // namespace psdeg
