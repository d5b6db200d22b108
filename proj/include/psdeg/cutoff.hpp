#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "psdeg/constraint_system.hpp"

namespace psdeg {

// Per-index degree budget c charged to each product of inequalities and to
// each equality. Lower bounds c(J) >= sum_{j in J} deg q_j and
// c(j) >= deg p_j are checked when the rule is evaluated.
class CutoffRule {
 public:
  enum class Kind { constant, degree_sum_plus, table };

  static CutoffRule constant(std::uint32_t value);
  // k*w everywhere, with k the largest constraint degree of Q.
  static CutoffRule kw(const ConstraintSystem& Q, std::uint32_t w);
  static CutoffRule degree_sum_plus(std::uint32_t offset = 0);
  static CutoffRule table(std::map<IndexSet, std::uint32_t> subsets,
                          std::map<std::uint32_t, std::uint32_t> equalities);

  Kind kind() const { return kind_; }

  // c(J) for a nonempty J. Throws ValidationError when the rule falls below
  // sum_{j in J} deg q_j or has no entry for J.
  std::uint32_t at_subset(const ConstraintSystem& Q, const IndexSet& J) const;
  std::uint32_t at_equality(const ConstraintSystem& Q, std::uint32_t j) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::constant;
  std::uint32_t value_ = 0;
  std::map<IndexSet, std::uint32_t> subsets_;
  std::map<std::uint32_t, std::uint32_t> equalities_;
};

}  // namespace psdeg
