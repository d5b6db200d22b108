#include "psdeg/cutoff.hpp"

#include "psdeg/errors.hpp"

namespace psdeg {

CutoffRule CutoffRule::constant(std::uint32_t value) {
  CutoffRule c;
  c.kind_ = Kind::constant;
  c.value_ = value;
  return c;
}

CutoffRule CutoffRule::kw(const ConstraintSystem& Q, std::uint32_t w) {
  return constant(Q.max_degree() * w);
}

CutoffRule CutoffRule::degree_sum_plus(std::uint32_t offset) {
  CutoffRule c;
  c.kind_ = Kind::degree_sum_plus;
  c.value_ = offset;
  return c;
}

CutoffRule CutoffRule::table(std::map<IndexSet, std::uint32_t> subsets,
                             std::map<std::uint32_t, std::uint32_t> equalities) {
  CutoffRule c;
  c.kind_ = Kind::table;
  c.subsets_ = std::move(subsets);
  c.equalities_ = std::move(equalities);
  return c;
}

std::uint32_t CutoffRule::at_subset(const ConstraintSystem& Q, const IndexSet& J) const {
  Q.validate_index_set(J);
  std::uint32_t floor = 0;
  for (auto j : J) floor += Q.ineq_degree(j);
  std::uint32_t value = 0;
  switch (kind_) {
    case Kind::constant:
      value = value_;
      break;
    case Kind::degree_sum_plus:
      value = floor + value_;
      break;
    case Kind::table: {
      auto it = subsets_.find(J);
      if (it == subsets_.end()) throw ValidationError("cut-off table has no entry for subset");
      value = it->second;
      break;
    }
  }
  if (value < floor)
    throw ValidationError("cut-off rule violates its lower bound: c(J)=" + std::to_string(value) +
                          " < " + std::to_string(floor));
  return value;
}

std::uint32_t CutoffRule::at_equality(const ConstraintSystem& Q, std::uint32_t j) const {
  const std::uint32_t floor = Q.eq_degree(j);
  std::uint32_t value = 0;
  switch (kind_) {
    case Kind::constant:
      value = value_;
      break;
    case Kind::degree_sum_plus:
      value = floor + value_;
      break;
    case Kind::table: {
      auto it = equalities_.find(j);
      if (it == equalities_.end()) throw ValidationError("cut-off table has no entry for equality");
      value = it->second;
      break;
    }
  }
  if (value < floor)
    throw ValidationError("cut-off rule violates its lower bound: c(" + std::to_string(j) +
                          ")=" + std::to_string(value) + " < " + std::to_string(floor));
  return value;
}

std::string CutoffRule::describe() const {
  switch (kind_) {
    case Kind::constant:
      return "constant(" + std::to_string(value_) + ")";
    case Kind::degree_sum_plus:
      return "degsum+" + std::to_string(value_);
    case Kind::table:
      return "table";
  }
  return "?";
}

}  // namespace psdeg
