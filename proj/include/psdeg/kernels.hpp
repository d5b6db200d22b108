#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace psdeg::kernels {

// Constraint over at most 64 variables as bit masks. xor: parity of
// (x & vars) equals rhs. sat: some literal is true, negated marks ~x.
struct PackedConstraint {
  std::uint64_t vars = 0;
  std::uint64_t negated = 0;
  bool is_xor = true;
  std::uint8_t rhs = 0;
};

inline bool satisfied(const PackedConstraint& c, std::uint64_t x) {
  if (c.is_xor) return (std::popcount(x & c.vars) & 1) == c.rhs;
  return ((x & c.vars & ~c.negated) | (~x & c.negated)) != 0;
}

// Largest number of satisfied constraints over x in {0,1}^n.
std::uint32_t max_satisfied_serial(std::span<const PackedConstraint> cs, std::size_t n);
std::uint32_t max_satisfied_parallel(std::span<const PackedConstraint> cs, std::size_t n,
                                     int jobs);

// Sparse symmetric coefficient matrix of one constraint restricted to one
// block, upper triangle (row <= col).
struct BlockEntry {
  std::uint32_t row;
  std::uint32_t col;
  double value;
};

struct ConstraintBlock {
  std::uint32_t block;
  std::vector<BlockEntry> entries;
};

// Constraint i is the list of its block pieces.
using ConstraintMatrices = std::vector<std::vector<ConstraintBlock>>;

// M_ij = sum over blocks b of <A_i^b, W_b A_j^b W_b>. W_b is symmetric.
// M must be sized m x m on entry; it is overwritten.
void schur_serial(const ConstraintMatrices& A, const std::vector<Eigen::MatrixXd>& W,
                  Eigen::MatrixXd& M);
void schur_parallel(const ConstraintMatrices& A, const std::vector<Eigen::MatrixXd>& W,
                    Eigen::MatrixXd& M, int jobs);

}  // namespace psdeg::kernels
