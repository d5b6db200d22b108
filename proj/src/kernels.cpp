#include "psdeg/kernels.hpp"

#include <omp.h>

#include <algorithm>

namespace psdeg::kernels {

std::uint32_t max_satisfied_serial(std::span<const PackedConstraint> cs, std::size_t n) {
  std::uint32_t best = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < total; ++x) {
    std::uint32_t count = 0;
    for (const auto& c : cs) count += satisfied(c, x) ? 1u : 0u;
    best = std::max(best, count);
  }
  return best;
}

std::uint32_t max_satisfied_parallel(std::span<const PackedConstraint> cs, std::size_t n,
                                     int jobs) {
  std::uint32_t best = 0;
  const std::int64_t total = std::int64_t{1} << n;
#pragma omp parallel for num_threads(jobs) schedule(static) reduction(max : best)
  for (std::int64_t x = 0; x < total; ++x) {
    std::uint32_t count = 0;
    for (const auto& c : cs) count += satisfied(c, static_cast<std::uint64_t>(x)) ? 1u : 0u;
    best = std::max(best, count);
  }
  return best;
}

namespace {

// T = W A W for one sparse symmetric piece.
void scaled_piece(const std::vector<BlockEntry>& entries, const Eigen::MatrixXd& W,
                  Eigen::MatrixXd& T) {
  T.setZero(W.rows(), W.cols());
  for (const auto& e : entries) {
    if (e.row == e.col) {
      T.noalias() += e.value * W.col(e.row) * W.col(e.row).transpose();
    } else {
      T.noalias() += e.value * W.col(e.row) * W.col(e.col).transpose();
      T.noalias() += e.value * W.col(e.col) * W.col(e.row).transpose();
    }
  }
}

double inner(const std::vector<BlockEntry>& entries, const Eigen::MatrixXd& T) {
  double s = 0.0;
  for (const auto& e : entries)
    s += e.row == e.col ? e.value * T(e.row, e.row)
                        : e.value * (T(e.row, e.col) + T(e.col, e.row));
  return s;
}

// Row i of the upper triangle. scratch holds one matrix per block.
void schur_row(const ConstraintMatrices& A, const std::vector<Eigen::MatrixXd>& W,
               std::size_t i, std::vector<Eigen::MatrixXd>& scratch,
               std::vector<char>& present, Eigen::MatrixXd& M) {
  std::fill(present.begin(), present.end(), 0);
  for (const auto& piece : A[i]) {
    scaled_piece(piece.entries, W[piece.block], scratch[piece.block]);
    present[piece.block] = 1;
  }
  for (std::size_t j = i; j < A.size(); ++j) {
    double s = 0.0;
    for (const auto& piece : A[j])
      if (present[piece.block]) s += inner(piece.entries, scratch[piece.block]);
    M(i, j) = s;
  }
}

void mirror_upper(Eigen::MatrixXd& M) {
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = j + 1; i < M.rows(); ++i) M(i, j) = M(j, i);
}

}  // namespace

void schur_serial(const ConstraintMatrices& A, const std::vector<Eigen::MatrixXd>& W,
                  Eigen::MatrixXd& M) {
  const std::size_t m = A.size();
  M.setZero(m, m);
  std::vector<Eigen::MatrixXd> scratch(W.size());
  std::vector<char> present(W.size());
  for (std::size_t i = 0; i < m; ++i) schur_row(A, W, i, scratch, present, M);
  mirror_upper(M);
}

void schur_parallel(const ConstraintMatrices& A, const std::vector<Eigen::MatrixXd>& W,
                    Eigen::MatrixXd& M, int jobs) {
  const std::int64_t m = static_cast<std::int64_t>(A.size());
  M.setZero(m, m);
#pragma omp parallel num_threads(jobs)
  {
    std::vector<Eigen::MatrixXd> scratch(W.size());
    std::vector<char> present(W.size());
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < m; ++i)
      schur_row(A, W, static_cast<std::size_t>(i), scratch, present, M);
  }
  mirror_upper(M);
}

}  // namespace psdeg::kernels
