#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "psdeg/kernels.hpp"

namespace psdeg {

// (P) min <C, X> + f't   s.t.  A(X) + G t = b,  X psd (block diagonal), t free
// (D) max b'y            s.t.  Z = C - A*(y) psd,  G'y = f
//
// A constraint matrix is stored as sparse upper-triangle pieces per block;
// an off-diagonal entry v at (r, c) stands for v at both (r, c) and (c, r).
struct SdpProblem {
  std::vector<std::size_t> block_sizes;
  std::vector<std::vector<kernels::BlockEntry>> C;  // one sparse piece per block
  kernels::ConstraintMatrices A;
  Eigen::VectorXd b;
  Eigen::MatrixXd G;  // rows = A.size(); may have zero columns
  Eigen::VectorXd f;

  std::size_t num_rows() const { return A.size(); }
  std::size_t num_free() const { return static_cast<std::size_t>(G.cols()); }
  // Throws ValidationError on inconsistent dimensions or out-of-block entries.
  void validate() const;
};

// optimal:    both residuals and the relative gap are within tol.
// infeasible: (D) is infeasible; (P) has an improving ray.
// unbounded:  (P) is infeasible; (D) has an improving ray.
// max_iter:   iteration cap or numerical stall; the last iterate is kept.
enum class SdpStatus { optimal, infeasible, unbounded, max_iter };

std::string to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::max_iter;
  std::vector<Eigen::MatrixXd> X;
  std::vector<Eigen::MatrixXd> Z;
  Eigen::VectorXd y;
  Eigen::VectorXd t;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double relative_gap = 0.0;
  int iterations = 0;
};

struct SdpOptions {
  double tol = 1e-8;
  int max_iter = 200;
  // Schur complement assembly threads; 1 selects the serial kernel.
  int jobs = 1;
};

// Infeasible-start primal-dual interior-point method with Nesterov-Todd
// scaling and Mehrotra predictor-corrector steps.
SdpSolution solve_sdp(const SdpProblem& prob, const SdpOptions& opts = {});

// <A_i, X> for every row.
Eigen::VectorXd apply_A(const SdpProblem& prob, const std::vector<Eigen::MatrixXd>& X);
// sum_i y_i A_i as dense blocks.
std::vector<Eigen::MatrixXd> apply_At(const SdpProblem& prob, const Eigen::VectorXd& y);
Eigen::MatrixXd dense_piece(const std::vector<kernels::BlockEntry>& entries, std::size_t side);

}  // namespace psdeg
