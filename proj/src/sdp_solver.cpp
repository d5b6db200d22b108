#include "psdeg/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psdeg/errors.hpp"

namespace psdeg {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal:
      return "optimal";
    case SdpStatus::infeasible:
      return "infeasible";
    case SdpStatus::unbounded:
      return "unbounded";
    case SdpStatus::max_iter:
      return "max_iter";
  }
  return "?";
}

void SdpProblem::validate() const {
  if (C.size() != block_sizes.size()) throw ValidationError("one objective piece per block");
  if (static_cast<std::size_t>(b.size()) != A.size())
    throw ValidationError("right-hand side length differs from row count");
  if (static_cast<std::size_t>(G.rows()) != A.size() && G.cols() > 0)
    throw ValidationError("free-variable matrix has the wrong row count");
  if (f.size() != G.cols()) throw ValidationError("free objective length differs from G");
  auto check = [&](std::size_t block, const std::vector<kernels::BlockEntry>& es) {
    if (block >= block_sizes.size()) throw ValidationError("constraint references a missing block");
    for (const auto& e : es)
      if (e.row > e.col || e.col >= block_sizes[block])
        throw ValidationError("constraint entry outside its block's upper triangle");
  };
  for (std::size_t bk = 0; bk < C.size(); ++bk) check(bk, C[bk]);
  for (const auto& row : A)
    for (const auto& piece : row) check(piece.block, piece.entries);
}

MatrixXd dense_piece(const std::vector<kernels::BlockEntry>& entries, std::size_t side) {
  MatrixXd M = MatrixXd::Zero(side, side);
  for (const auto& e : entries) {
    M(e.row, e.col) += e.value;
    if (e.row != e.col) M(e.col, e.row) += e.value;
  }
  return M;
}

namespace {

double piece_inner(const std::vector<kernels::BlockEntry>& entries, const MatrixXd& X) {
  double s = 0.0;
  for (const auto& e : entries)
    s += e.row == e.col ? e.value * X(e.row, e.row) : e.value * (X(e.row, e.col) + X(e.col, e.row));
  return s;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double frob(const Blocks& a) { return std::sqrt(inner(a, a)); }

// Largest step alpha with X + alpha dX psd, given X = L L^T; infinity if none.
double max_step(const MatrixXd& L, const MatrixXd& dX) {
  const auto Li = L.triangularView<Eigen::Lower>();
  MatrixXd P = Li.solve(dX);
  P = Li.solve(P.transpose()).transpose();
  P = 0.5 * (P + P.transpose());
  const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(P, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
  return lmin < 0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

struct Scaling {
  MatrixXd G;     // W = G G^T
  MatrixXd Ginv;
  MatrixXd W;
  VectorXd sigma;  // scaled point V = diag(sigma)
  MatrixXd LX;     // chol(X)
  MatrixXd LZ;     // chol(Z)
};

bool nt_scaling(const MatrixXd& X, const MatrixXd& Z, Scaling& s) {
  Eigen::LLT<MatrixXd> cx(X);
  Eigen::LLT<MatrixXd> cz(Z);
  if (cx.info() != Eigen::Success || cz.info() != Eigen::Success) return false;
  s.LX = cx.matrixL();
  s.LZ = cz.matrixL();
  Eigen::JacobiSVD<MatrixXd> svd(s.LZ.transpose() * s.LX, Eigen::ComputeFullU | Eigen::ComputeFullV);
  s.sigma = svd.singularValues();
  if (s.sigma.minCoeff() <= 0.0 || !std::isfinite(s.sigma.sum())) return false;
  const VectorXd isq = s.sigma.cwiseSqrt().cwiseInverse();
  s.G = s.LX * svd.matrixV() * isq.asDiagonal();
  s.W = s.G * s.G.transpose();
  const MatrixXd Li = s.LX.triangularView<Eigen::Lower>().solve(
      MatrixXd::Identity(X.rows(), X.cols()));
  s.Ginv = s.sigma.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * Li;
  return true;
}

class Solver {
 public:
  Solver(const SdpProblem& p, const SdpOptions& o) : prob_(p), opts_(o) {
    nb_ = p.block_sizes.size();
    m_ = p.num_rows();
    k_ = p.num_free();
    for (std::size_t bk = 0; bk < nb_; ++bk) {
      Cd_.push_back(dense_piece(p.C[bk], p.block_sizes[bk]));
      N_ += static_cast<double>(p.block_sizes[bk]);
    }
    normb_ = p.b.norm();
    normC_ = frob(Cd_);
    normf_ = p.f.norm();
  }

  SdpSolution run();

 private:
  struct Direction {
    Blocks dX, dZ;
    VectorXd dy, dt;
  };

  void residuals();
  bool factor();
  Direction solve(const Blocks& Rc) const;

  const SdpProblem& prob_;
  SdpOptions opts_;
  std::size_t nb_ = 0, m_ = 0, k_ = 0;
  double N_ = 0.0, normb_ = 0.0, normC_ = 0.0, normf_ = 0.0;
  Blocks Cd_;

  Blocks X_, Z_;
  VectorXd y_, t_;
  VectorXd rp_, rf_;
  Blocks Rd_;
  double pobj_ = 0.0, dobj_ = 0.0, pinf_ = 0.0, dinf_ = 0.0, gap_ = 0.0, mu_ = 0.0;

  std::vector<Scaling> sc_;
  Eigen::LLT<MatrixXd> Mfac_;
  MatrixXd MinvG_;
  Eigen::LDLT<MatrixXd> Sfac_;
};

void Solver::residuals() {
  const VectorXd AX = apply_A(prob_, X_);
  rp_ = prob_.b - AX - (k_ ? VectorXd(prob_.G * t_) : VectorXd::Zero(m_));
  const Blocks Aty = apply_At(prob_, y_);
  Rd_.resize(nb_);
  for (std::size_t bk = 0; bk < nb_; ++bk) Rd_[bk] = Cd_[bk] - Aty[bk] - Z_[bk];
  rf_ = k_ ? VectorXd(prob_.f - prob_.G.transpose() * y_) : VectorXd();
  pobj_ = inner(Cd_, X_) + (k_ ? prob_.f.dot(t_) : 0.0);
  dobj_ = prob_.b.dot(y_);
  pinf_ = rp_.norm() / (1.0 + normb_);
  const double rd = frob(Rd_);
  dinf_ = std::sqrt(rd * rd + (k_ ? rf_.squaredNorm() : 0.0)) / (1.0 + normC_ + normf_);
  gap_ = std::abs(pobj_ - dobj_) / (1.0 + std::abs(pobj_) + std::abs(dobj_));
  mu_ = inner(X_, Z_) / N_;
}

bool Solver::factor() {
  sc_.resize(nb_);
  std::vector<MatrixXd> W(nb_);
  for (std::size_t bk = 0; bk < nb_; ++bk) {
    if (!nt_scaling(X_[bk], Z_[bk], sc_[bk])) return false;
    W[bk] = sc_[bk].W;
  }
  MatrixXd M;
  if (opts_.jobs > 1) {
    kernels::schur_parallel(prob_.A, W, M, opts_.jobs);
  } else {
    kernels::schur_serial(prob_.A, W, M);
  }
  Mfac_.compute(M);
  if (Mfac_.info() != Eigen::Success) {
    const double shift = 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
    M.diagonal().array() += shift;
    Mfac_.compute(M);
    if (Mfac_.info() != Eigen::Success) return false;
  }
  if (k_) {
    MinvG_ = Mfac_.solve(prob_.G);
    Sfac_.compute(prob_.G.transpose() * MinvG_);
    if (Sfac_.info() != Eigen::Success) return false;
  }
  return true;
}

Solver::Direction Solver::solve(const Blocks& Rc) const {
  Direction d;
  Blocks T(nb_);
  for (std::size_t bk = 0; bk < nb_; ++bk) {
    const MatrixXd& W = sc_[bk].W;
    T[bk] = Rc[bk] - W * Rd_[bk] * W;
  }
  const VectorXd h = rp_ - apply_A(prob_, T);
  if (k_) {
    const VectorXd Mh = Mfac_.solve(h);
    d.dt = Sfac_.solve(prob_.G.transpose() * Mh - rf_);
    d.dy = Mh - MinvG_ * d.dt;
  } else {
    d.dy = Mfac_.solve(h);
    d.dt = VectorXd();
  }
  const Blocks Ady = apply_At(prob_, d.dy);
  d.dZ.resize(nb_);
  d.dX.resize(nb_);
  for (std::size_t bk = 0; bk < nb_; ++bk) {
    d.dZ[bk] = Rd_[bk] - Ady[bk];
    const MatrixXd& W = sc_[bk].W;
    MatrixXd dX = Rc[bk] - W * d.dZ[bk] * W;
    d.dX[bk] = 0.5 * (dX + dX.transpose());
  }
  return d;
}

SdpSolution Solver::run() {
  double maxA = 0.0;
  double ratio = 1.0;
  for (std::size_t i = 0; i < m_; ++i) {
    double na = 0.0;
    for (const auto& piece : prob_.A[i])
      na += dense_piece(piece.entries, prob_.block_sizes[piece.block]).squaredNorm();
    na = std::sqrt(na);
    maxA = std::max(maxA, na);
    ratio = std::max(ratio, (1.0 + std::abs(prob_.b(i))) / (1.0 + na));
  }
  const double xi = std::max({10.0, std::sqrt(N_), std::sqrt(N_) * ratio});
  const double eta = std::max({10.0, std::sqrt(N_), normC_, maxA});
  X_.clear();
  Z_.clear();
  for (std::size_t bk = 0; bk < nb_; ++bk) {
    const auto s = static_cast<Eigen::Index>(prob_.block_sizes[bk]);
    X_.push_back(xi * MatrixXd::Identity(s, s));
    Z_.push_back(eta * MatrixXd::Identity(s, s));
  }
  y_ = VectorXd::Zero(m_);
  t_ = VectorXd::Zero(k_);

  SdpSolution sol;
  auto finish = [&](SdpStatus st, int it) {
    sol.status = st;
    sol.X = X_;
    sol.Z = Z_;
    sol.y = y_;
    sol.t = t_;
    sol.primal_objective = pobj_;
    sol.dual_objective = dobj_;
    sol.primal_infeasibility = pinf_;
    sol.dual_infeasibility = dinf_;
    sol.relative_gap = gap_;
    sol.iterations = it;
    return sol;
  };

  const double tau = 0.98;
  int stalls = 0;
  for (int it = 0; it < opts_.max_iter; ++it) {
    residuals();
    if (!std::isfinite(mu_) || !std::isfinite(pobj_) || !std::isfinite(dobj_))
      return finish(SdpStatus::max_iter, it);
    if (pinf_ <= opts_.tol && dinf_ <= opts_.tol && gap_ <= opts_.tol)
      return finish(SdpStatus::optimal, it);

    // Rays: a huge iterate whose normalized residual vanishes while its
    // normalized objective stays bounded away from zero.
    double trX = 0.0;
    for (const auto& Xb : X_) trX += Xb.trace();
    const double sizeX = trX + (k_ ? t_.norm() : 0.0);
    if (sizeX > 1e8 * xi) {
      const double ray_obj = pobj_ / sizeX;
      const double ray_res = (prob_.b - rp_).norm() / sizeX;
      if (ray_obj < -1e-8 && ray_res < 1e-6 * (1.0 + maxA)) return finish(SdpStatus::infeasible, it);
    }
    const double sizeY = y_.norm();
    if (sizeY > 1e8 * eta) {
      const double ray_obj = dobj_ / sizeY;
      double worst = 0.0;
      const Blocks Aty = apply_At(prob_, y_);
      for (const auto& Ab : Aty)
        worst = std::max(worst, Eigen::SelfAdjointEigenSolver<MatrixXd>(Ab, Eigen::EigenvaluesOnly)
                                    .eigenvalues()
                                    .maxCoeff());
      const double ray_lin = k_ ? (prob_.G.transpose() * y_).norm() / sizeY : 0.0;
      if (ray_obj > 1e-8 && worst / sizeY < 1e-6 && ray_lin < 1e-6)
        return finish(SdpStatus::unbounded, it);
    }

    if (!factor()) return finish(SdpStatus::max_iter, it);

    Blocks Rc(nb_);
    for (std::size_t bk = 0; bk < nb_; ++bk) Rc[bk] = -X_[bk];
    const Direction pred = solve(Rc);
    double ap = 1.0, ad = 1.0;
    for (std::size_t bk = 0; bk < nb_; ++bk) {
      ap = std::min(ap, max_step(sc_[bk].LX, pred.dX[bk]));
      ad = std::min(ad, max_step(sc_[bk].LZ, pred.dZ[bk]));
    }
    double mu_aff = 0.0;
    for (std::size_t bk = 0; bk < nb_; ++bk)
      mu_aff += (X_[bk] + ap * pred.dX[bk]).cwiseProduct(Z_[bk] + ad * pred.dZ[bk]).sum();
    mu_aff /= N_;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu_, 3.0), 0.0, 1.0);

    for (std::size_t bk = 0; bk < nb_; ++bk) {
      const Scaling& s = sc_[bk];
      const MatrixXd dXt = s.Ginv * pred.dX[bk] * s.Ginv.transpose();
      const MatrixXd dZt = s.G.transpose() * pred.dZ[bk] * s.G;
      const MatrixXd prod = dXt * dZt;
      MatrixXd R = -0.5 * (prod + prod.transpose());
      R.diagonal().array() += sigma * mu_ - s.sigma.array().square();
      MatrixXd S(R.rows(), R.cols());
      for (Eigen::Index i = 0; i < R.rows(); ++i)
        for (Eigen::Index j = 0; j < R.cols(); ++j) S(i, j) = 2.0 * R(i, j) / (s.sigma(i) + s.sigma(j));
      Rc[bk] = s.G * S * s.G.transpose();
    }
    const Direction corr = solve(Rc);
    ap = 1.0;
    ad = 1.0;
    for (std::size_t bk = 0; bk < nb_; ++bk) {
      ap = std::min(ap, tau * max_step(sc_[bk].LX, corr.dX[bk]));
      ad = std::min(ad, tau * max_step(sc_[bk].LZ, corr.dZ[bk]));
    }
    for (std::size_t bk = 0; bk < nb_; ++bk) {
      X_[bk] += ap * corr.dX[bk];
      X_[bk] = 0.5 * (X_[bk] + X_[bk].transpose());
      Z_[bk] += ad * corr.dZ[bk];
      Z_[bk] = 0.5 * (Z_[bk] + Z_[bk].transpose());
    }
    if (k_) t_ += ap * corr.dt;
    y_ += ad * corr.dy;
    stalls = (ap < 1e-10 && ad < 1e-10) ? stalls + 1 : 0;
    if (stalls >= 3) {
      residuals();
      return finish(SdpStatus::max_iter, it + 1);
    }
  }
  residuals();
  return finish(SdpStatus::max_iter, opts_.max_iter);
}

}  // namespace

Eigen::VectorXd apply_A(const SdpProblem& prob, const std::vector<MatrixXd>& X) {
  VectorXd out(prob.num_rows());
  for (std::size_t i = 0; i < prob.num_rows(); ++i) {
    double s = 0.0;
    for (const auto& piece : prob.A[i]) s += piece_inner(piece.entries, X[piece.block]);
    out(i) = s;
  }
  return out;
}

std::vector<MatrixXd> apply_At(const SdpProblem& prob, const VectorXd& y) {
  std::vector<MatrixXd> out;
  for (auto s : prob.block_sizes) out.push_back(MatrixXd::Zero(s, s));
  for (std::size_t i = 0; i < prob.num_rows(); ++i) {
    if (y(i) == 0.0) continue;
    for (const auto& piece : prob.A[i]) {
      MatrixXd& B = out[piece.block];
      for (const auto& e : piece.entries) {
        B(e.row, e.col) += y(i) * e.value;
        if (e.row != e.col) B(e.col, e.row) += y(i) * e.value;
      }
    }
  }
  return out;
}

SdpSolution solve_sdp(const SdpProblem& prob, const SdpOptions& opts) {
  prob.validate();
  if (prob.block_sizes.empty()) throw ValidationError("SDP needs at least one block");
  return Solver(prob, opts).run();
}

}  // namespace psdeg
