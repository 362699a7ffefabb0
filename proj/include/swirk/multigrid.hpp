// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <stdexcept>
#include <vector>

#include "swirk/discretization.hpp"
#include "swirk/krylov.hpp"
#include "swirk/schwarz.hpp"
#include "swirk/util.hpp"

namespace swirk {

struct KrylovConfig {
  int restart = 100;
  int max_iters = 200;
  int smoother_gmres_iters = 2;
  int vcycles = 1;      // V-cycles per preconditioner application
  int pre_smooth = 1;   // smoother applications before coarse correction
  int post_smooth = 1;  // and after
};

/// Monolithic solver for operators living in the stage-major mixed layout on
/// the finest level of a discretization hierarchy: FGMRES preconditioned by a
/// geometric V-cycle whose smoother (and coarse treatment) is the wrapped
/// additive Schwarz kernel. Transfers and patch index sets are built once;
/// set_operator() re-derives the coarse operators by the Galerkin triple
/// product and refactorises the patches for each new fine operator.
class MonolithicMgSolver {
 public:
  MonolithicMgSolver(const Discretization& disc, int finest_level, int stages,
                     KrylovConfig cfg = {}, int threads = 1)
      : disc_(&disc), finest_(finest_level), stages_(stages), cfg_(cfg), threads_(threads) {
    if (finest_level < 0 || finest_level >= disc.n_levels())
      throw std::invalid_argument("MonolithicMgSolver: bad finest level");
    patches_.resize(static_cast<size_t>(finest_level) + 1);
    for (int l = 0; l <= finest_level; ++l)
      patches_[static_cast<size_t>(l)] = extract_patches(disc.level(l), stages);
    transfers_.resize(static_cast<size_t>(finest_level));
    for (int l = 0; l < finest_level; ++l) transfers_[static_cast<size_t>(l)] = expand_transfer(l);
  }

  /// Installs a new fine-level operator: Galerkin coarse operators plus dense
  /// patch factors on every level. Returns seconds spent in (transfer,
  /// factorization).
  std::pair<double, double> set_operator(SpMat a_finest) {
    double t_transfer = 0.0, t_factor = 0.0;
    ops_.assign(static_cast<size_t>(finest_) + 1, SpMat());
    ops_[static_cast<size_t>(finest_)] = std::move(a_finest);
    {
      ScopedTimer timer(t_transfer);
      for (int l = finest_; l > 0; --l) {
        const SpMat& p = transfers_[static_cast<size_t>(l - 1)];
        ops_[static_cast<size_t>(l - 1)] = p.transpose() * ops_[static_cast<size_t>(l)] * p;
      }
    }
    factors_.assign(static_cast<size_t>(finest_) + 1, PatchFactorization());
    {
      ScopedTimer timer(t_factor);
      for (int l = 0; l <= finest_; ++l)
        factors_[static_cast<size_t>(l)].factorize(ops_[static_cast<size_t>(l)], patches_[static_cast<size_t>(l)], threads_);
    }
    return {t_transfer, t_factor};
  }

  const SpMat& op(int level) const { return ops_[static_cast<size_t>(level)]; }
  const SpMat& transfer(int coarse_level) const { return transfers_[static_cast<size_t>(coarse_level)]; }

  /// One V-cycle on the given level: pre-smooth, coarse-correct through the
  /// dual restriction, post-smooth. The coarsest level applies the smoother
  /// instead of a direct solve, so a single-level hierarchy degenerates to
  /// one smoother application.
  Eigen::VectorXd vcycle(int level, const Eigen::VectorXd& r) const {
    const SpMat& a = ops_[static_cast<size_t>(level)];
    const PatchFactorization& f = factors_[static_cast<size_t>(level)];
    if (level == 0) return smoother_apply(a, f, r, cfg_.smoother_gmres_iters, threads_);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(r.size());
    for (int i = 0; i < cfg_.pre_smooth; ++i)
      z += smoother_apply(a, f, r - a * z, cfg_.smoother_gmres_iters, threads_);
    const SpMat& p = transfers_[static_cast<size_t>(level - 1)];
    const Eigen::VectorXd rc = p.transpose() * (r - a * z);
    z += p * vcycle(level - 1, rc);
    for (int i = 0; i < cfg_.post_smooth; ++i)
      z += smoother_apply(a, f, r - a * z, cfg_.smoother_gmres_iters, threads_);
    return z;
  }

  Eigen::VectorXd precondition(const Eigen::VectorXd& r) const {
    if (cfg_.vcycles == 1) return vcycle(finest_, r);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(r.size());
    const SpMat& a = ops_[static_cast<size_t>(finest_)];
    for (int i = 0; i < cfg_.vcycles; ++i) z += vcycle(finest_, r - a * z);
    return z;
  }

  KrylovStats solve(const Eigen::VectorXd& b, double rtol, Eigen::VectorXd& x) const {
    const SpMat& a = ops_[static_cast<size_t>(finest_)];
    auto apply_a = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return a * v; };
    auto apply_m = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return precondition(v); };
    return fgmres(apply_a, apply_m, b, x, rtol, cfg_.max_iters, cfg_.restart);
  }

  int stages() const { return stages_; }
  int finest_level() const { return finest_; }

 private:
  /// Stage- and field-expanded prolongation from level l to l+1.
  SpMat expand_transfer(int l) const {
    const SpMat& pv = disc_->P_V[static_cast<size_t>(l)];
    const SpMat& pq = disc_->P_Q[static_cast<size_t>(l)];
    const int coarse_block = disc_->level(l).n_mixed();
    const int fine_block = disc_->level(l + 1).n_mixed();
    const int nv_coarse = disc_->level(l).n_v();
    const int nv_fine = disc_->level(l + 1).n_v();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(stages_) * static_cast<size_t>(pv.nonZeros() + pq.nonZeros()));
    for (int st = 0; st < stages_; ++st) {
      const int ro = st * fine_block;
      const int co = st * coarse_block;
      for (int k = 0; k < pv.outerSize(); ++k)
        for (SpMat::InnerIterator it(pv, k); it; ++it)
          trips.emplace_back(ro + it.row(), co + it.col(), it.value());
      for (int k = 0; k < pq.outerSize(); ++k)
        for (SpMat::InnerIterator it(pq, k); it; ++it)
          trips.emplace_back(ro + nv_fine + it.row(), co + nv_coarse + it.col(), it.value());
    }
    SpMat p(stages_ * fine_block, stages_ * coarse_block);
    p.setFromTriplets(trips.begin(), trips.end());
    return p;
  }

  const Discretization* disc_;
  int finest_;
  int stages_;
  KrylovConfig cfg_;
  int threads_;
  std::vector<std::vector<Patch>> patches_;
  std::vector<SpMat> transfers_;
  std::vector<SpMat> ops_;
  std::vector<PatchFactorization> factors_;
};

}  // namespace swirk
