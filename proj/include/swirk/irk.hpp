// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <string>
#include <vector>

#include "swirk/forms.hpp"
#include "swirk/multigrid.hpp"
#include "swirk/tableaux.hpp"
#include "swirk/util.hpp"

namespace swirk {

/// Spatial residual and frozen-switch Jacobian of one model problem on one
/// level. The nonlinear model wraps the full forms; the linear model wraps
/// the rest-state wave operator and is exact under differentiation, which
/// makes the stage solve a single linear solve.
class ResidualModel {
 public:
  explicit ResidualModel(const DiscLevel& level) : level_(&level) {}
  virtual ~ResidualModel() = default;
  virtual void residual(const State& s, Eigen::VectorXd& ru, Eigen::VectorXd& rc) const = 0;
  virtual AssembledJacobian jacobian(const State& s) const = 0;
  const DiscLevel& level() const { return *level_; }

 private:
  const DiscLevel* level_;
};

class SweModel : public ResidualModel {
 public:
  SweModel(const DiscLevel& level, const SWEParams& params) : ResidualModel(level), params_(params) {}
  void residual(const State& s, Eigen::VectorXd& ru, Eigen::VectorXd& rc) const override {
    residual_a(level(), params_, s, ru);
    residual_c(level(), params_, s, rc);
  }
  AssembledJacobian jacobian(const State& s) const override {
    return assemble_jacobian(level(), params_, s);
  }
  const SWEParams& params() const { return params_; }

 private:
  SWEParams params_;
};

class LinearSweModel : public ResidualModel {
 public:
  LinearSweModel(const DiscLevel& level, const SWEParams& params)
      : ResidualModel(level), params_(params), blocks_(assemble_linear_blocks(level, params)) {}
  void residual(const State& s, Eigen::VectorXd& ru, Eigen::VectorXd& rc) const override {
    ru = blocks_.coriolis * s.u - params_.gravity * (blocks_.grad_div * s.D);
    rc = params_.rest_depth * (blocks_.grad_div.transpose() * s.u);
  }
  AssembledJacobian jacobian(const State&) const override {
    AssembledJacobian j;
    j.a_u = blocks_.coriolis;
    j.a_D = -params_.gravity * blocks_.grad_div;
    j.c_u = params_.rest_depth * SpMat(blocks_.grad_div.transpose());
    j.c_D.resize(level().n_q(), level().n_q());
    return j;
  }
  const SWEParams& params() const { return params_; }

 private:
  SWEParams params_;
  LinearBlocks blocks_;
};

struct NewtonConfig {
  double rtol = 1e-6;
  double atol = 1e-12;
  int max_iters = 30;
  double ew_gamma = 1.0;
  double ew_alpha = 0.5 * (1.0 + std::sqrt(5.0));
  double ew_eta0 = 0.1;
  double ew_eta_max = 0.9;
};

struct SolveStats {
  int newton_its = 0;
  long krylov_its = 0;
  std::vector<double> residual_norms;
  double t_assembly = 0.0;
  double t_patch_factor = 0.0;
  double t_krylov = 0.0;
  double t_transfer = 0.0;
  bool converged = true;
  std::string failure;

  void accumulate(const SolveStats& other) {
    newton_its += other.newton_its;
    krylov_its += other.krylov_its;
    t_assembly += other.t_assembly;
    t_patch_factor += other.t_patch_factor;
    t_krylov += other.t_krylov;
    t_transfer += other.t_transfer;
    if (!other.converged) {
      converged = false;
      if (failure.empty()) failure = other.failure;
    }
  }
};

/// Stage unknowns for an s-stage method, stored stage-major: slice i holds
/// the mixed (velocity, depth) coefficients of stage rate k_i.
using StageVector = Eigen::VectorXd;

inline State stage_state(const DiscLevel& L, const StageVector& k, const State& un, double dt,
                         const ButcherTableau& tab, int stage) {
  const int nv = L.n_v();
  const int nq = L.n_q();
  const int block = nv + nq;
  State s;
  s.u = un.u;
  s.D = un.D;
  for (int j = 0; j < tab.s; ++j) {
    const double w = dt * tab.A(stage, j);
    if (w == 0.0) continue;
    s.u += w * k.segment(j * block, nv);
    s.D += w * k.segment(j * block + nv, nq);
  }
  return s;
}

/// Residual of the coupled stage system: slice i is
/// (M_u k_{u,i} + a(U_i), M_D k_{D,i} + c(U_i)) with U_i the stage state.
inline StageVector stage_residual(const ResidualModel& model, const StageVector& k, const State& un,
                                  double dt, const ButcherTableau& tab) {
  const DiscLevel& L = model.level();
  const int nv = L.n_v();
  const int nq = L.n_q();
  const int block = nv + nq;
  StageVector out(tab.s * block);
  Eigen::VectorXd ru, rc;
  for (int i = 0; i < tab.s; ++i) {
    const State si = stage_state(L, k, un, dt, tab, i);
    model.residual(si, ru, rc);
    out.segment(i * block, nv) = L.M_u * k.segment(i * block, nv) + ru;
    out.segment(i * block + nv, nq) =
        L.M_D.cwiseProduct(k.segment(i * block + nv, nq)) + rc;
  }
  return out;
}

/// Jacobian of the stage system in the stage-major layout: block (i, j) is
/// delta_ij blockdiag(M_u, M_D) + dt A_ij J(U_i), where J is the
/// frozen-switch spatial Jacobian at the row's stage state.
inline SpMat stage_jacobian(const ResidualModel& model, const StageVector& k, const State& un,
                            double dt, const ButcherTableau& tab) {
  const DiscLevel& L = model.level();
  const int nv = L.n_v();
  const int nq = L.n_q();
  const int block = nv + nq;
  std::vector<Triplet> trips;
  for (int i = 0; i < tab.s; ++i) {
    const State si = stage_state(L, k, un, dt, tab, i);
    const AssembledJacobian jac = model.jacobian(si);
    const int ro = i * block;
    for (int c = 0; c < L.M_u.outerSize(); ++c)
      for (SpMat::InnerIterator it(L.M_u, c); it; ++it)
        trips.emplace_back(ro + it.row(), ro + it.col(), it.value());
    for (int c = 0; c < nq; ++c) trips.emplace_back(ro + nv + c, ro + nv + c, L.M_D[c]);
    for (int j = 0; j < tab.s; ++j) {
      const double w = dt * tab.A(i, j);
      if (w == 0.0) continue;
      const int co = j * block;
      for (int c = 0; c < jac.a_u.outerSize(); ++c)
        for (SpMat::InnerIterator it(jac.a_u, c); it; ++it)
          trips.emplace_back(ro + it.row(), co + it.col(), w * it.value());
      for (int c = 0; c < jac.a_D.outerSize(); ++c)
        for (SpMat::InnerIterator it(jac.a_D, c); it; ++it)
          trips.emplace_back(ro + it.row(), co + nv + it.col(), w * it.value());
      for (int c = 0; c < jac.c_u.outerSize(); ++c)
        for (SpMat::InnerIterator it(jac.c_u, c); it; ++it)
          trips.emplace_back(ro + nv + it.row(), co + it.col(), w * it.value());
      for (int c = 0; c < jac.c_D.outerSize(); ++c)
        for (SpMat::InnerIterator it(jac.c_D, c); it; ++it)
          trips.emplace_back(ro + nv + it.row(), co + nv + it.col(), w * it.value());
    }
  }
  SpMat a(tab.s * block, tab.s * block);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

struct NewtonResult {
  StageVector k;
  SolveStats stats;
};

/// Inexact Newton on the stage system with adaptive forcing: the linear
/// tolerance eta_k follows the residual contraction
/// eta_k = gamma (||F_k||/||F_{k-1}||)^alpha, safeguarded from below by
/// gamma eta_{k-1}^alpha whenever that exceeds 0.1, and capped at eta_max.
/// The initial stage guess is zero. Aborts with a NonConvergence report after
/// max_iters or three consecutive residual increases.
inline NewtonResult newton_solve(const ResidualModel& model, const State& un, double dt,
                                 const ButcherTableau& tab, const NewtonConfig& cfg,
                                 MonolithicMgSolver& solver) {
  NewtonResult res;
  const int n = tab.s * model.level().n_mixed();
  res.k = StageVector::Zero(n);
  StageVector f;
  {
    ScopedTimer t(res.stats.t_assembly);
    f = stage_residual(model, res.k, un, dt, tab);
  }
  double fnorm = f.norm();
  const double target = std::max(cfg.rtol * fnorm, cfg.atol);
  res.stats.residual_norms.push_back(fnorm);
  double eta = cfg.ew_eta0;
  double eta_prev = cfg.ew_eta0;
  double fnorm_prev = fnorm;
  int growth_streak = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (fnorm <= target) return res;
    if (it > 0) {
      eta = cfg.ew_gamma * std::pow(fnorm / fnorm_prev, cfg.ew_alpha);
      const double safeguard = cfg.ew_gamma * std::pow(eta_prev, cfg.ew_alpha);
      if (safeguard > 0.1) eta = std::max(eta, safeguard);
    }
    eta = std::min(eta, cfg.ew_eta_max);
    SpMat a;
    {
      ScopedTimer t(res.stats.t_assembly);
      a = stage_jacobian(model, res.k, un, dt, tab);
    }
    const auto [t_transfer, t_factor] = solver.set_operator(std::move(a));
    res.stats.t_transfer += t_transfer;
    res.stats.t_patch_factor += t_factor;
    Eigen::VectorXd delta;
    KrylovStats ks;
    {
      ScopedTimer t(res.stats.t_krylov);
      ks = solver.solve(-f, eta, delta);
    }
    res.stats.krylov_its += ks.iterations;
    if (ks.breakdown) {
      res.stats.converged = false;
      res.stats.failure = "linear solver breakdown";
      return res;
    }
    res.k += delta;
    ++res.stats.newton_its;
    fnorm_prev = fnorm;
    eta_prev = eta;
    {
      ScopedTimer t(res.stats.t_assembly);
      f = stage_residual(model, res.k, un, dt, tab);
    }
    fnorm = f.norm();
    res.stats.residual_norms.push_back(fnorm);
    growth_streak = (fnorm > fnorm_prev) ? growth_streak + 1 : 0;
    if (growth_streak >= 3) {
      res.stats.converged = false;
      res.stats.failure = "newton divergence";
      return res;
    }
  }
  if (fnorm > target) {
    res.stats.converged = false;
    res.stats.failure = "newton max iterations";
  }
  return res;
}

/// One implicit Runge-Kutta step: U^{n+1} = U^n + dt sum_i b_i k_i.
inline std::pair<State, SolveStats> irk_step(const ResidualModel& model, const State& un, double dt,
                                             const ButcherTableau& tab, const NewtonConfig& cfg,
                                             MonolithicMgSolver& solver) {
  NewtonResult nr = newton_solve(model, un, dt, tab, cfg, solver);
  const DiscLevel& L = model.level();
  const int nv = L.n_v();
  const int nq = L.n_q();
  const int block = nv + nq;
  State next;
  next.u = un.u;
  next.D = un.D;
  for (int i = 0; i < tab.s; ++i) {
    next.u += dt * tab.b[i] * nr.k.segment(i * block, nv);
    next.D += dt * tab.b[i] * nr.k.segment(i * block + nv, nq);
  }
  return {std::move(next), std::move(nr.stats)};
}

}  // namespace swirk
