// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "swirk/forms.hpp"
#include "swirk/irk.hpp"
#include "swirk/tableaux.hpp"

namespace swirk {

/// Factor-once workspace for the additive Runge-Kutta integrator. The
/// implicit operator M + dt*gamma*L depends only on the parameters and the
/// step size, never on the state, so its sparse LU is computed exactly once
/// per setup; the factorization counter makes that checkable.
class ImexWorkspace {
 public:
  ImexWorkspace(const DiscLevel& level, const SWEParams& params, double dt,
                DoubleButcherTableau tableau = ark2())
      : level_(&level), params_(params), dt_(dt), tab_(std::move(tableau)) {
    if (!(dt > 0.0)) throw std::invalid_argument("ImexWorkspace: dt must be positive");
    op_ = assemble_linear_operator(level, params, dt * tab_.implicit_diagonal);
    lu_.compute(op_);
    if (lu_.info() != Eigen::Success)
      throw std::runtime_error("ImexWorkspace: implicit operator factorization failed");
    ++factorization_count_;
  }

  const DiscLevel& level() const { return *level_; }
  const SWEParams& params() const { return params_; }
  double dt() const { return dt_; }
  const DoubleButcherTableau& tableau() const { return tab_; }
  int factorization_count() const { return factorization_count_; }
  const SpMat& implicit_operator() const { return op_; }

  Eigen::VectorXd solve_implicit(const Eigen::VectorXd& rhs) const { return lu_.solve(rhs); }

 private:
  const DiscLevel* level_;
  SWEParams params_;
  double dt_;
  DoubleButcherTableau tab_;
  SpMat op_;
  Eigen::SparseLU<SpMat> lu_;
  int factorization_count_ = 0;
};

/// One IMEX step. Stage 1 is a bitwise copy of the step state (both first
/// tableau rows are zero); later stages solve the factorised wave system with
/// a right-hand side accumulated from earlier stages' split residuals; the
/// reconstruction solves the velocity mass system iteratively (diagonally
/// preconditioned CG, rtol 1e-8) and the diagonal depth mass directly.
/// stages_out, when given, receives the stage states.
inline std::pair<State, SolveStats> imex_step(const ImexWorkspace& ws, const State& un,
                                              std::vector<State>* stages_out = nullptr) {
  const DiscLevel& L = ws.level();
  const SWEParams& P = ws.params();
  const DoubleButcherTableau& tab = ws.tableau();
  const double dt = ws.dt();
  const int nv = L.n_v();
  const int nq = L.n_q();
  SolveStats stats;

  std::vector<State> y(static_cast<size_t>(tab.s));
  std::vector<Eigen::VectorXd> a_n(static_cast<size_t>(tab.s)), c_n(static_cast<size_t>(tab.s));
  std::vector<Eigen::VectorXd> a_l(static_cast<size_t>(tab.s)), c_l(static_cast<size_t>(tab.s));
  auto eval_splits = [&](int i) {
    ScopedTimer t(stats.t_assembly);
    const size_t is = static_cast<size_t>(i);
    residual_a_nonlinear(L, P, y[is], a_n[is]);
    residual_c_nonlinear(L, P, y[is], c_n[is]);
    residual_a_linear(L, P, y[is], a_l[is]);
    residual_c_linear(L, P, y[is], c_l[is]);
  };

  y[0] = un;
  eval_splits(0);
  for (int i = 1; i < tab.s; ++i) {
    Eigen::VectorXd rhs(nv + nq);
    rhs.head(nv) = L.M_u * un.u;
    rhs.tail(nq) = L.M_D.cwiseProduct(un.D);
    for (int j = 0; j < i; ++j) {
      const size_t js = static_cast<size_t>(j);
      if (tab.A_explicit(i, j) != 0.0) {
        rhs.head(nv) -= dt * tab.A_explicit(i, j) * a_n[js];
        rhs.tail(nq) -= dt * tab.A_explicit(i, j) * c_n[js];
      }
      if (tab.A_implicit(i, j) != 0.0) {
        rhs.head(nv) -= dt * tab.A_implicit(i, j) * a_l[js];
        rhs.tail(nq) -= dt * tab.A_implicit(i, j) * c_l[js];
      }
    }
    Eigen::VectorXd sol;
    {
      ScopedTimer t(stats.t_krylov);
      sol = ws.solve_implicit(rhs);
    }
    const size_t is = static_cast<size_t>(i);
    y[is].u = sol.head(nv);
    y[is].D = sol.tail(nq);
    eval_splits(i);
  }

  Eigen::VectorXd bu = L.M_u * un.u;
  Eigen::VectorXd bd = L.M_D.cwiseProduct(un.D);
  for (int i = 0; i < tab.s; ++i) {
    const size_t is = static_cast<size_t>(i);
    bu -= dt * tab.b[i] * (a_n[is] + a_l[is]);
    bd -= dt * tab.b[i] * (c_n[is] + c_l[is]);
  }
  State next;
  {
    ScopedTimer t(stats.t_krylov);
    const PcgResult mass = pcg_diag(L.M_u, L.M_u_diag, bu, next.u, 1e-8, 500);
    stats.krylov_its += mass.iterations;
    if (!mass.converged) {
      stats.converged = false;
      stats.failure = "velocity mass solve did not converge";
    }
  }
  next.D = bd.cwiseQuotient(L.M_D);
  if (stages_out != nullptr) *stages_out = std::move(y);
  return {std::move(next), std::move(stats)};
}

struct StabilityScan {
  std::vector<double> dts;
  std::vector<bool> stable;
  double max_stable_dt = 0.0;    // largest tested dt that stayed bounded
  double min_unstable_dt = 0.0;  // smallest tested dt that blew up (0 if none)
};

/// Runs n_steps from the given initial state for each candidate dt and flags
/// a run unstable when the velocity or elevation norm exceeds 10x its initial
/// value (or stops being finite).
inline StabilityScan imex_stability_scan(const DiscLevel& level, const SWEParams& params,
                                         const State& initial, const std::vector<double>& dts,
                                         int n_steps = 50) {
  StabilityScan scan;
  scan.dts = dts;
  auto unorm = [&](const State& s) { return std::sqrt(s.u.dot(level.M_u * s.u)); };
  auto enorm = [&](const State& s) {
    const Eigen::VectorXd eta = s.D.array() - params.rest_depth;
    return std::sqrt(eta.dot(level.M_D.cwiseProduct(eta)));
  };
  const double u0 = unorm(initial);
  const double e0 = enorm(initial);
  for (double dt : dts) {
    ImexWorkspace ws(level, params, dt);
    State s = initial;
    bool stable = true;
    for (int step = 0; step < n_steps && stable; ++step) {
      auto [next, stats] = imex_step(ws, s);
      s = std::move(next);
      const double un = unorm(s);
      const double en = enorm(s);
      if (!std::isfinite(un) || !std::isfinite(en) || un > 10.0 * u0 || en > 10.0 * e0)
        stable = false;
    }
    scan.stable.push_back(stable);
    if (stable) scan.max_stable_dt = std::max(scan.max_stable_dt, dt);
    else if (scan.min_unstable_dt == 0.0 || dt < scan.min_unstable_dt)
      scan.min_unstable_dt = dt;
  }
  return scan;
}

}  // namespace swirk
