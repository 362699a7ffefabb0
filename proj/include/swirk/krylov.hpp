// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace swirk {

struct KrylovStats {
  int iterations = 0;
  bool converged = false;
  bool breakdown = false;
  std::vector<double> residuals;  // true residual norms, one per iteration
};

/// Right-preconditioned flexible GMRES with modified Gram-Schmidt and Givens
/// rotations. The preconditioner may be nonlinear in its input (it is applied
/// once per iteration and its outputs are stored), which is what makes the
/// method flexible. Solves A x = b to ||b - A x|| <= rtol ||b||.
template <class Op, class Precond>
KrylovStats fgmres(const Op& apply_A, const Precond& apply_M, const Eigen::VectorXd& b,
                   Eigen::VectorXd& x, double rtol, int maxit, int restart) {
  if (restart < 1) throw std::invalid_argument("fgmres: restart must be >= 1");
  const int n = static_cast<int>(b.size());
  KrylovStats stats;
  x.setZero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    stats.converged = true;
    return stats;
  }
  const double tol = rtol * bnorm;
  Eigen::VectorXd r = b;  // residual of the zero initial guess
  std::vector<Eigen::VectorXd> v(static_cast<size_t>(restart) + 1);
  std::vector<Eigen::VectorXd> z(static_cast<size_t>(restart));
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(restart + 1, restart);
  Eigen::VectorXd cs(restart), sn(restart), g(restart + 1);

  while (stats.iterations < maxit) {
    double beta = r.norm();
    if (beta <= tol) {
      stats.converged = true;
      return stats;
    }
    v[0] = r / beta;
    g.setZero();
    g[0] = beta;
    int j = 0;
    for (; j < restart && stats.iterations < maxit; ++j) {
      const size_t js = static_cast<size_t>(j);
      z[js] = apply_M(v[js]);
      Eigen::VectorXd w = apply_A(z[js]);
      for (int i = 0; i <= j; ++i) {
        h(i, j) = w.dot(v[static_cast<size_t>(i)]);
        w -= h(i, j) * v[static_cast<size_t>(i)];
      }
      h(j + 1, j) = w.norm();
      if (!std::isfinite(h(j + 1, j))) {
        stats.breakdown = true;
        return stats;
      }
      const bool happy = h(j + 1, j) <= 1e-14 * bnorm;
      if (!happy) v[js + 1] = w / h(j + 1, j);
      for (int i = 0; i < j; ++i) {
        const double tmp = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = tmp;
      }
      const double denom = std::hypot(h(j, j), h(j + 1, j));
      if (denom == 0.0) {
        stats.breakdown = true;
        return stats;
      }
      cs[j] = h(j, j) / denom;
      sn[j] = h(j + 1, j) / denom;
      h(j, j) = denom;
      h(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      ++stats.iterations;
      stats.residuals.push_back(std::abs(g[j + 1]));
      if (std::abs(g[j + 1]) <= tol || happy) {
        ++j;
        break;
      }
    }
    // back substitution and update
    Eigen::VectorXd y(j);
    for (int i = j - 1; i >= 0; --i) {
      double acc = g[i];
      for (int k = i + 1; k < j; ++k) acc -= h(i, k) * y[k];
      y[i] = acc / h(i, i);
    }
    for (int i = 0; i < j; ++i) x += y[i] * z[static_cast<size_t>(i)];
    r = b - apply_A(x);
    if (r.norm() <= tol) {
      stats.converged = true;
      return stats;
    }
  }
  return stats;
}

/// Fixed-count right-preconditioned GMRES from a zero initial guess: the
/// smoothing kernel. Runs exactly `iters` Arnoldi steps (fewer on a happy
/// breakdown) and returns the minimiser over the generated subspace; there is
/// no tolerance test.
template <class Op, class Precond>
Eigen::VectorXd gmres_fixed(const Op& apply_A, const Precond& apply_M, const Eigen::VectorXd& b,
                            int iters) {
  const int n = static_cast<int>(b.size());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double beta0 = b.norm();
  if (beta0 == 0.0) return x;
  std::vector<Eigen::VectorXd> v(static_cast<size_t>(iters) + 1);
  std::vector<Eigen::VectorXd> z(static_cast<size_t>(iters));
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(iters + 1, iters);
  v[0] = b / beta0;
  int m = 0;
  for (int j = 0; j < iters; ++j) {
    const size_t js = static_cast<size_t>(j);
    z[js] = apply_M(v[js]);
    Eigen::VectorXd w = apply_A(z[js]);
    for (int i = 0; i <= j; ++i) {
      h(i, j) = w.dot(v[static_cast<size_t>(i)]);
      w -= h(i, j) * v[static_cast<size_t>(i)];
    }
    h(j + 1, j) = w.norm();
    m = j + 1;
    if (h(j + 1, j) <= 1e-14 * beta0) break;
    v[js + 1] = w / h(j + 1, j);
  }
  // least squares min || beta0 e1 - H y || over the m columns generated
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs[0] = beta0;
  const Eigen::VectorXd y =
      h.topLeftCorner(m + 1, m).colPivHouseholderQr().solve(rhs);
  for (int i = 0; i < m; ++i) x += y[i] * z[static_cast<size_t>(i)];
  return x;
}

struct PcgResult {
  int iterations = 0;
  bool converged = false;
};

/// Diagonally preconditioned conjugate gradients for SPD systems (used for
/// the velocity mass solves).
inline PcgResult pcg_diag(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& diag,
                          const Eigen::VectorXd& b, Eigen::VectorXd& x, double rtol, int maxit) {
  PcgResult res;
  const double bnorm = b.norm();
  x.setZero(b.size());
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  Eigen::VectorXd r = b;
  Eigen::VectorXd zv = r.cwiseQuotient(diag);
  Eigen::VectorXd p = zv;
  double rz = r.dot(zv);
  for (int it = 0; it < maxit; ++it) {
    const Eigen::VectorXd ap = A * p;
    const double alpha = rz / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    ++res.iterations;
    if (r.norm() <= rtol * bnorm) {
      res.converged = true;
      return res;
    }
    zv = r.cwiseQuotient(diag);
    const double rz_new = r.dot(zv);
    p = zv + (rz_new / rz) * p;
    rz = rz_new;
  }
  return res;
}

}  // namespace swirk
