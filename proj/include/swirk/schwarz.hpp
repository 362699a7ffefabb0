// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "swirk/discretization.hpp"
#include "swirk/krylov.hpp"
#include "swirk/util.hpp"

namespace swirk {

/// One vertex-star subspace: all stage copies of the mixed dofs interior to
/// the star. For the lowest-order pair that is both normal moments of every
/// spoke edge and the cell dof of every star cell; dofs on the star boundary
/// are excluded. Dof order: stage-major, spoke edges in ring order, then
/// cells in ring order.
struct Patch {
  int vertex = -1;
  std::vector<int> cells;
  std::vector<int> dofs;  // global indices in the stage-major mixed layout
};

namespace detail {

inline int find_edge(const MeshLevel& m, int cell, int a, int b) {
  for (int i = 0; i < 3; ++i) {
    const int e = m.cell_edges[static_cast<size_t>(cell)][static_cast<size_t>(i)];
    const auto& ev = m.edges[static_cast<size_t>(e)];
    if ((ev[0] == a && ev[1] == b) || (ev[0] == b && ev[1] == a)) return e;
  }
  throw std::logic_error("find_edge: edge not in cell");
}

}  // namespace detail

/// One patch per mesh vertex, deterministic dof lists.
inline std::vector<Patch> extract_patches(const DiscLevel& L, int stages) {
  const MeshLevel& mesh = *L.mesh;
  const int nv = L.n_v();
  const int block = L.n_mixed();
  std::vector<Patch> patches(static_cast<size_t>(mesh.n_vertices()));
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const VertexStar star = vertex_star_with_ring(mesh, v);
    Patch& p = patches[static_cast<size_t>(v)];
    p.vertex = v;
    p.cells = star.cells;
    std::vector<int> spokes;
    spokes.reserve(star.ring.size());
    for (size_t i = 0; i < star.ring.size(); ++i)
      spokes.push_back(detail::find_edge(mesh, star.cells[i], v, star.ring[i]));
    p.dofs.reserve(static_cast<size_t>(stages) * (2 * spokes.size() + star.cells.size()));
    for (int st = 0; st < stages; ++st) {
      const int off = st * block;
      for (int e : spokes) {
        p.dofs.push_back(off + 2 * e);
        p.dofs.push_back(off + 2 * e + 1);
      }
      for (int c : star.cells) p.dofs.push_back(off + nv + c);
    }
  }
  return patches;
}

/// Dense LU factors of the patch submatrices of one assembled operator. The
/// factors are only valid for the operator they were extracted from and are
/// rebuilt whenever it changes.
class PatchFactorization {
 public:
  PatchFactorization() = default;

  /// Extracts and factorises every patch submatrix. Throws if a patch pivot
  /// falls below 1e-14 of the largest entry, which signals a degenerate
  /// operator.
  void factorize(const SpMat& a, const std::vector<Patch>& patches, int threads) {
    patches_ = &patches;
    lu_.resize(patches.size());
    const int n = static_cast<int>(patches.size());
    parallel_for_chunks(n, threads, [&](int begin, int end) {
      for (int p = begin; p < end; ++p) factor_one(a, p);
    });
  }

  /// Additive Schwarz application: z = sum_l R_l^T A_l^{-1} R_l r. Patch
  /// solves are independent; the scatter-add runs in patch order so the
  /// result does not depend on the worker count.
  Eigen::VectorXd apply(const Eigen::VectorXd& r, int threads) const {
    std::vector<Eigen::VectorXd> local(patches_->size());
    const int n = static_cast<int>(patches_->size());
    parallel_for_chunks(n, threads, [&](int begin, int end) {
      for (int p = begin; p < end; ++p) {
        const Patch& patch = (*patches_)[static_cast<size_t>(p)];
        Eigen::VectorXd rl(patch.dofs.size());
        for (size_t i = 0; i < patch.dofs.size(); ++i) rl[static_cast<Eigen::Index>(i)] = r[patch.dofs[i]];
        local[static_cast<size_t>(p)] = lu_[static_cast<size_t>(p)].solve(rl);
      }
    });
    Eigen::VectorXd z = Eigen::VectorXd::Zero(r.size());
    for (size_t p = 0; p < patches_->size(); ++p) {
      const Patch& patch = (*patches_)[p];
      for (size_t i = 0; i < patch.dofs.size(); ++i) z[patch.dofs[i]] += local[p][static_cast<Eigen::Index>(i)];
    }
    return z;
  }

 private:
  void factor_one(const SpMat& a, int p) {
    const Patch& patch = (*patches_)[static_cast<size_t>(p)];
    const int m = static_cast<int>(patch.dofs.size());
    // sorted lookup from global row index to local patch slot
    std::vector<std::pair<int, int>> sorted(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) sorted[static_cast<size_t>(i)] = {patch.dofs[static_cast<size_t>(i)], i};
    std::sort(sorted.begin(), sorted.end());
    Eigen::MatrixXd sub = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      const int col = patch.dofs[static_cast<size_t>(j)];
      for (SpMat::InnerIterator it(a, col); it; ++it) {
        auto pos = std::lower_bound(sorted.begin(), sorted.end(), std::make_pair(static_cast<int>(it.row()), -1));
        if (pos != sorted.end() && pos->first == it.row()) sub(pos->second, j) = it.value();
      }
    }
    const double scale = sub.cwiseAbs().maxCoeff();
    lu_[static_cast<size_t>(p)].compute(sub);
    const double min_pivot = lu_[static_cast<size_t>(p)].matrixLU().diagonal().cwiseAbs().minCoeff();
    if (scale == 0.0 || min_pivot < 1e-14 * scale)
      throw std::runtime_error("patch factorization: singular patch matrix (degenerate operator)");
  }

  const std::vector<Patch>* patches_ = nullptr;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
};

/// Smoother kernel: two GMRES iterations on A z = r from a zero guess, right
/// preconditioned by the additive Schwarz sum. The wrapping GMRES selects the
/// Schwarz scaling adaptively, at the price of making the smoother depend
/// nonlinearly on r (hence the flexible outer method).
inline Eigen::VectorXd smoother_apply(const SpMat& a, const PatchFactorization& factors,
                                      const Eigen::VectorXd& r, int gmres_iters, int threads) {
  auto apply_a = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a * x; };
  auto apply_m = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return factors.apply(x, threads); };
  return gmres_fixed(apply_a, apply_m, r, gmres_iters);
}

}  // namespace swirk
