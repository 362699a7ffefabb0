// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <memory>
#include <vector>

#include "swirk/fespace.hpp"
#include "swirk/mesh.hpp"
#include "swirk/quadrature.hpp"

namespace swirk {

/// Per-cell quadrature tabulation of the H(div) basis. Gradients and
/// divergences are constant per basis function because the element is linear.
struct CellTab {
  std::array<Vec3, 6> xq;
  std::array<double, 6> wdet;
  std::array<double, 6> sinlat;  // z/|x| at the quadrature point
  std::array<std::array<Vec3, 6>, 6> val;  // [qpoint][basis]
  std::array<Eigen::Matrix3d, 6> grad;     // [basis]
  std::array<double, 6> div;               // [basis]
  std::array<int, 6> vdof;
};

/// Per-edge trace tabulation. Side 0 is the cell whose boundary traversal
/// matches the global edge direction (edge_cells[e][0]); its outward in-plane
/// normal defines the signed facet flux. fluxb tabulates the normal trace of
/// the edge's own two dofs, which is the complete flux basis since every
/// other basis function has vanishing normal component on this edge.
struct EdgeTab {
  int cm = -1, cp = -1;
  double len = 0.0;
  Vec3 tangent = Vec3::Zero();
  std::array<Vec3, 3> xq;
  std::array<std::array<Vec3, 6>, 3> trace_m, trace_p;  // [qpoint][basis]
  std::array<std::array<double, 2>, 3> fluxb;           // [qpoint][edge dof]
  std::array<int, 6> vdof_m, vdof_p;
};

/// Everything one mesh level contributes to assembly: spaces, quadrature
/// tabulations and mass matrices. Not copyable once built (the spaces point
/// back into this object).
struct DiscLevel {
  const MeshLevel* mesh = nullptr;
  CellGeometry geom;
  FunctionSpace V, Q;
  std::vector<CellTab> cells;
  std::vector<EdgeTab> edges;
  SpMat M_u;
  Eigen::VectorXd M_u_diag;
  Eigen::VectorXd M_D;  // diagonal (cell areas)

  int n_v() const { return V.n_dofs; }
  int n_q() const { return Q.n_dofs; }
  int n_mixed() const { return V.n_dofs + Q.n_dofs; }
};

namespace detail {

inline void tabulate(DiscLevel& L) {
  const MeshLevel& mesh = *L.mesh;
  const TriangleRule& cr = TriangleRule::degree4();
  const EdgeRule& er = EdgeRule::gauss3();
  L.cells.resize(static_cast<size_t>(mesh.n_cells()));
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellTab& t = L.cells[static_cast<size_t>(c)];
    const size_t cc = static_cast<size_t>(c);
    const Vec3 p0 = mesh.vertices[static_cast<size_t>(mesh.cells[cc][0])];
    for (int q = 0; q < 6; ++q) {
      const size_t qq = static_cast<size_t>(q);
      t.xq[qq] = p0 + L.geom.jac[cc] * cr.points[qq];
      t.wdet[qq] = cr.weights[qq] * L.geom.det[cc];
      t.sinlat[qq] = t.xq[qq].z() / t.xq[qq].norm();
      for (int j = 0; j < 6; ++j) t.val[qq][static_cast<size_t>(j)] = L.V.basis_value(c, j, cr.points[qq]);
    }
    for (int j = 0; j < 6; ++j) {
      t.grad[static_cast<size_t>(j)] = L.V.basis_gradient(c, j);
      t.div[static_cast<size_t>(j)] = L.V.basis_divergence(c, j);
      t.vdof[static_cast<size_t>(j)] = L.V.cell_dof(c, j);
    }
  }
  L.edges.resize(static_cast<size_t>(mesh.n_edges()));
  for (int e = 0; e < mesh.n_edges(); ++e) {
    EdgeTab& t = L.edges[static_cast<size_t>(e)];
    const size_t ee = static_cast<size_t>(e);
    t.cm = mesh.edge_cells[ee][0];
    t.cp = mesh.edge_cells[ee][1];
    t.len = L.geom.edge_length[ee];
    t.tangent = L.geom.edge_tangent[ee];
    const int g0 = mesh.edges[ee][0];
    const Vec3 y0 = mesh.vertices[static_cast<size_t>(g0)];
    const Vec3 y1 = mesh.vertices[static_cast<size_t>(mesh.edges[ee][1])];
    for (int q = 0; q < 3; ++q)
      t.xq[static_cast<size_t>(q)] = (1.0 - er.points[static_cast<size_t>(q)]) * y0 + er.points[static_cast<size_t>(q)] * y1;
    for (int side = 0; side < 2; ++side) {
      const int c = (side == 0) ? t.cm : t.cp;
      const size_t cc = static_cast<size_t>(c);
      int le = -1;
      for (int i = 0; i < 3; ++i)
        if (mesh.cell_edges[cc][static_cast<size_t>(i)] == e) le = i;
      const int a_loc = (le + 1) % 3;
      const int b_loc = (le + 2) % 3;
      const bool forward = mesh.cells[cc][static_cast<size_t>(a_loc)] == g0;
      auto& trace = (side == 0) ? t.trace_m : t.trace_p;
      auto& vdof = (side == 0) ? t.vdof_m : t.vdof_p;
      for (int j = 0; j < 6; ++j) vdof[static_cast<size_t>(j)] = L.V.cell_dof(c, j);
      for (int q = 0; q < 3; ++q) {
        const double s = er.points[static_cast<size_t>(q)];
        const double tl = forward ? s : 1.0 - s;
        const Eigen::Vector2d xhat =
            Bdm1Reference::vertex(a_loc) + tl * (Bdm1Reference::vertex(b_loc) - Bdm1Reference::vertex(a_loc));
        for (int j = 0; j < 6; ++j)
          trace[static_cast<size_t>(q)][static_cast<size_t>(j)] = L.V.basis_value(c, j, xhat);
      }
      if (side == 0) {
        const Vec3 nout = t.tangent.cross(L.geom.normal[cc]);
        for (int q = 0; q < 3; ++q)
          for (int m = 0; m < 2; ++m) {
            int ld = -1;
            for (int j = 0; j < 6; ++j)
              if (t.vdof_m[static_cast<size_t>(j)] == 2 * e + m) ld = j;
            t.fluxb[static_cast<size_t>(q)][static_cast<size_t>(m)] =
                t.trace_m[static_cast<size_t>(q)][static_cast<size_t>(ld)].dot(nout);
          }
      }
    }
  }
}

}  // namespace detail

inline std::unique_ptr<DiscLevel> build_disc_level(const MeshLevel& mesh) {
  auto L = std::make_unique<DiscLevel>();
  L->mesh = &mesh;
  L->geom = compute_geometry(mesh);
  L->V = build_space(mesh, L->geom, Family::HdivBdm1);
  L->Q = build_space(mesh, L->geom, Family::Dg0);
  detail::tabulate(*L);
  L->M_u = assemble_mass(L->V);
  L->M_u_diag = L->M_u.diagonal();
  L->M_D = Eigen::Map<const Eigen::VectorXd>(L->geom.area.data(), mesh.n_cells());
  return L;
}

/// Mesh hierarchy plus per-level spaces and the intergrid transfer matrices
/// between consecutive levels.
struct Discretization {
  MeshHierarchy hier;
  std::vector<std::unique_ptr<DiscLevel>> levels;
  std::vector<SpMat> P_V, P_Q;  // index l: coefficients on level l -> level l+1

  int n_levels() const { return static_cast<int>(levels.size()); }
  const DiscLevel& finest() const { return *levels.back(); }
  const DiscLevel& level(int l) const { return *levels[static_cast<size_t>(l)]; }
};

inline Discretization build_discretization(int n_levels, double radius) {
  Discretization d;
  d.hier = build_hierarchy(n_levels, radius);
  d.levels.reserve(static_cast<size_t>(n_levels));
  for (int l = 0; l < n_levels; ++l) d.levels.push_back(build_disc_level(d.hier.levels[static_cast<size_t>(l)]));
  for (int l = 0; l + 1 < n_levels; ++l) {
    d.P_V.push_back(prolongation(d.hier, l, d.levels[static_cast<size_t>(l)]->V, d.levels[static_cast<size_t>(l + 1)]->V));
    d.P_Q.push_back(prolongation(d.hier, l, d.levels[static_cast<size_t>(l)]->Q, d.levels[static_cast<size_t>(l + 1)]->Q));
  }
  return d;
}

}  // namespace swirk
