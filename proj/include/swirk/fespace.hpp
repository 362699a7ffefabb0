// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <functional>
#include <stdexcept>
#include <vector>

#include "swirk/mesh.hpp"
#include "swirk/quadrature.hpp"

namespace swirk {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

enum class Family { HdivBdm1, Dg0 };

/// Degree-1 Brezzi-Douglas-Marini element on the unit triangle: the full
/// 6-dimensional space of linear vector polynomials. Local dofs are, per edge
/// (numbered opposite its vertex, traversed v_{i+1} -> v_{i+2}), the constant
/// and first Legendre moments of the normal trace. The dual basis is obtained
/// by inverting the moment matrix once at startup.
class Bdm1Reference {
 public:
  static const Bdm1Reference& instance() {
    static const Bdm1Reference ref;
    return ref;
  }

  Eigen::Vector2d value(int dof, const Eigen::Vector2d& x) const {
    const auto& c = coef_.col(dof);
    return {c[0] + c[1] * x.x() + c[2] * x.y(), c[3] + c[4] * x.x() + c[5] * x.y()};
  }
  /// d(value_a)/d(xhat_b), constant over the cell.
  Eigen::Matrix2d gradient(int dof) const {
    const auto& c = coef_.col(dof);
    Eigen::Matrix2d g;
    g << c[1], c[2], c[4], c[5];
    return g;
  }
  double divergence(int dof) const {
    const auto& c = coef_.col(dof);
    return c[1] + c[5];
  }

  /// Reference vertices and edge data used for trace evaluation.
  static Eigen::Vector2d vertex(int i) {
    static const Eigen::Vector2d v[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    return v[i];
  }

 private:
  Bdm1Reference() {
    Eigen::Matrix<double, 6, 6> moments;
    const EdgeRule& rule = EdgeRule::gauss3();
    for (int e = 0; e < 3; ++e) {
      const Eigen::Vector2d a = vertex((e + 1) % 3);
      const Eigen::Vector2d b = vertex((e + 2) % 3);
      const Eigen::Vector2d d = b - a;
      const double len = d.norm();
      const Eigen::Vector2d n(d.y() / len, -d.x() / len);  // outward for ccw triangle
      for (int m = 0; m < 2; ++m) {
        for (int k = 0; k < 6; ++k) {
          double acc = 0.0;
          for (int q = 0; q < 3; ++q) {
            const double t = rule.points[q];
            const Eigen::Vector2d x = a + t * d;
            const double mono = (k % 3 == 0) ? 1.0 : ((k % 3 == 1) ? x.x() : x.y());
            const Eigen::Vector2d v = (k < 3) ? Eigen::Vector2d(mono, 0.0) : Eigen::Vector2d(0.0, mono);
            const double weight = (m == 0) ? 1.0 : (2.0 * t - 1.0);
            acc += rule.weights[q] * v.dot(n) * weight * len;
          }
          moments(2 * e + m, k) = acc;
        }
      }
    }
    coef_ = moments.fullPivLu().inverse();
  }

  // coef_.col(j) holds the monomial coefficients (1, x, y) x (vx, vy) of the
  // basis function dual to functional j.
  Eigen::Matrix<double, 6, 6> coef_;
};

/// Dof layout of one field over one mesh level.
///
/// HdivBdm1: two dofs per edge, global indices 2e and 2e+1 for the constant
/// and linear normal moments of edge e. The sign convention ties the constant
/// moment to the global edge direction: within a cell whose boundary
/// traversal opposes it, that dof picks up a -1; the linear moment needs no
/// flip because its Legendre weight reverses together with the traversal.
///
/// Dg0: one dof per cell.
struct FunctionSpace {
  const MeshLevel* mesh = nullptr;
  const CellGeometry* geom = nullptr;
  Family family = Family::Dg0;
  int n_dofs = 0;

  int local_size() const { return family == Family::HdivBdm1 ? 6 : 1; }

  int cell_dof(int cell, int i) const {
    if (family == Family::Dg0) return cell;
    const int e = mesh->cell_edges[static_cast<size_t>(cell)][static_cast<size_t>(i / 2)];
    return 2 * e + (i % 2);
  }

  double cell_sign(int cell, int i) const {
    if (family == Family::Dg0 || (i % 2) == 1) return 1.0;
    return static_cast<double>(mesh->cell_edge_signs[static_cast<size_t>(cell)][static_cast<size_t>(i / 2)]);
  }

  /// Physical basis value by the contravariant Piola map, including the dof
  /// sign. Only valid for HdivBdm1.
  Vec3 basis_value(int cell, int i, const Eigen::Vector2d& xhat) const {
    const Eigen::Vector2d ref = Bdm1Reference::instance().value(i, xhat);
    const size_t c = static_cast<size_t>(cell);
    return cell_sign(cell, i) / geom->det[c] * (geom->jac[c] * ref);
  }

  /// In-plane physical gradient (3x3, rows = components, cols = directions).
  Eigen::Matrix3d basis_gradient(int cell, int i) const {
    const Eigen::Matrix2d gref = Bdm1Reference::instance().gradient(i);
    const size_t c = static_cast<size_t>(cell);
    return cell_sign(cell, i) / geom->det[c] * (geom->jac[c] * gref * geom->jac_pinv[c]);
  }

  double basis_divergence(int cell, int i) const {
    const size_t c = static_cast<size_t>(cell);
    return cell_sign(cell, i) * Bdm1Reference::instance().divergence(i) / geom->det[c];
  }
};

inline FunctionSpace build_space(const MeshLevel& mesh, const CellGeometry& geom, Family family) {
  FunctionSpace s;
  s.mesh = &mesh;
  s.geom = &geom;
  s.family = family;
  switch (family) {
    case Family::HdivBdm1: s.n_dofs = 2 * mesh.n_edges(); break;
    case Family::Dg0: s.n_dofs = mesh.n_cells(); break;
    default: throw std::invalid_argument("build_space: unknown family");
  }
  return s;
}

/// Evaluates a Dg0 field at a point of a cell given in barycentric
/// coordinates (the value is constant over the cell).
inline double evaluate_scalar(const FunctionSpace& q, const Eigen::VectorXd& coeffs, int cell,
                              const Vec3& /*bary*/) {
  if (q.family != Family::Dg0) throw std::invalid_argument("evaluate_scalar: not a scalar space");
  if (cell < 0 || cell >= q.mesh->n_cells()) throw std::out_of_range("evaluate_scalar: cell index");
  return coeffs[cell];
}

/// Evaluates an H(div) field at a point of a cell given in barycentric
/// coordinates. The result lies in the flat cell's plane.
inline Vec3 evaluate_vector(const FunctionSpace& v, const Eigen::VectorXd& coeffs, int cell,
                            const Vec3& bary) {
  if (v.family != Family::HdivBdm1) throw std::invalid_argument("evaluate_vector: not a vector space");
  if (cell < 0 || cell >= v.mesh->n_cells()) throw std::out_of_range("evaluate_vector: cell index");
  const Eigen::Vector2d xhat(bary[1], bary[2]);
  Vec3 out = Vec3::Zero();
  for (int i = 0; i < 6; ++i) out += coeffs[v.cell_dof(cell, i)] * v.basis_value(cell, i, xhat);
  return out;
}

/// L2 mass matrix. Dg0 mass is diagonal with the cell areas.
inline SpMat assemble_mass(const FunctionSpace& s) {
  const MeshLevel& mesh = *s.mesh;
  SpMat m(s.n_dofs, s.n_dofs);
  std::vector<Triplet> trips;
  if (s.family == Family::Dg0) {
    trips.reserve(static_cast<size_t>(mesh.n_cells()));
    for (int c = 0; c < mesh.n_cells(); ++c)
      trips.emplace_back(c, c, s.geom->area[static_cast<size_t>(c)]);
  } else {
    const TriangleRule& rule = TriangleRule::degree4();
    trips.reserve(static_cast<size_t>(mesh.n_cells()) * 36);
    for (int c = 0; c < mesh.n_cells(); ++c) {
      Eigen::Matrix<double, 6, 6> local = Eigen::Matrix<double, 6, 6>::Zero();
      for (size_t qp = 0; qp < rule.points.size(); ++qp) {
        std::array<Vec3, 6> vals;
        for (int i = 0; i < 6; ++i) vals[static_cast<size_t>(i)] = s.basis_value(c, i, rule.points[qp]);
        const double w = rule.weights[qp] * s.geom->det[static_cast<size_t>(c)];
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j)
            local(i, j) += w * vals[static_cast<size_t>(i)].dot(vals[static_cast<size_t>(j)]);
      }
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          trips.emplace_back(s.cell_dof(c, i), s.cell_dof(c, j), local(i, j));
    }
  }
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

/// L2 projection of an analytic scalar field into Dg0.
inline Eigen::VectorXd project_scalar(const FunctionSpace& q, const std::function<double(const Vec3&)>& f) {
  if (q.family != Family::Dg0) throw std::invalid_argument("project_scalar: not a scalar space");
  const MeshLevel& mesh = *q.mesh;
  const TriangleRule& rule = TriangleRule::degree4();
  Eigen::VectorXd out(q.n_dofs);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const size_t cc = static_cast<size_t>(c);
    const Vec3 p0 = mesh.vertices[static_cast<size_t>(mesh.cells[cc][0])];
    double acc = 0.0;
    for (size_t qp = 0; qp < rule.points.size(); ++qp) {
      const Vec3 x = p0 + q.geom->jac[cc] * rule.points[qp];
      acc += rule.weights[qp] * q.geom->det[cc] * f(x);
    }
    out[c] = acc / q.geom->area[cc];
  }
  return out;
}

/// L2 projection of an analytic tangent field into the H(div) space: solves
/// M x = b with b_i = <basis_i, f> by quadrature. Throws if the mass solve
/// fails, which would signal a broken assembly.
inline Eigen::VectorXd project_vector(const FunctionSpace& v, const std::function<Vec3(const Vec3&)>& f) {
  if (v.family != Family::HdivBdm1) throw std::invalid_argument("project_vector: not a vector space");
  const MeshLevel& mesh = *v.mesh;
  const TriangleRule& rule = TriangleRule::degree4();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(v.n_dofs);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const size_t cc = static_cast<size_t>(c);
    const Vec3 p0 = mesh.vertices[static_cast<size_t>(mesh.cells[cc][0])];
    for (size_t qp = 0; qp < rule.points.size(); ++qp) {
      const Vec3 x = p0 + v.geom->jac[cc] * rule.points[qp];
      const Vec3 fx = f(x);
      const double w = rule.weights[qp] * v.geom->det[cc];
      for (int i = 0; i < 6; ++i)
        b[v.cell_dof(c, i)] += w * fx.dot(v.basis_value(c, i, rule.points[qp]));
    }
  }
  SpMat m = assemble_mass(v);
  Eigen::SimplicialLDLT<SpMat> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("project_vector: singular mass matrix");
  return solver.solve(b);
}

/// Intergrid prolongation between consecutive levels of the same family.
/// P maps coarse coefficients to the coefficients of the same function on
/// the fine space, computed in the flattened refinement geometry where each
/// child cell is an exact subset of its parent.
inline SpMat prolongation(const MeshHierarchy& h, int coarse_level, const FunctionSpace& coarse,
                          const FunctionSpace& fine) {
  if (coarse.family != fine.family)
    throw std::invalid_argument("prolongation: family mismatch");
  const int fine_level = coarse_level + 1;
  if (coarse_level < 0 || fine_level >= h.n_levels() ||
      coarse.mesh != &h.levels[static_cast<size_t>(coarse_level)] ||
      fine.mesh != &h.levels[static_cast<size_t>(fine_level)])
    throw std::invalid_argument("prolongation: spaces are not on consecutive hierarchy levels");
  const RefinementMaps& maps = h.maps[static_cast<size_t>(coarse_level)];
  const MeshLevel& fm = *fine.mesh;

  SpMat p(fine.n_dofs, coarse.n_dofs);
  std::vector<Triplet> trips;
  if (coarse.family == Family::Dg0) {
    for (int fc = 0; fc < fm.n_cells(); ++fc)
      trips.emplace_back(fc, maps.cell_parent[static_cast<size_t>(fc)], 1.0);
    p.setFromTriplets(trips.begin(), trips.end());
    return p;
  }

  const std::vector<Vec3> flat = flattened_vertices(h, fine_level);
  const CellGeometry flat_geom = compute_geometry(fm, &flat);
  const MeshLevel& cm = *coarse.mesh;
  const EdgeRule& rule = EdgeRule::gauss3();
  for (int fe = 0; fe < fm.n_edges(); ++fe) {
    const size_t fee = static_cast<size_t>(fe);
    const int owner = fm.edge_cells[fee][0];  // fine cell traversing fe forward
    const int parent = maps.cell_parent[static_cast<size_t>(owner)];
    const size_t pc = static_cast<size_t>(parent);
    const Vec3 y0 = flat[static_cast<size_t>(fm.edges[fee][0])];
    const Vec3 y1 = flat[static_cast<size_t>(fm.edges[fee][1])];
    const double len = flat_geom.edge_length[fee];
    // outward in-plane normal of the owner cell along its forward traversal
    const Vec3 nstar = flat_geom.edge_tangent[fee].cross(flat_geom.normal[static_cast<size_t>(owner)]);
    const Vec3 p0 = cm.vertices[static_cast<size_t>(cm.cells[pc][0])];
    for (int j = 0; j < 6; ++j) {
      double m0 = 0.0, m1 = 0.0;
      for (size_t qp = 0; qp < rule.points.size(); ++qp) {
        const double s = rule.points[qp];
        const Vec3 x = (1.0 - s) * y0 + s * y1;
        const Eigen::Vector2d xhat = coarse.geom->jac_pinv[pc] * (x - p0);
        const double flux = coarse.basis_value(parent, j, xhat).dot(nstar);
        m0 += rule.weights[qp] * len * flux;
        m1 += rule.weights[qp] * len * flux * (2.0 * s - 1.0);
      }
      const int col = coarse.cell_dof(parent, j);
      if (std::abs(m0) > 1e-13) trips.emplace_back(2 * fe, col, m0);
      if (std::abs(m1) > 1e-13) trips.emplace_back(2 * fe + 1, col, m1);
    }
  }
  p.setFromTriplets(trips.begin(), trips.end());
  return p;
}

}  // namespace swirk
