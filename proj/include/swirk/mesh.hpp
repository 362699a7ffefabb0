// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swirk {

using Vec3 = Eigen::Vector3d;

/// One triangulated sphere level.
///
/// Conventions baked in at construction time:
///  - cells store vertex triples oriented counterclockwise seen from outside
///    the sphere (flat-cell normal points away from the origin);
///  - edges store ascending vertex pairs; the pair order defines the global
///    edge direction;
///  - cell_edges[c][i] is the edge opposite local vertex i, traversed
///    cells[c][(i+1)%3] -> cells[c][(i+2)%3];
///  - cell_edge_signs[c][i] = +1 when that traversal matches the global edge
///    direction, -1 otherwise;
///  - edge_cells[e][0] is the incident cell whose traversal matches the
///    global direction (sign +1), edge_cells[e][1] the other one.
struct MeshLevel {
  int level = 0;
  double radius = 1.0;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> cells;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> cell_edges;
  std::vector<std::array<int, 3>> cell_edge_signs;
  std::vector<std::array<int, 2>> edge_cells;
  std::vector<std::vector<int>> vertex_cells;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
};

/// Flat-triangle geometry for a mesh level. The affine map from the unit
/// triangle {(0,0),(1,0),(0,1)} to cell c is x = jac[c]*xhat + vertex0; det
/// is the area scale |j1 x j2| (twice the cell area) and jac_pinv the
/// left inverse used for in-plane gradients and point inversion.
struct CellGeometry {
  std::vector<Eigen::Matrix<double, 3, 2>> jac;
  std::vector<Eigen::Matrix<double, 2, 3>> jac_pinv;
  std::vector<double> det;
  std::vector<double> area;
  std::vector<Vec3> normal;       // unit, outward
  std::vector<double> edge_length;
  std::vector<Vec3> edge_tangent;  // unit, along the global edge direction

  /// Outward in-plane normal of edge e within cell c.
  Vec3 edge_normal_in_cell(const MeshLevel& mesh, int cell, int local_edge) const {
    const int e = mesh.cell_edges[static_cast<size_t>(cell)][static_cast<size_t>(local_edge)];
    const double sign = mesh.cell_edge_signs[static_cast<size_t>(cell)][static_cast<size_t>(local_edge)];
    // traversal direction is sign * tangent; outward normal = traversal x k
    return sign * edge_tangent[static_cast<size_t>(e)].cross(normal[static_cast<size_t>(cell)]);
  }
};

namespace detail {

/// Derives edges and incidence tables from the cell list. Requires a closed,
/// consistently oriented surface: every edge must be traversed once in each
/// direction.
inline void build_connectivity(MeshLevel& m) {
  m.cell_edges.assign(m.cells.size(), {-1, -1, -1});
  m.cell_edge_signs.assign(m.cells.size(), {0, 0, 0});
  m.edges.clear();
  m.edge_cells.clear();
  std::map<std::pair<int, int>, int> edge_index;
  for (size_t c = 0; c < m.cells.size(); ++c) {
    for (int i = 0; i < 3; ++i) {
      const int a = m.cells[c][static_cast<size_t>((i + 1) % 3)];
      const int b = m.cells[c][static_cast<size_t>((i + 2) % 3)];
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = edge_index.find(key);
      int e;
      if (it == edge_index.end()) {
        e = static_cast<int>(m.edges.size());
        edge_index.emplace(key, e);
        m.edges.push_back({key.first, key.second});
        m.edge_cells.push_back({-1, -1});
      } else {
        e = it->second;
      }
      const int sign = (a < b) ? 1 : -1;
      m.cell_edges[c][static_cast<size_t>(i)] = e;
      m.cell_edge_signs[c][static_cast<size_t>(i)] = sign;
      const int slot = (sign > 0) ? 0 : 1;
      if (m.edge_cells[static_cast<size_t>(e)][static_cast<size_t>(slot)] != -1)
        throw std::runtime_error("mesh: inconsistent cell orientation at edge " + std::to_string(e));
      m.edge_cells[static_cast<size_t>(e)][static_cast<size_t>(slot)] = static_cast<int>(c);
    }
  }
  for (size_t e = 0; e < m.edges.size(); ++e)
    if (m.edge_cells[e][0] == -1 || m.edge_cells[e][1] == -1)
      throw std::runtime_error("mesh: open surface at edge " + std::to_string(e));
  m.vertex_cells.assign(m.vertices.size(), {});
  for (size_t c = 0; c < m.cells.size(); ++c)
    for (int v : m.cells[c]) m.vertex_cells[static_cast<size_t>(v)].push_back(static_cast<int>(c));
  for (auto& list : m.vertex_cells) std::sort(list.begin(), list.end());
}

}  // namespace detail

/// Seed icosahedron with vertices on the sphere of the given radius. The
/// golden-ratio construction fixes the orientation of the base mesh; any
/// rigid rotation of it would do equally well.
inline MeshLevel build_icosahedron(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("build_icosahedron: radius must be positive");
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const std::array<Vec3, 12> raw = {
      Vec3(-1, phi, 0), Vec3(1, phi, 0), Vec3(-1, -phi, 0), Vec3(1, -phi, 0),
      Vec3(0, -1, phi), Vec3(0, 1, phi), Vec3(0, -1, -phi), Vec3(0, 1, -phi),
      Vec3(phi, 0, -1), Vec3(phi, 0, 1), Vec3(-phi, 0, -1), Vec3(-phi, 0, 1)};
  MeshLevel m;
  m.level = 0;
  m.radius = radius;
  m.vertices.reserve(12);
  for (const auto& p : raw) m.vertices.push_back(radius * p.normalized());
  m.cells = {{0, 11, 5},  {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},   {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},   {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},   {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (auto& cell : m.cells) {
    const Vec3& p0 = m.vertices[static_cast<size_t>(cell[0])];
    const Vec3& p1 = m.vertices[static_cast<size_t>(cell[1])];
    const Vec3& p2 = m.vertices[static_cast<size_t>(cell[2])];
    const Vec3 n = (p1 - p0).cross(p2 - p0);
    if (n.dot(p0 + p1 + p2) < 0.0) std::swap(cell[1], cell[2]);
  }
  detail::build_connectivity(m);
  return m;
}

/// Maps a fine vertex back to the coarse entity it came from: either a
/// coarse vertex (same point) or the coarse edge it bisects.
struct VertexParent {
  bool from_edge = false;
  int index = 0;
};

struct RefinementMaps {
  std::vector<int> cell_parent;            // fine cell -> coarse cell
  std::vector<VertexParent> vertex_parent; // fine vertex -> coarse entity
};

/// Uniform refinement: each cell is split into four by its edge midpoints and
/// the new vertices are pushed radially onto the sphere. Coarse vertices keep
/// their indices; the midpoint of coarse edge e becomes fine vertex
/// n_coarse_vertices + e. Children of coarse cell c are fine cells 4c..4c+3,
/// corner children first, the medial triangle last.
inline MeshLevel refine(const MeshLevel& coarse, RefinementMaps* maps = nullptr) {
  MeshLevel fine;
  fine.level = coarse.level + 1;
  fine.radius = coarse.radius;
  fine.vertices = coarse.vertices;
  fine.vertices.reserve(coarse.vertices.size() + coarse.edges.size());
  for (const auto& e : coarse.edges) {
    const Vec3 mid = 0.5 * (coarse.vertices[static_cast<size_t>(e[0])] +
                            coarse.vertices[static_cast<size_t>(e[1])]);
    fine.vertices.push_back(coarse.radius * mid.normalized());
  }
  if (maps != nullptr) {
    maps->vertex_parent.clear();
    maps->vertex_parent.reserve(fine.vertices.size());
    for (int v = 0; v < coarse.n_vertices(); ++v) maps->vertex_parent.push_back({false, v});
    for (int e = 0; e < coarse.n_edges(); ++e) maps->vertex_parent.push_back({true, e});
    maps->cell_parent.clear();
    maps->cell_parent.reserve(4 * coarse.cells.size());
  }
  fine.cells.reserve(4 * coarse.cells.size());
  const int nv = coarse.n_vertices();
  for (size_t c = 0; c < coarse.cells.size(); ++c) {
    const auto& cell = coarse.cells[c];
    // midpoint opposite local vertex i
    std::array<int, 3> mid{};
    for (int i = 0; i < 3; ++i) mid[static_cast<size_t>(i)] = nv + coarse.cell_edges[c][static_cast<size_t>(i)];
    fine.cells.push_back({cell[0], mid[2], mid[1]});
    fine.cells.push_back({cell[1], mid[0], mid[2]});
    fine.cells.push_back({cell[2], mid[1], mid[0]});
    fine.cells.push_back({mid[0], mid[1], mid[2]});
    if (maps != nullptr)
      for (int k = 0; k < 4; ++k) maps->cell_parent.push_back(static_cast<int>(c));
  }
  detail::build_connectivity(fine);
  return fine;
}

struct MeshHierarchy {
  std::vector<MeshLevel> levels;
  /// maps[l] connects levels[l] (coarse) to levels[l+1] (fine)
  std::vector<RefinementMaps> maps;

  int n_levels() const { return static_cast<int>(levels.size()); }
  const MeshLevel& finest() const { return levels.back(); }
};

inline MeshHierarchy build_hierarchy(int n_levels, double radius) {
  if (n_levels < 1) throw std::invalid_argument("build_hierarchy: need at least one level");
  MeshHierarchy h;
  h.levels.push_back(build_icosahedron(radius));
  for (int l = 1; l < n_levels; ++l) {
    RefinementMaps maps;
    h.levels.push_back(refine(h.levels.back(), &maps));
    h.maps.push_back(std::move(maps));
  }
  return h;
}

/// Vertex coordinates of level fine_level with every refinement-created
/// vertex placed at the flat midpoint of its coarse edge instead of on the
/// sphere. In these coordinates each child cell is an exact subset of its
/// parent, which is the geometry used for intergrid transfer.
inline std::vector<Vec3> flattened_vertices(const MeshHierarchy& h, int fine_level) {
  if (fine_level < 1 || fine_level >= h.n_levels())
    throw std::invalid_argument("flattened_vertices: level out of range");
  const MeshLevel& coarse = h.levels[static_cast<size_t>(fine_level - 1)];
  const RefinementMaps& maps = h.maps[static_cast<size_t>(fine_level - 1)];
  std::vector<Vec3> out(h.levels[static_cast<size_t>(fine_level)].vertices.size());
  for (size_t v = 0; v < out.size(); ++v) {
    const VertexParent& p = maps.vertex_parent[v];
    if (p.from_edge) {
      const auto& e = coarse.edges[static_cast<size_t>(p.index)];
      out[v] = 0.5 * (coarse.vertices[static_cast<size_t>(e[0])] + coarse.vertices[static_cast<size_t>(e[1])]);
    } else {
      out[v] = coarse.vertices[static_cast<size_t>(p.index)];
    }
  }
  return out;
}

/// Computes flat-triangle geometry. Passing coords overrides the level's
/// vertex positions (used for the flattened transfer geometry).
inline CellGeometry compute_geometry(const MeshLevel& m, const std::vector<Vec3>* coords = nullptr) {
  const std::vector<Vec3>& x = (coords != nullptr) ? *coords : m.vertices;
  CellGeometry g;
  const size_t nc = m.cells.size();
  g.jac.resize(nc);
  g.jac_pinv.resize(nc);
  g.det.resize(nc);
  g.area.resize(nc);
  g.normal.resize(nc);
  for (size_t c = 0; c < nc; ++c) {
    const Vec3& p0 = x[static_cast<size_t>(m.cells[c][0])];
    const Vec3& p1 = x[static_cast<size_t>(m.cells[c][1])];
    const Vec3& p2 = x[static_cast<size_t>(m.cells[c][2])];
    Eigen::Matrix<double, 3, 2> J;
    J.col(0) = p1 - p0;
    J.col(1) = p2 - p0;
    const Vec3 cr = J.col(0).cross(J.col(1));
    const double det = cr.norm();
    if (det <= 0.0) throw std::runtime_error("compute_geometry: degenerate cell");
    g.jac[c] = J;
    g.det[c] = det;
    g.area[c] = 0.5 * det;
    g.normal[c] = cr / det;
    g.jac_pinv[c] = (J.transpose() * J).inverse() * J.transpose();
  }
  g.edge_length.resize(m.edges.size());
  g.edge_tangent.resize(m.edges.size());
  for (size_t e = 0; e < m.edges.size(); ++e) {
    const Vec3 d = x[static_cast<size_t>(m.edges[e][1])] - x[static_cast<size_t>(m.edges[e][0])];
    g.edge_length[e] = d.norm();
    g.edge_tangent[e] = d / g.edge_length[e];
  }
  return g;
}

/// Cells around a vertex in counterclockwise order about the outward
/// direction, together with the ring of opposite vertices: ring[i] is the
/// vertex shared by star[i] and star[i+1]. The walk starts at the incident
/// cell with the smallest index, so the ordering is deterministic.
struct VertexStar {
  std::vector<int> cells;
  std::vector<int> ring;
};

inline VertexStar vertex_star_with_ring(const MeshLevel& m, int vertex) {
  if (vertex < 0 || vertex >= m.n_vertices()) throw std::out_of_range("vertex_star: bad vertex index");
  const auto& incident = m.vertex_cells[static_cast<size_t>(vertex)];
  if (incident.empty()) throw std::runtime_error("vertex_star: isolated vertex");
  // In an outward-oriented cell rotated to start at `vertex`, (v, a, b),
  // the next cell counterclockwise is the one across edge {v, b}.
  auto wings = [&](int cell) -> std::pair<int, int> {
    const auto& t = m.cells[static_cast<size_t>(cell)];
    for (int i = 0; i < 3; ++i)
      if (t[static_cast<size_t>(i)] == vertex)
        return {t[static_cast<size_t>((i + 1) % 3)], t[static_cast<size_t>((i + 2) % 3)]};
    throw std::logic_error("vertex_star: incidence table out of sync");
  };
  auto cell_across = [&](int cell, int a) -> int {
    // neighbour of `cell` through edge {vertex, a}
    const size_t c = static_cast<size_t>(cell);
    for (int i = 0; i < 3; ++i) {
      const int e = m.cell_edges[c][static_cast<size_t>(i)];
      const auto& ev = m.edges[static_cast<size_t>(e)];
      if ((ev[0] == vertex && ev[1] == a) || (ev[0] == a && ev[1] == vertex)) {
        const auto& ec = m.edge_cells[static_cast<size_t>(e)];
        return (ec[0] == cell) ? ec[1] : ec[0];
      }
    }
    throw std::logic_error("vertex_star: spoke edge not found");
  };
  VertexStar star;
  int current = incident.front();  // smallest index (vertex_cells sorted)
  for (size_t i = 0; i < incident.size(); ++i) {
    star.cells.push_back(current);
    const auto [a, b] = wings(current);
    star.ring.push_back(b);
    current = cell_across(current, b);
  }
  if (current != star.cells.front())
    throw std::runtime_error("vertex_star: star is not a closed fan");
  return star;
}

inline std::vector<int> vertex_star(const MeshLevel& m, int vertex) {
  return vertex_star_with_ring(m, vertex).cells;
}

/// Plain-text dump with `vertices`, `cells`, `edges` sections, one entity per
/// line. Debug aid only.
inline void dump_mesh(const MeshLevel& m, std::ostream& os) {
  os << "vertices " << m.n_vertices() << "\n";
  os.precision(17);
  for (const auto& v : m.vertices) os << v.x() << " " << v.y() << " " << v.z() << "\n";
  os << "cells " << m.n_cells() << "\n";
  for (const auto& c : m.cells) os << c[0] << " " << c[1] << " " << c[2] << "\n";
  os << "edges " << m.n_edges() << "\n";
  for (const auto& e : m.edges) os << e[0] << " " << e[1] << "\n";
}

}  // namespace swirk
