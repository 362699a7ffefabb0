// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "swirk/discretization.hpp"
#include "swirk/fespace.hpp"

using namespace swirk;

namespace {

// Independent degree-5 cell rule (7-point Radon) for oracle integrals.
struct OracleTriRule {
  std::vector<Eigen::Vector2d> pts;
  std::vector<double> w;
  OracleTriRule() {
    const double a1 = (6.0 + std::sqrt(15.0)) / 21.0;
    const double a2 = (6.0 - std::sqrt(15.0)) / 21.0;
    const double w0 = 9.0 / 40.0 * 0.5;
    const double w1 = (155.0 + std::sqrt(15.0)) / 1200.0 * 0.5;
    const double w2 = (155.0 - std::sqrt(15.0)) / 1200.0 * 0.5;
    pts = {{1.0 / 3.0, 1.0 / 3.0}, {a1, a1}, {1 - 2 * a1, a1}, {a1, 1 - 2 * a1},
           {a2, a2},               {1 - 2 * a2, a2}, {a2, 1 - 2 * a2}};
    w = {w0, w1, w1, w1, w2, w2, w2};
  }
};

// 5-point Gauss rule on [0,1] for oracle edge integrals.
struct OracleEdgeRule {
  std::vector<double> s, w;
  OracleEdgeRule() {
    const double p1 = 1.0 / 3.0 * std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0));
    const double p2 = 1.0 / 3.0 * std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0));
    const double w0 = 128.0 / 225.0, w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0,
                 w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    s = {0.5, 0.5 - 0.5 * p1, 0.5 + 0.5 * p1, 0.5 - 0.5 * p2, 0.5 + 0.5 * p2};
    w = {w0 / 2, w1 / 2, w1 / 2, w2 / 2, w2 / 2};
  }
};

Eigen::Vector3d bary_of(const Eigen::Vector2d& xhat) {
  return {1.0 - xhat.x() - xhat.y(), xhat.x(), xhat.y()};
}

// Signed dof functional of edge e, moment m, applied to an H(div) coefficient
// vector; independent quadrature oracle evaluated from a chosen side.
double edge_dof_functional(const MeshLevel& mesh, const CellGeometry& geom, const FunctionSpace& v,
                           const Eigen::VectorXd& coeffs, int e, int m, int side) {
  static const OracleEdgeRule rule;
  const size_t ee = static_cast<size_t>(e);
  const int c = mesh.edge_cells[ee][static_cast<size_t>(side)];
  int le = -1;
  for (int i = 0; i < 3; ++i)
    if (mesh.cell_edges[static_cast<size_t>(c)][static_cast<size_t>(i)] == e) le = i;
  const Vec3 nout = geom.edge_normal_in_cell(mesh, c, le);
  const double sigma = mesh.cell_edge_signs[static_cast<size_t>(c)][static_cast<size_t>(le)];
  const Vec3 y0 = mesh.vertices[static_cast<size_t>(mesh.edges[ee][0])];
  const Vec3 y1 = mesh.vertices[static_cast<size_t>(mesh.edges[ee][1])];
  const Vec3 p0 = mesh.vertices[static_cast<size_t>(mesh.cells[static_cast<size_t>(c)][0])];
  double acc = 0.0;
  for (size_t q = 0; q < rule.s.size(); ++q) {
    const double s = rule.s[q];
    const Vec3 x = (1.0 - s) * y0 + s * y1;
    const Eigen::Vector2d xhat = geom.jac_pinv[static_cast<size_t>(c)] * (x - p0);
    const Vec3 val = evaluate_vector(v, coeffs, c, bary_of(xhat));
    const double weight = (m == 0) ? 1.0 : (2.0 * s - 1.0);
    acc += rule.w[q] * geom.edge_length[ee] * val.dot(nout) * weight;
  }
  return sigma * acc;
}

}  // namespace

TEST_CASE("space dimensions and dof maps", "[fespace]") {
  const MeshHierarchy h = build_hierarchy(4, 1.0);
  const CellGeometry g0 = compute_geometry(h.levels[0]);
  const FunctionSpace v0 = build_space(h.levels[0], g0, Family::HdivBdm1);
  const FunctionSpace q0 = build_space(h.levels[0], g0, Family::Dg0);
  CHECK(v0.n_dofs == 60);
  CHECK(q0.n_dofs == 20);
  const CellGeometry g3 = compute_geometry(h.levels[3]);
  CHECK(build_space(h.levels[3], g3, Family::HdivBdm1).n_dofs == 3840);
  CHECK_THROWS_AS(build_space(h.levels[0], g0, static_cast<Family>(99)), std::invalid_argument);

  // shared edge dofs appear in exactly the two incident cells, opposite signs
  // for the flux moment
  const MeshLevel& m = h.levels[1];
  const CellGeometry g = compute_geometry(m);
  const FunctionSpace v = build_space(m, g, Family::HdivBdm1);
  std::vector<std::vector<std::pair<int, double>>> users(static_cast<size_t>(v.n_dofs));
  for (int c = 0; c < m.n_cells(); ++c)
    for (int i = 0; i < 6; ++i)
      users[static_cast<size_t>(v.cell_dof(c, i))].push_back({c, v.cell_sign(c, i)});
  for (int e = 0; e < m.n_edges(); ++e) {
    REQUIRE(users[static_cast<size_t>(2 * e)].size() == 2);
    CHECK(users[static_cast<size_t>(2 * e)][0].second * users[static_cast<size_t>(2 * e)][1].second == -1.0);
    REQUIRE(users[static_cast<size_t>(2 * e + 1)].size() == 2);
    CHECK(users[static_cast<size_t>(2 * e + 1)][0].second == 1.0);
    CHECK(users[static_cast<size_t>(2 * e + 1)][1].second == 1.0);
  }
}

TEST_CASE("reference element duality and foreign-edge traces", "[fespace]") {
  const auto& ref = Bdm1Reference::instance();
  static const OracleEdgeRule rule;
  for (int e = 0; e < 3; ++e) {
    const Eigen::Vector2d a = Bdm1Reference::vertex((e + 1) % 3);
    const Eigen::Vector2d b = Bdm1Reference::vertex((e + 2) % 3);
    const Eigen::Vector2d d = b - a;
    const double len = d.norm();
    const Eigen::Vector2d n(d.y() / len, -d.x() / len);
    for (int m = 0; m < 2; ++m) {
      for (int j = 0; j < 6; ++j) {
        double acc = 0.0;
        for (size_t q = 0; q < rule.s.size(); ++q) {
          const double t = rule.s[q];
          const Eigen::Vector2d x = a + t * d;
          const double weight = (m == 0) ? 1.0 : (2.0 * t - 1.0);
          acc += rule.w[q] * len * ref.value(j, x).dot(n) * weight;
        }
        CHECK(std::abs(acc - ((j == 2 * e + m) ? 1.0 : 0.0)) < 1e-13);
      }
    }
    // pointwise zero normal component of foreign-edge basis functions
    for (int j = 0; j < 6; ++j) {
      if (j / 2 == e) continue;
      for (double t : {0.1, 0.5, 0.9})
        CHECK(std::abs(ref.value(j, a + t * d).dot(n)) < 1e-13);
    }
  }
}

TEST_CASE("mass matrices", "[fespace]") {
  const MeshHierarchy h = build_hierarchy(2, 1.0);
  const MeshLevel& m = h.levels[1];
  const CellGeometry g = compute_geometry(m);
  const FunctionSpace q = build_space(m, g, Family::Dg0);
  const SpMat mq = assemble_mass(q);
  CHECK(mq.nonZeros() == m.n_cells());
  for (int c = 0; c < m.n_cells(); ++c) CHECK(mq.coeff(c, c) == Catch::Approx(g.area[static_cast<size_t>(c)]));

  const FunctionSpace v = build_space(m, g, Family::HdivBdm1);
  const SpMat mv = assemble_mass(v);
  std::mt19937 rng(7);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd x(v.n_dofs);
    for (int i = 0; i < v.n_dofs; ++i) x[i] = dist(rng);
    CHECK(x.dot(mv * x) > 0.0);
  }
}

TEST_CASE("exact integration of degree-1 products on one cell", "[fespace]") {
  // On the reference cell the field (x, y) has constant normal flux on all
  // edges; its squared L2 norm is 1/6 by hand. The Piola image on a physical
  // cell integrates to (B00 + B01 + B11)/(12 det) with B = J^T J.
  const auto& ref = Bdm1Reference::instance();
  const EdgeRule& er = EdgeRule::gauss3();
  Eigen::Matrix<double, 6, 1> dofs;
  for (int e = 0; e < 3; ++e) {
    const Eigen::Vector2d a = Bdm1Reference::vertex((e + 1) % 3);
    const Eigen::Vector2d b = Bdm1Reference::vertex((e + 2) % 3);
    const Eigen::Vector2d d = b - a;
    const double len = d.norm();
    const Eigen::Vector2d n(d.y() / len, -d.x() / len);
    for (int m = 0; m < 2; ++m) {
      double acc = 0.0;
      for (int qp = 0; qp < 3; ++qp) {
        const double t = er.points[static_cast<size_t>(qp)];
        const Eigen::Vector2d x = a + t * d;
        acc += er.weights[static_cast<size_t>(qp)] * len * x.dot(n) * ((m == 0) ? 1.0 : (2.0 * t - 1.0));
      }
      dofs[2 * e + m] = acc;
    }
  }
  // reconstruct through the element and integrate with the production rule
  const TriangleRule& tr = TriangleRule::degree4();
  double norm2 = 0.0;
  for (size_t qp = 0; qp < tr.points.size(); ++qp) {
    Eigen::Vector2d val = Eigen::Vector2d::Zero();
    for (int j = 0; j < 6; ++j) val += dofs[j] * ref.value(j, tr.points[qp]);
    CHECK((val - tr.points[qp]).norm() < 1e-13);  // the element reproduces (x, y)
    norm2 += tr.weights[qp] * val.squaredNorm();
  }
  CHECK(norm2 == Catch::Approx(1.0 / 6.0).epsilon(1e-12));

  // physical cell: quadrature of the Piola image against the hand integral
  const MeshLevel mesh = build_icosahedron(1.0);
  const CellGeometry g = compute_geometry(mesh);
  const FunctionSpace v = build_space(mesh, g, Family::HdivBdm1);
  const int c = 0;
  const Eigen::Matrix2d b2 = g.jac[0].transpose() * g.jac[0];
  const double hand = (b2(0, 0) + b2(0, 1) + b2(1, 1)) / (12.0 * g.det[0]);
  double phys = 0.0;
  for (size_t qp = 0; qp < tr.points.size(); ++qp) {
    Eigen::Vector2d rv = Eigen::Vector2d::Zero();
    for (int j = 0; j < 6; ++j) rv += dofs[j] * ref.value(j, tr.points[qp]);
    const Vec3 val = g.jac[0] * rv / g.det[0];
    phys += tr.weights[qp] * g.det[0] * val.squaredNorm();
  }
  (void)c;
  (void)v;
  CHECK(phys == Catch::Approx(hand).epsilon(1e-12));
}

TEST_CASE("evaluation, dof functionals and normal continuity", "[fespace]") {
  const MeshHierarchy h = build_hierarchy(2, 1.0);
  const MeshLevel& m = h.levels[1];
  const CellGeometry g = compute_geometry(m);
  const FunctionSpace v = build_space(m, g, Family::HdivBdm1);

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(v.n_dofs);
  CHECK(evaluate_vector(v, zero, 0, Vec3(0.3, 0.3, 0.4)).norm() == 0.0);
  CHECK_THROWS_AS(evaluate_vector(v, zero, m.n_cells(), Vec3(0.3, 0.3, 0.4)), std::out_of_range);

  // dof functionals recover the coefficients, from either side
  std::mt19937 rng(3);
  std::normal_distribution<double> dist;
  Eigen::VectorXd coeffs(v.n_dofs);
  for (int i = 0; i < v.n_dofs; ++i) coeffs[i] = dist(rng);
  for (int e : {0, 7, 31, 64, 100}) {
    for (int mom = 0; mom < 2; ++mom) {
      const double from_minus = edge_dof_functional(m, g, v, coeffs, e, mom, 0);
      const double from_plus = edge_dof_functional(m, g, v, coeffs, e, mom, 1);
      CHECK(from_minus == Catch::Approx(coeffs[2 * e + mom]).margin(1e-12));
      CHECK(from_plus == Catch::Approx(coeffs[2 * e + mom]).margin(1e-12));
    }
  }

  // pointwise normal continuity at edge quadrature points
  for (int e = 0; e < m.n_edges(); ++e) {
    const size_t ee = static_cast<size_t>(e);
    const Vec3 y0 = m.vertices[static_cast<size_t>(m.edges[ee][0])];
    const Vec3 y1 = m.vertices[static_cast<size_t>(m.edges[ee][1])];
    const Vec3 x = 0.5 * (y0 + y1);
    double fluxes[2];
    for (int side = 0; side < 2; ++side) {
      const int c = m.edge_cells[ee][static_cast<size_t>(side)];
      int le = -1;
      for (int i = 0; i < 3; ++i)
        if (m.cell_edges[static_cast<size_t>(c)][static_cast<size_t>(i)] == e) le = i;
      const Vec3 p0 = m.vertices[static_cast<size_t>(m.cells[static_cast<size_t>(c)][0])];
      const Eigen::Vector2d xhat = g.jac_pinv[static_cast<size_t>(c)] * (x - p0);
      const Vec3 val = evaluate_vector(v, coeffs, c, bary_of(xhat));
      fluxes[side] = val.dot(g.edge_normal_in_cell(m, c, le));
    }
    CHECK(std::abs(fluxes[0] + fluxes[1]) < 1e-12 * (1.0 + std::abs(fluxes[0])));
  }
}

TEST_CASE("projection", "[fespace]") {
  const MeshHierarchy h = build_hierarchy(5, 1.0);
  const CellGeometry g2 = compute_geometry(h.levels[2]);
  const FunctionSpace q2 = build_space(h.levels[2], g2, Family::Dg0);
  const Eigen::VectorXd pc = project_scalar(q2, [](const Vec3&) { return 3.25; });
  for (int c = 0; c < q2.n_dofs; ++c) CHECK(pc[c] == Catch::Approx(3.25).epsilon(1e-13));

  // projecting a field already in the space reproduces its coefficients
  const FunctionSpace v2 = build_space(h.levels[2], g2, Family::HdivBdm1);
  std::mt19937 rng(11);
  std::normal_distribution<double> dist;
  Eigen::VectorXd coeffs(v2.n_dofs);
  for (int i = 0; i < v2.n_dofs; ++i) coeffs[i] = dist(rng);
  const MeshLevel& mesh2 = h.levels[2];
  auto locate = [&](const Vec3& x) {
    int best = 0;
    double best_d = std::numeric_limits<double>::max();
    for (int c = 0; c < mesh2.n_cells(); ++c) {
      const Vec3 centroid = (mesh2.vertices[static_cast<size_t>(mesh2.cells[static_cast<size_t>(c)][0])] +
                             mesh2.vertices[static_cast<size_t>(mesh2.cells[static_cast<size_t>(c)][1])] +
                             mesh2.vertices[static_cast<size_t>(mesh2.cells[static_cast<size_t>(c)][2])]) / 3.0;
      const double d = (x - centroid).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  };
  const Eigen::VectorXd reproduced = project_vector(v2, [&](const Vec3& x) {
    const int c = locate(x);
    const Vec3 p0 = mesh2.vertices[static_cast<size_t>(mesh2.cells[static_cast<size_t>(c)][0])];
    const Eigen::Vector2d xhat = g2.jac_pinv[static_cast<size_t>(c)] * (x - p0);
    return evaluate_vector(v2, coeffs, c, bary_of(xhat));
  });
  CHECK((reproduced - coeffs).norm() < 1e-10 * coeffs.norm());

  // solid-body rotation: projection error small and decreasing in level
  auto solid_body = [](const Vec3& x) { return Vec3(Vec3::UnitZ().cross(x)); };
  double prev_err = std::numeric_limits<double>::max();
  for (int lev : {2, 3, 4}) {
    const CellGeometry g = compute_geometry(h.levels[static_cast<size_t>(lev)]);
    const FunctionSpace v = build_space(h.levels[static_cast<size_t>(lev)], g, Family::HdivBdm1);
    const Eigen::VectorXd proj = project_vector(v, solid_body);
    const TriangleRule& tr = TriangleRule::degree4();
    double err2 = 0.0, ref2 = 0.0;
    const MeshLevel& mesh = h.levels[static_cast<size_t>(lev)];
    for (int c = 0; c < mesh.n_cells(); ++c) {
      const Vec3 p0 = mesh.vertices[static_cast<size_t>(mesh.cells[static_cast<size_t>(c)][0])];
      for (size_t qp = 0; qp < tr.points.size(); ++qp) {
        const Vec3 x = p0 + g.jac[static_cast<size_t>(c)] * tr.points[qp];
        const Vec3 exact = solid_body(x);
        const Vec3 approx = evaluate_vector(v, proj, c, bary_of(tr.points[qp]));
        err2 += tr.weights[qp] * g.det[static_cast<size_t>(c)] * (approx - exact).squaredNorm();
        ref2 += tr.weights[qp] * g.det[static_cast<size_t>(c)] * exact.squaredNorm();
      }
    }
    const double rel = std::sqrt(err2 / ref2);
    if (lev == 3) CHECK(rel < 1e-1);
    CHECK(rel < prev_err);
    prev_err = rel;
  }
}

TEST_CASE("prolongation", "[fespace]") {
  const Discretization d = build_discretization(3, 1.0);
  // piecewise constants: children copy the parent value, row sums are one
  const SpMat& pq = d.P_Q[1];
  for (int r = 0; r < pq.rows(); ++r) {
    double sum = 0.0;
    for (SpMat::InnerIterator it(SpMat(pq.transpose()), r); it; ++it) sum += it.value();
    (void)sum;
  }
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(pq.cols());
  CHECK(((pq * ones).array() - 1.0).abs().maxCoeff() < 1e-14);
  CHECK((pq * Eigen::VectorXd::Zero(pq.cols())).norm() == 0.0);

  // H(div): the prolonged coefficients represent the same function in the
  // flattened geometry
  const int cl = 1;
  const DiscLevel& coarse = d.level(cl);
  const DiscLevel& fine = d.level(cl + 1);
  std::mt19937 rng(5);
  std::normal_distribution<double> dist;
  Eigen::VectorXd cc(coarse.n_v());
  for (int i = 0; i < coarse.n_v(); ++i) cc[i] = dist(rng);
  const Eigen::VectorXd fc = d.P_V[static_cast<size_t>(cl)] * cc;

  const std::vector<Vec3> flat = flattened_vertices(d.hier, cl + 1);
  const CellGeometry fine_flat = compute_geometry(*fine.mesh, &flat);
  FunctionSpace fine_flat_v = build_space(*fine.mesh, fine_flat, Family::HdivBdm1);
  const auto& maps = d.hier.maps[static_cast<size_t>(cl)];
  for (int fc_cell : {0, 5, 17, 73, 200, 301}) {
    const int parent = maps.cell_parent[static_cast<size_t>(fc_cell)];
    for (const auto& bary :
         {Vec3(0.5, 0.3, 0.2), Vec3(0.2, 0.2, 0.6), Vec3(1.0 / 3, 1.0 / 3, 1.0 / 3)}) {
      // physical (flattened) point of the fine cell
      const Vec3 x = bary[0] * flat[static_cast<size_t>(fine.mesh->cells[static_cast<size_t>(fc_cell)][0])] +
                     bary[1] * flat[static_cast<size_t>(fine.mesh->cells[static_cast<size_t>(fc_cell)][1])] +
                     bary[2] * flat[static_cast<size_t>(fine.mesh->cells[static_cast<size_t>(fc_cell)][2])];
      const Vec3 fine_val = evaluate_vector(fine_flat_v, fc, fc_cell, bary);
      const Vec3 p0 = coarse.mesh->vertices[static_cast<size_t>(coarse.mesh->cells[static_cast<size_t>(parent)][0])];
      const Eigen::Vector2d xhat = coarse.geom.jac_pinv[static_cast<size_t>(parent)] * (x - p0);
      const Vec3 coarse_val = evaluate_vector(coarse.V, cc, parent, bary_of(xhat));
      CHECK((fine_val - coarse_val).norm() < 1e-11 * (1.0 + coarse_val.norm()));
    }
  }

  // flux through every coarse edge is preserved (quadrature oracle on the
  // flattened fine mesh)
  static const OracleEdgeRule orule;
  for (int e = 0; e < coarse.mesh->n_edges(); ++e) {
    const size_t ee = static_cast<size_t>(e);
    const int c = coarse.mesh->edge_cells[ee][0];
    int le = -1;
    for (int i = 0; i < 3; ++i)
      if (coarse.mesh->cell_edges[static_cast<size_t>(c)][static_cast<size_t>(i)] == e) le = i;
    const Vec3 nout = coarse.geom.edge_normal_in_cell(*coarse.mesh, c, le);
    const Vec3 y0 = coarse.mesh->vertices[static_cast<size_t>(coarse.mesh->edges[ee][0])];
    const Vec3 y1 = coarse.mesh->vertices[static_cast<size_t>(coarse.mesh->edges[ee][1])];
    const Vec3 p0c = coarse.mesh->vertices[static_cast<size_t>(coarse.mesh->cells[static_cast<size_t>(c)][0])];
    double coarse_flux = 0.0, fine_flux = 0.0;
    for (size_t q = 0; q < orule.s.size(); ++q) {
      const double s = orule.s[q];
      const Vec3 x = (1.0 - s) * y0 + s * y1;
      const Eigen::Vector2d xhat = coarse.geom.jac_pinv[static_cast<size_t>(c)] * (x - p0c);
      coarse_flux += orule.w[q] * (y1 - y0).norm() *
                     evaluate_vector(coarse.V, cc, c, bary_of(xhat)).dot(nout);
      // same point evaluated through the fine representation: find the fine
      // child of c containing x
      int owner = -1;
      Eigen::Vector2d fh;
      for (int child = 4 * c; child < 4 * c + 4; ++child) {
        const Vec3 q0 = flat[static_cast<size_t>(fine.mesh->cells[static_cast<size_t>(child)][0])];
        const Eigen::Vector2d cand = fine_flat.jac_pinv[static_cast<size_t>(child)] * (x - q0);
        if (cand.x() >= -1e-10 && cand.y() >= -1e-10 && cand.x() + cand.y() <= 1.0 + 1e-10) {
          owner = child;
          fh = cand;
          break;
        }
      }
      REQUIRE(owner >= 0);
      fine_flux += orule.w[q] * (y1 - y0).norm() *
                   evaluate_vector(fine_flat_v, fc, owner, bary_of(fh)).dot(nout);
    }
    CHECK(fine_flux == Catch::Approx(coarse_flux).margin(1e-11 * (1.0 + std::abs(coarse_flux))));
  }

  // family and level mismatches are rejected
  CHECK_THROWS_AS(prolongation(d.hier, 0, d.level(0).V, d.level(1).Q), std::invalid_argument);
  CHECK_THROWS_AS(prolongation(d.hier, 0, d.level(0).V, d.level(2).V), std::invalid_argument);
}

TEST_CASE("discrete divergence theorem", "[fespace]") {
  const Discretization d = build_discretization(3, 1.0);
  const DiscLevel& L = d.level(2);
  std::mt19937 rng(13);
  std::normal_distribution<double> dist;
  Eigen::VectorXd u(L.n_v());
  for (int i = 0; i < L.n_v(); ++i) u[i] = dist(rng);
  double total = 0.0, scale = 0.0;
  for (int c = 0; c < L.mesh->n_cells(); ++c) {
    double div_u = 0.0;
    for (int j = 0; j < 6; ++j)
      div_u += u[L.cells[static_cast<size_t>(c)].vdof[static_cast<size_t>(j)]] *
               L.cells[static_cast<size_t>(c)].div[static_cast<size_t>(j)];
    const double contrib = div_u * L.geom.area[static_cast<size_t>(c)];
    total += contrib;
    scale += std::abs(contrib);
  }
  CHECK(std::abs(total) < 1e-10 * scale);
}
