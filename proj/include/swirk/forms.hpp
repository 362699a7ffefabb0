// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "swirk/discretization.hpp"

namespace swirk {

/// Physical parameters of the rotating shallow water system. The Coriolis
/// parameter is evaluated pointwise as f(x) = 2*rotation_rate*z/|x|.
/// topography holds cellwise values in the scalar space; empty means flat.
struct SWEParams {
  double rotation_rate = 7.292e-5;  // 1/s
  double gravity = 9.80616;         // m/s^2
  double radius = 6.37122e6;        // m
  double rest_depth = 8000.0;       // m
  Eigen::VectorXd topography;

  double topo(int cell) const { return topography.size() > 0 ? topography[cell] : 0.0; }
};

struct State {
  Eigen::VectorXd u;  // H(div) coefficients
  Eigen::VectorXd D;  // Dg0 coefficients
};

/// Derivative blocks of the spatial residual forms at a given state, with the
/// upwind side selection frozen. Mass terms are not included.
struct AssembledJacobian {
  SpMat a_u, a_D;  // velocity residual wrt (u, D)
  SpMat c_u, c_D;  // depth residual wrt (u, D)
};

// Facet flux switch: traces are taken from the cell the flow leaves; below
// this threshold on u·n both traces are averaged.
inline constexpr double kUpwindTie = 1e-14;

/// Momentum residual: out_i = a(u, D; w_i) for every H(div) basis function,
/// with a = <w, f u_perp> - <grad_perp(w·u_perp), u>
///        + <<[(w·u_perp) n_perp], u_upwind>> - <div w, |u|^2/2 + g (D + b)>.
/// u_perp = k x u with k the flat-cell unit normal; on a facet, n_perp equals
/// the boundary traversal direction of each side.
inline void residual_a(const DiscLevel& L, const SWEParams& P, const State& s, Eigen::VectorXd& out) {
  out.setZero(L.n_v());
  const double two_omega = 2.0 * P.rotation_rate;
  const int nc = L.mesh->n_cells();
  for (int c = 0; c < nc; ++c) {
    const CellTab& t = L.cells[static_cast<size_t>(c)];
    const Vec3 k = L.geom.normal[static_cast<size_t>(c)];
    double uloc[6];
    for (int j = 0; j < 6; ++j) uloc[j] = s.u[t.vdof[static_cast<size_t>(j)]];
    Eigen::Matrix3d grad_u = Eigen::Matrix3d::Zero();
    for (int j = 0; j < 6; ++j) grad_u += uloc[j] * t.grad[static_cast<size_t>(j)];
    const double pressure = P.gravity * (s.D[c] + P.topo(c));
    for (int q = 0; q < 6; ++q) {
      const size_t qs = static_cast<size_t>(q);
      Vec3 uq = Vec3::Zero();
      for (int j = 0; j < 6; ++j) uq += uloc[j] * t.val[qs][static_cast<size_t>(j)];
      const Vec3 uperp = k.cross(uq);
      const double f = two_omega * t.sinlat[qs];
      const double kinetic = 0.5 * uq.squaredNorm() + pressure;
      const double w = t.wdet[qs];
      for (int i = 0; i < 6; ++i) {
        const Vec3& wi = t.val[qs][static_cast<size_t>(i)];
        const Vec3 grad_psi =
            t.grad[static_cast<size_t>(i)].transpose() * uperp - grad_u.transpose() * k.cross(wi);
        const double term = f * wi.dot(uperp) - k.cross(grad_psi).dot(uq) - t.div[static_cast<size_t>(i)] * kinetic;
        out[t.vdof[static_cast<size_t>(i)]] += w * term;
      }
    }
  }
  const int ne = L.mesh->n_edges();
  const EdgeRule& er = EdgeRule::gauss3();
  for (int e = 0; e < ne; ++e) {
    const EdgeTab& t = L.edges[static_cast<size_t>(e)];
    const Vec3 km = L.geom.normal[static_cast<size_t>(t.cm)];
    const Vec3 kp = L.geom.normal[static_cast<size_t>(t.cp)];
    for (int q = 0; q < 3; ++q) {
      const size_t qs = static_cast<size_t>(q);
      Vec3 um = Vec3::Zero(), up = Vec3::Zero();
      for (int j = 0; j < 6; ++j) {
        um += s.u[t.vdof_m[static_cast<size_t>(j)]] * t.trace_m[qs][static_cast<size_t>(j)];
        up += s.u[t.vdof_p[static_cast<size_t>(j)]] * t.trace_p[qs][static_cast<size_t>(j)];
      }
      const double flux = s.u[2 * e] * t.fluxb[qs][0] + s.u[2 * e + 1] * t.fluxb[qs][1];
      Vec3 utilde;
      if (flux > kUpwindTie) utilde = um;
      else if (flux < -kUpwindTie) utilde = up;
      else utilde = 0.5 * (um + up);
      const double tu = t.tangent.dot(utilde);
      const double w = er.weights[qs] * t.len;
      for (int i = 0; i < 6; ++i) {
        out[t.vdof_m[static_cast<size_t>(i)]] += w * t.trace_m[qs][static_cast<size_t>(i)].dot(km.cross(um)) * tu;
        out[t.vdof_p[static_cast<size_t>(i)]] -= w * t.trace_p[qs][static_cast<size_t>(i)].dot(kp.cross(up)) * tu;
      }
    }
  }
}

/// Depth residual: out_j = -<grad_h phi_j, u D> + <<[phi_j n·u], D_upwind>>.
/// At lowest order the broken gradient term vanishes and only the upwind
/// facet flux remains; the signed flux is evaluated once per facet from the
/// forward side so conservation holds to roundoff.
inline void residual_c(const DiscLevel& L, const SWEParams& /*P*/, const State& s, Eigen::VectorXd& out) {
  out.setZero(L.n_q());
  const int ne = L.mesh->n_edges();
  const EdgeRule& er = EdgeRule::gauss3();
  for (int e = 0; e < ne; ++e) {
    const EdgeTab& t = L.edges[static_cast<size_t>(e)];
    for (int q = 0; q < 3; ++q) {
      const size_t qs = static_cast<size_t>(q);
      const double flux = s.u[2 * e] * t.fluxb[qs][0] + s.u[2 * e + 1] * t.fluxb[qs][1];
      double dtilde;
      if (flux > kUpwindTie) dtilde = s.D[t.cm];
      else if (flux < -kUpwindTie) dtilde = s.D[t.cp];
      else dtilde = 0.5 * (s.D[t.cm] + s.D[t.cp]);
      const double v = er.weights[qs] * t.len * flux * dtilde;
      out[t.cm] += v;
      out[t.cp] -= v;
    }
  }
}

/// Gateaux derivative blocks at the given state with frozen upwind switches.
inline AssembledJacobian assemble_jacobian(const DiscLevel& L, const SWEParams& P, const State& s) {
  const double two_omega = 2.0 * P.rotation_rate;
  std::vector<Triplet> tau, tad, tcu, tcd;
  tau.reserve(static_cast<size_t>(L.mesh->n_cells()) * 36 + static_cast<size_t>(L.mesh->n_edges()) * 144);
  tad.reserve(static_cast<size_t>(L.mesh->n_cells()) * 6);
  tcu.reserve(static_cast<size_t>(L.mesh->n_edges()) * 4);
  tcd.reserve(static_cast<size_t>(L.mesh->n_edges()) * 4);

  const int nc = L.mesh->n_cells();
  for (int c = 0; c < nc; ++c) {
    const CellTab& t = L.cells[static_cast<size_t>(c)];
    const Vec3 k = L.geom.normal[static_cast<size_t>(c)];
    double uloc[6];
    for (int j = 0; j < 6; ++j) uloc[j] = s.u[t.vdof[static_cast<size_t>(j)]];
    Eigen::Matrix3d grad_u = Eigen::Matrix3d::Zero();
    for (int j = 0; j < 6; ++j) grad_u += uloc[j] * t.grad[static_cast<size_t>(j)];
    Eigen::Matrix<double, 6, 6> auu = Eigen::Matrix<double, 6, 6>::Zero();
    double adi[6] = {0, 0, 0, 0, 0, 0};
    for (int q = 0; q < 6; ++q) {
      const size_t qs = static_cast<size_t>(q);
      Vec3 uq = Vec3::Zero();
      for (int j = 0; j < 6; ++j) uq += uloc[j] * t.val[qs][static_cast<size_t>(j)];
      const Vec3 uperp = k.cross(uq);
      const double f = two_omega * t.sinlat[qs];
      const double w = t.wdet[qs];
      Vec3 kxv[6];
      for (int j = 0; j < 6; ++j) kxv[j] = k.cross(t.val[qs][static_cast<size_t>(j)]);
      for (int i = 0; i < 6; ++i) {
        const Vec3& wi = t.val[qs][static_cast<size_t>(i)];
        const Vec3 grad_psi =
            t.grad[static_cast<size_t>(i)].transpose() * uperp - grad_u.transpose() * kxv[i];
        const Vec3 k_grad_psi = k.cross(grad_psi);
        for (int j = 0; j < 6; ++j) {
          const Vec3& vj = t.val[qs][static_cast<size_t>(j)];
          const Vec3 dgrad_psi =
              t.grad[static_cast<size_t>(i)].transpose() * kxv[j] - t.grad[static_cast<size_t>(j)].transpose() * kxv[i];
          double term = f * wi.dot(kxv[j]);
          term -= k.cross(dgrad_psi).dot(uq) + k_grad_psi.dot(vj);
          term -= t.div[static_cast<size_t>(i)] * uq.dot(vj);
          auu(i, j) += w * term;
        }
        adi[i] -= w * t.div[static_cast<size_t>(i)] * P.gravity;
      }
    }
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j)
        tau.emplace_back(t.vdof[static_cast<size_t>(i)], t.vdof[static_cast<size_t>(j)], auu(i, j));
      tad.emplace_back(t.vdof[static_cast<size_t>(i)], c, adi[i]);
    }
  }

  const int ne = L.mesh->n_edges();
  const EdgeRule& er = EdgeRule::gauss3();
  for (int e = 0; e < ne; ++e) {
    const EdgeTab& t = L.edges[static_cast<size_t>(e)];
    const Vec3 km = L.geom.normal[static_cast<size_t>(t.cm)];
    const Vec3 kp = L.geom.normal[static_cast<size_t>(t.cp)];
    for (int q = 0; q < 3; ++q) {
      const size_t qs = static_cast<size_t>(q);
      Vec3 um = Vec3::Zero(), up = Vec3::Zero();
      for (int j = 0; j < 6; ++j) {
        um += s.u[t.vdof_m[static_cast<size_t>(j)]] * t.trace_m[qs][static_cast<size_t>(j)];
        up += s.u[t.vdof_p[static_cast<size_t>(j)]] * t.trace_p[qs][static_cast<size_t>(j)];
      }
      const double flux = s.u[2 * e] * t.fluxb[qs][0] + s.u[2 * e + 1] * t.fluxb[qs][1];
      const int upwind = (flux > kUpwindTie) ? 0 : (flux < -kUpwindTie ? 1 : -1);
      const Vec3 utilde = (upwind == 0) ? um : (upwind == 1 ? up : Vec3(0.5 * (um + up)));
      const double dtilde =
          (upwind == 0) ? s.D[t.cm] : (upwind == 1 ? s.D[t.cp] : 0.5 * (s.D[t.cm] + s.D[t.cp]));
      const double tu = t.tangent.dot(utilde);
      const double w = er.weights[qs] * t.len;

      // momentum facet: d/du of (w·u_perp_side) sigma (t·u_upwind)
      for (int side = 0; side < 2; ++side) {
        const double sigma = (side == 0) ? 1.0 : -1.0;
        const Vec3& kk = (side == 0) ? km : kp;
        const Vec3& uside = (side == 0) ? um : up;
        const auto& trace_i = (side == 0) ? t.trace_m : t.trace_p;
        const auto& dof_i = (side == 0) ? t.vdof_m : t.vdof_p;
        for (int i = 0; i < 6; ++i) {
          const Vec3& wi = trace_i[qs][static_cast<size_t>(i)];
          const double wu = wi.dot(kk.cross(uside));
          // same-side variation of u_perp
          for (int j = 0; j < 6; ++j)
            tau.emplace_back(dof_i[static_cast<size_t>(i)], dof_i[static_cast<size_t>(j)],
                             w * sigma * wi.dot(kk.cross(trace_i[qs][static_cast<size_t>(j)])) * tu);
          // frozen-upwind variation of the transported trace
          if (upwind >= 0) {
            const auto& trace_j = (upwind == 0) ? t.trace_m : t.trace_p;
            const auto& dof_j = (upwind == 0) ? t.vdof_m : t.vdof_p;
            for (int j = 0; j < 6; ++j)
              tau.emplace_back(dof_i[static_cast<size_t>(i)], dof_j[static_cast<size_t>(j)],
                               w * sigma * wu * t.tangent.dot(trace_j[qs][static_cast<size_t>(j)]));
          } else {
            for (int j = 0; j < 6; ++j) {
              tau.emplace_back(dof_i[static_cast<size_t>(i)], t.vdof_m[static_cast<size_t>(j)],
                               0.5 * w * sigma * wu * t.tangent.dot(t.trace_m[qs][static_cast<size_t>(j)]));
              tau.emplace_back(dof_i[static_cast<size_t>(i)], t.vdof_p[static_cast<size_t>(j)],
                               0.5 * w * sigma * wu * t.tangent.dot(t.trace_p[qs][static_cast<size_t>(j)]));
            }
          }
        }
      }

      // depth facet: d/du through the signed flux, d/dD through the frozen trace
      for (int m = 0; m < 2; ++m) {
        const double v = w * t.fluxb[qs][static_cast<size_t>(m)] * dtilde;
        tcu.emplace_back(t.cm, 2 * e + m, v);
        tcu.emplace_back(t.cp, 2 * e + m, -v);
      }
      if (upwind >= 0) {
        const int cup = (upwind == 0) ? t.cm : t.cp;
        tcd.emplace_back(t.cm, cup, w * flux);
        tcd.emplace_back(t.cp, cup, -w * flux);
      } else {
        tcd.emplace_back(t.cm, t.cm, 0.5 * w * flux);
        tcd.emplace_back(t.cm, t.cp, 0.5 * w * flux);
        tcd.emplace_back(t.cp, t.cm, -0.5 * w * flux);
        tcd.emplace_back(t.cp, t.cp, -0.5 * w * flux);
      }
    }
  }

  AssembledJacobian jac;
  jac.a_u.resize(L.n_v(), L.n_v());
  jac.a_u.setFromTriplets(tau.begin(), tau.end());
  jac.a_D.resize(L.n_v(), L.n_q());
  jac.a_D.setFromTriplets(tad.begin(), tad.end());
  jac.c_u.resize(L.n_q(), L.n_v());
  jac.c_u.setFromTriplets(tcu.begin(), tcu.end());
  jac.c_D.resize(L.n_q(), L.n_q());
  jac.c_D.setFromTriplets(tcd.begin(), tcd.end());
  return jac;
}

/// Wave part of the momentum residual, the linearisation about rest:
/// a_L = <w, f u_perp> - <div w, g D>.
inline void residual_a_linear(const DiscLevel& L, const SWEParams& P, const State& s, Eigen::VectorXd& out) {
  out.setZero(L.n_v());
  const double two_omega = 2.0 * P.rotation_rate;
  for (int c = 0; c < L.mesh->n_cells(); ++c) {
    const CellTab& t = L.cells[static_cast<size_t>(c)];
    const Vec3 k = L.geom.normal[static_cast<size_t>(c)];
    double uloc[6];
    for (int j = 0; j < 6; ++j) uloc[j] = s.u[t.vdof[static_cast<size_t>(j)]];
    const double gd = P.gravity * s.D[c];
    for (int q = 0; q < 6; ++q) {
      const size_t qs = static_cast<size_t>(q);
      Vec3 uq = Vec3::Zero();
      for (int j = 0; j < 6; ++j) uq += uloc[j] * t.val[qs][static_cast<size_t>(j)];
      const Vec3 fuperp = two_omega * t.sinlat[qs] * k.cross(uq);
      const double w = t.wdet[qs];
      for (int i = 0; i < 6; ++i)
        out[t.vdof[static_cast<size_t>(i)]] +=
            w * (t.val[qs][static_cast<size_t>(i)].dot(fuperp) - t.div[static_cast<size_t>(i)] * gd);
    }
  }
}

/// Wave part of the depth residual: c_L = <phi, H div u>.
inline void residual_c_linear(const DiscLevel& L, const SWEParams& P, const State& s, Eigen::VectorXd& out) {
  out.setZero(L.n_q());
  for (int c = 0; c < L.mesh->n_cells(); ++c) {
    const CellTab& t = L.cells[static_cast<size_t>(c)];
    double div_u = 0.0;
    for (int j = 0; j < 6; ++j) div_u += s.u[t.vdof[static_cast<size_t>(j)]] * t.div[static_cast<size_t>(j)];
    out[c] += P.rest_depth * div_u * L.geom.area[static_cast<size_t>(c)];
  }
}

/// Advective remainder of the momentum residual,
/// a_N = -<grad_perp(w·u_perp), u> + <<[(w·u_perp) n_perp], u_upwind>>
///       - <div w, |u|^2/2 + g b>, assembled directly rather than by
/// subtraction.
inline void residual_a_nonlinear(const DiscLevel& L, const SWEParams& P, const State& s, Eigen::VectorXd& out) {
  out.setZero(L.n_v());
  for (int c = 0; c < L.mesh->n_cells(); ++c) {
    const CellTab& t = L.cells[static_cast<size_t>(c)];
    const Vec3 k = L.geom.normal[static_cast<size_t>(c)];
    double uloc[6];
    for (int j = 0; j < 6; ++j) uloc[j] = s.u[t.vdof[static_cast<size_t>(j)]];
    Eigen::Matrix3d grad_u = Eigen::Matrix3d::Zero();
    for (int j = 0; j < 6; ++j) grad_u += uloc[j] * t.grad[static_cast<size_t>(j)];
    const double gb = P.gravity * P.topo(c);
    for (int q = 0; q < 6; ++q) {
      const size_t qs = static_cast<size_t>(q);
      Vec3 uq = Vec3::Zero();
      for (int j = 0; j < 6; ++j) uq += uloc[j] * t.val[qs][static_cast<size_t>(j)];
      const Vec3 uperp = k.cross(uq);
      const double kinetic = 0.5 * uq.squaredNorm() + gb;
      const double w = t.wdet[qs];
      for (int i = 0; i < 6; ++i) {
        const Vec3& wi = t.val[qs][static_cast<size_t>(i)];
        const Vec3 grad_psi =
            t.grad[static_cast<size_t>(i)].transpose() * uperp - grad_u.transpose() * k.cross(wi);
        out[t.vdof[static_cast<size_t>(i)]] +=
            w * (-k.cross(grad_psi).dot(uq) - t.div[static_cast<size_t>(i)] * kinetic);
      }
    }
  }
  const EdgeRule& er = EdgeRule::gauss3();
  for (int e = 0; e < L.mesh->n_edges(); ++e) {
    const EdgeTab& t = L.edges[static_cast<size_t>(e)];
    const Vec3 km = L.geom.normal[static_cast<size_t>(t.cm)];
    const Vec3 kp = L.geom.normal[static_cast<size_t>(t.cp)];
    for (int q = 0; q < 3; ++q) {
      const size_t qs = static_cast<size_t>(q);
      Vec3 um = Vec3::Zero(), up = Vec3::Zero();
      for (int j = 0; j < 6; ++j) {
        um += s.u[t.vdof_m[static_cast<size_t>(j)]] * t.trace_m[qs][static_cast<size_t>(j)];
        up += s.u[t.vdof_p[static_cast<size_t>(j)]] * t.trace_p[qs][static_cast<size_t>(j)];
      }
      const double flux = s.u[2 * e] * t.fluxb[qs][0] + s.u[2 * e + 1] * t.fluxb[qs][1];
      Vec3 utilde;
      if (flux > kUpwindTie) utilde = um;
      else if (flux < -kUpwindTie) utilde = up;
      else utilde = 0.5 * (um + up);
      const double tu = t.tangent.dot(utilde);
      const double w = er.weights[qs] * t.len;
      for (int i = 0; i < 6; ++i) {
        out[t.vdof_m[static_cast<size_t>(i)]] += w * t.trace_m[qs][static_cast<size_t>(i)].dot(km.cross(um)) * tu;
        out[t.vdof_p[static_cast<size_t>(i)]] -= w * t.trace_p[qs][static_cast<size_t>(i)].dot(kp.cross(up)) * tu;
      }
    }
  }
}

/// Advective remainder of the depth residual,
/// c_N = -<grad_h phi, u D> - <phi, H div u> + <<[phi n·u], D_upwind>>.
inline void residual_c_nonlinear(const DiscLevel& L, const SWEParams& P, const State& s, Eigen::VectorXd& out) {
  residual_c(L, P, s, out);
  for (int c = 0; c < L.mesh->n_cells(); ++c) {
    const CellTab& t = L.cells[static_cast<size_t>(c)];
    double div_u = 0.0;
    for (int j = 0; j < 6; ++j) div_u += s.u[t.vdof[static_cast<size_t>(j)]] * t.div[static_cast<size_t>(j)];
    out[c] -= P.rest_depth * div_u * L.geom.area[static_cast<size_t>(c)];
  }
}

/// State-independent blocks of the rest-state linearisation.
struct LinearBlocks {
  SpMat coriolis;  // <w_i, f k x w_j>
  SpMat grad_div;  // G_ij = <div w_i, phi_j>
};

inline LinearBlocks assemble_linear_blocks(const DiscLevel& L, const SWEParams& P) {
  const double two_omega = 2.0 * P.rotation_rate;
  std::vector<Triplet> tf, tg;
  tf.reserve(static_cast<size_t>(L.mesh->n_cells()) * 36);
  tg.reserve(static_cast<size_t>(L.mesh->n_cells()) * 6);
  for (int c = 0; c < L.mesh->n_cells(); ++c) {
    const CellTab& t = L.cells[static_cast<size_t>(c)];
    const Vec3 k = L.geom.normal[static_cast<size_t>(c)];
    Eigen::Matrix<double, 6, 6> local = Eigen::Matrix<double, 6, 6>::Zero();
    double gdiv[6] = {0, 0, 0, 0, 0, 0};
    for (int q = 0; q < 6; ++q) {
      const size_t qs = static_cast<size_t>(q);
      const double fw = two_omega * t.sinlat[qs] * t.wdet[qs];
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j)
          local(i, j) += fw * t.val[qs][static_cast<size_t>(i)].dot(k.cross(t.val[qs][static_cast<size_t>(j)]));
        gdiv[i] += t.wdet[qs] * t.div[static_cast<size_t>(i)];
      }
    }
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j)
        tf.emplace_back(t.vdof[static_cast<size_t>(i)], t.vdof[static_cast<size_t>(j)], local(i, j));
      tg.emplace_back(t.vdof[static_cast<size_t>(i)], c, gdiv[i]);
    }
  }
  LinearBlocks b;
  b.coriolis.resize(L.n_v(), L.n_v());
  b.coriolis.setFromTriplets(tf.begin(), tf.end());
  b.grad_div.resize(L.n_v(), L.n_q());
  b.grad_div.setFromTriplets(tg.begin(), tg.end());
  return b;
}

/// Mixed wave operator [[M_u + tau F, -tau g G], [tau H G^T, M_D]]; state
/// independent, so it can be assembled and factorised once per step size.
inline SpMat assemble_linear_operator(const DiscLevel& L, const SWEParams& P, double tau) {
  const LinearBlocks b = assemble_linear_blocks(L, P);
  const int nv = L.n_v();
  const int nq = L.n_q();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(L.M_u.nonZeros() + 2 * b.grad_div.nonZeros() + b.coriolis.nonZeros() + nq));
  for (int k = 0; k < L.M_u.outerSize(); ++k)
    for (SpMat::InnerIterator it(L.M_u, k); it; ++it) trips.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < b.coriolis.outerSize(); ++k)
    for (SpMat::InnerIterator it(b.coriolis, k); it; ++it)
      trips.emplace_back(it.row(), it.col(), tau * it.value());
  for (int k = 0; k < b.grad_div.outerSize(); ++k)
    for (SpMat::InnerIterator it(b.grad_div, k); it; ++it) {
      trips.emplace_back(it.row(), nv + it.col(), -tau * P.gravity * it.value());
      trips.emplace_back(nv + it.col(), it.row(), tau * P.rest_depth * it.value());
    }
  for (int c = 0; c < nq; ++c) trips.emplace_back(nv + c, nv + c, L.M_D[c]);
  SpMat op(nv + nq, nv + nq);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

}  // namespace swirk
