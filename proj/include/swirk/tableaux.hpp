// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace swirk {

struct ButcherTableau {
  int s = 0;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

/// Paired explicit/implicit tableaux sharing nodes and weights.
struct DoubleButcherTableau {
  int s = 0;
  Eigen::MatrixXd A_explicit;
  Eigen::MatrixXd A_implicit;
  Eigen::VectorXd b;           // shared reconstruction weights
  Eigen::VectorXd c;
  double implicit_diagonal = 0.0;  // common diagonal of the implicit stages
};

namespace detail {

/// Legendre polynomial P_n and derivative on [-1, 1] by recurrence.
inline std::pair<double, double> legendre(int n, double t) {
  double p0 = 1.0, p1 = t;
  if (n == 0) return {1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  const double denom = t * t - 1.0;
  const double dp = (std::abs(denom) > 1e-10) ? n * (t * p1 - p0) / denom
                                              : 0.5 * n * (n + 1.0) * (t >= 0 ? 1.0 : std::pow(-1.0, n + 1));
  return {p1, dp};
}

/// Simple bracketed root finder: bisection to ~1e-10 then Newton polishing.
/// The node polynomials have simple, well separated roots.
template <class F, class DF>
double polish_root(const F& f, const DF& df, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 100 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double fx = f(x);
    const double d = df(x);
    if (d == 0.0) break;
    const double step = fx / d;
    x -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return x;
}

template <class F, class DF>
std::vector<double> bracketed_roots(const F& f, const DF& df, double lo, double hi, int expected) {
  const int samples = 4096;
  std::vector<double> roots;
  double xprev = lo, fprev = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    const double fx = f(x);
    if ((fprev <= 0.0) != (fx <= 0.0)) roots.push_back(polish_root(f, df, xprev, x));
    xprev = x;
    fprev = fx;
  }
  if (static_cast<int>(roots.size()) != expected)
    throw std::runtime_error("tableaux: root isolation failed");
  return roots;
}

/// Fills A and b of a collocation method from its nodes by solving the
/// moment systems sum_j A_ij c_j^{k-1} = c_i^k / k, k = 1..s.
inline ButcherTableau collocation_from_nodes(const std::vector<double>& nodes) {
  const int s = static_cast<int>(nodes.size());
  ButcherTableau t;
  t.s = s;
  t.c = Eigen::Map<const Eigen::VectorXd>(nodes.data(), s);
  Eigen::MatrixXd vand(s, s);
  for (int k = 0; k < s; ++k)
    for (int j = 0; j < s; ++j) vand(k, j) = std::pow(nodes[static_cast<size_t>(j)], k);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(vand);
  t.A.resize(s, s);
  for (int i = 0; i < s; ++i) {
    Eigen::VectorXd rhs(s);
    for (int k = 1; k <= s; ++k) rhs[k - 1] = std::pow(t.c[i], k) / k;
    t.A.row(i) = lu.solve(rhs).transpose();
  }
  Eigen::VectorXd rhs(s);
  for (int k = 1; k <= s; ++k) rhs[k - 1] = 1.0 / k;
  t.b = lu.solve(rhs);
  return t;
}

}  // namespace detail

/// Gauss-Legendre collocation: nodes are the roots of the shifted Legendre
/// polynomial of degree s; quadrature order 2s.
inline ButcherTableau gauss_legendre(int s) {
  if (s < 1 || s > 5) throw std::invalid_argument("gauss_legendre: supported stage counts are 1..5");
  auto f = [s](double x) { return detail::legendre(s, 2.0 * x - 1.0).first; };
  auto df = [s](double x) { return 2.0 * detail::legendre(s, 2.0 * x - 1.0).second; };
  return detail::collocation_from_nodes(detail::bracketed_roots(f, df, 0.0, 1.0, s));
}

/// Radau IIA collocation: right-endpoint nodes (c_s = 1), order 2s-1,
/// stiffly accurate (last row of A equals b).
inline ButcherTableau radau_iia(int s) {
  if (s < 1 || s > 5) throw std::invalid_argument("radau_iia: supported stage counts are 1..5");
  auto f = [s](double x) {
    return detail::legendre(s, 2.0 * x - 1.0).first - detail::legendre(s - 1, 2.0 * x - 1.0).first;
  };
  auto df = [s](double x) {
    return 2.0 * (detail::legendre(s, 2.0 * x - 1.0).second - detail::legendre(s - 1, 2.0 * x - 1.0).second);
  };
  std::vector<double> nodes =
      (s == 1) ? std::vector<double>{} : detail::bracketed_roots(f, df, 0.0, 1.0 - 1e-9, s - 1);
  nodes.push_back(1.0);
  return detail::collocation_from_nodes(nodes);
}

/// Three-stage, second-order additive Runge-Kutta pair with
/// gamma = 1 - 1/sqrt(2), alpha = (3 + 2 sqrt(2))/6, delta = 1/(2 sqrt(2)).
/// The implicit part is stiffly accurate with constant diagonal gamma.
inline DoubleButcherTableau ark2() {
  const double gamma = 1.0 - 1.0 / std::sqrt(2.0);
  const double alpha = (3.0 + 2.0 * std::sqrt(2.0)) / 6.0;
  const double delta = 1.0 / (2.0 * std::sqrt(2.0));
  DoubleButcherTableau t;
  t.s = 3;
  t.A_explicit.setZero(3, 3);
  t.A_explicit(1, 0) = 2.0 * gamma;
  t.A_explicit(2, 0) = 1.0 - alpha;
  t.A_explicit(2, 1) = alpha;
  t.A_implicit.setZero(3, 3);
  t.A_implicit(1, 0) = gamma;
  t.A_implicit(1, 1) = gamma;
  t.A_implicit(2, 0) = delta;
  t.A_implicit(2, 1) = delta;
  t.A_implicit(2, 2) = gamma;
  t.b.resize(3);
  t.b << delta, delta, gamma;
  t.c.resize(3);
  t.c << 0.0, 2.0 * gamma, 1.0;
  t.implicit_diagonal = gamma;
  return t;
}

struct OrderReport {
  double max_quadrature_violation = 0.0;   // sum b_i c_i^{k-1} - 1/k, k = 1..order
  double max_collocation_violation = 0.0;  // sum_j A_ij c_j^{k-1} - c_i^k/k, k = 1..s
  bool passed = false;
};

/// Checks the quadrature order conditions up to the requested order and the
/// stage-order (collocation) conditions C(s). The pass verdict is on the
/// quadrature conditions.
inline OrderReport verify_order_conditions(const ButcherTableau& t, int order) {
  if (order > 6) throw std::invalid_argument("verify_order_conditions: order must be <= 6");
  OrderReport r;
  for (int k = 1; k <= order; ++k) {
    double acc = 0.0;
    for (int i = 0; i < t.s; ++i) acc += t.b[i] * std::pow(t.c[i], k - 1);
    r.max_quadrature_violation = std::max(r.max_quadrature_violation, std::abs(acc - 1.0 / k));
  }
  for (int k = 1; k <= t.s; ++k)
    for (int i = 0; i < t.s; ++i) {
      double acc = 0.0;
      for (int j = 0; j < t.s; ++j) acc += t.A(i, j) * std::pow(t.c[j], k - 1);
      r.max_collocation_violation =
          std::max(r.max_collocation_violation, std::abs(acc - std::pow(t.c[i], k) / k));
    }
  r.passed = r.max_quadrature_violation < 1e-12;
  return r;
}

enum class Scheme { Gl1, Gl2, Gl3, Radau1, Radau2, Radau3, Ark2 };

inline Scheme parse_scheme(const std::string& name) {
  if (name == "gl1") return Scheme::Gl1;
  if (name == "gl2") return Scheme::Gl2;
  if (name == "gl3") return Scheme::Gl3;
  if (name == "radau1") return Scheme::Radau1;
  if (name == "radau2") return Scheme::Radau2;
  if (name == "radau3") return Scheme::Radau3;
  if (name == "ark2") return Scheme::Ark2;
  throw std::invalid_argument("unknown scheme: " + name);
}

inline std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Gl1: return "gl1";
    case Scheme::Gl2: return "gl2";
    case Scheme::Gl3: return "gl3";
    case Scheme::Radau1: return "radau1";
    case Scheme::Radau2: return "radau2";
    case Scheme::Radau3: return "radau3";
    case Scheme::Ark2: return "ark2";
  }
  return "?";
}

inline bool is_imex(Scheme s) { return s == Scheme::Ark2; }

inline ButcherTableau irk_tableau(Scheme s) {
  switch (s) {
    case Scheme::Gl1: return gauss_legendre(1);
    case Scheme::Gl2: return gauss_legendre(2);
    case Scheme::Gl3: return gauss_legendre(3);
    case Scheme::Radau1: return radau_iia(1);
    case Scheme::Radau2: return radau_iia(2);
    case Scheme::Radau3: return radau_iia(3);
    default: throw std::invalid_argument("irk_tableau: not a collocation scheme");
  }
}

}  // namespace swirk
