// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "swirk/tableaux.hpp"

using namespace swirk;

TEST_CASE("midpoint and backward Euler special cases", "[tableaux]") {
  const ButcherTableau gl1 = gauss_legendre(1);
  CHECK(gl1.s == 1);
  CHECK(gl1.c[0] == Catch::Approx(0.5).margin(1e-15));
  CHECK(gl1.A(0, 0) == Catch::Approx(0.5).margin(1e-15));
  CHECK(gl1.b[0] == Catch::Approx(1.0).margin(1e-15));

  const ButcherTableau r1 = radau_iia(1);
  CHECK(r1.c[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(r1.A(0, 0) == Catch::Approx(1.0).margin(1e-14));
  CHECK(r1.b[0] == Catch::Approx(1.0).margin(1e-14));

  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(6), std::invalid_argument);
  CHECK_THROWS_AS(radau_iia(0), std::invalid_argument);
}

TEST_CASE("two-stage closed forms", "[tableaux]") {
  const ButcherTableau gl2 = gauss_legendre(2);
  const double r3 = std::sqrt(3.0) / 6.0;
  CHECK(gl2.c[0] == Catch::Approx(0.5 - r3).margin(1e-14));
  CHECK(gl2.c[1] == Catch::Approx(0.5 + r3).margin(1e-14));
  CHECK(gl2.A(0, 0) == Catch::Approx(0.25).margin(1e-14));
  CHECK(gl2.A(0, 1) == Catch::Approx(0.25 - r3).margin(1e-14));
  CHECK(gl2.A(1, 0) == Catch::Approx(0.25 + r3).margin(1e-14));
  CHECK(gl2.A(1, 1) == Catch::Approx(0.25).margin(1e-14));
  CHECK(gl2.b[0] == Catch::Approx(0.5).margin(1e-14));
  CHECK(gl2.b[1] == Catch::Approx(0.5).margin(1e-14));

  const ButcherTableau r2 = radau_iia(2);
  CHECK(r2.c[0] == Catch::Approx(1.0 / 3.0).margin(1e-14));
  CHECK(r2.c[1] == Catch::Approx(1.0).margin(1e-14));
  CHECK(r2.A(0, 0) == Catch::Approx(5.0 / 12.0).margin(1e-14));
  CHECK(r2.A(0, 1) == Catch::Approx(-1.0 / 12.0).margin(1e-14));
  CHECK(r2.A(1, 0) == Catch::Approx(0.75).margin(1e-14));
  CHECK(r2.A(1, 1) == Catch::Approx(0.25).margin(1e-14));
  CHECK(r2.b[0] == Catch::Approx(0.75).margin(1e-14));
  CHECK(r2.b[1] == Catch::Approx(0.25).margin(1e-14));
}

TEST_CASE("order conditions and stiff accuracy", "[tableaux]") {
  // quadrature order 2s for the symmetric family
  for (int s = 1; s <= 3; ++s) {
    const OrderReport rep = verify_order_conditions(gauss_legendre(s), 2 * s);
    CHECK(rep.passed);
    CHECK(rep.max_quadrature_violation < 1e-12);
    CHECK(rep.max_collocation_violation < 1e-12);
  }
  // order 2s-1 and stiff accuracy for the right-endpoint family
  for (int s = 1; s <= 3; ++s) {
    const ButcherTableau t = radau_iia(s);
    const OrderReport rep = verify_order_conditions(t, 2 * s - 1);
    CHECK(rep.passed);
    CHECK((t.A.row(s - 1).transpose() - t.b).norm() < 1e-13);
    CHECK(t.c[s - 1] == Catch::Approx(1.0).margin(1e-14));
  }
  // one above the design order must fail visibly
  const OrderReport over = verify_order_conditions(radau_iia(2), 4);
  CHECK_FALSE(over.passed);
  CHECK(over.max_quadrature_violation > 1e-3);
  CHECK_THROWS_AS(verify_order_conditions(gauss_legendre(3), 7), std::invalid_argument);

  // row-sum consistency for every generated tableau
  for (int s = 1; s <= 5; ++s) {
    for (const ButcherTableau& t : {gauss_legendre(s), radau_iia(s)}) {
      for (int i = 0; i < t.s; ++i)
        CHECK(std::abs(t.A.row(i).sum() - t.c[i]) < 1e-13);
    }
  }
}

TEST_CASE("additive pair coefficients", "[tableaux]") {
  const DoubleButcherTableau t = ark2();
  const double gamma = 1.0 - 1.0 / std::sqrt(2.0);
  const double alpha = (3.0 + 2.0 * std::sqrt(2.0)) / 6.0;
  const double delta = 1.0 / (2.0 * std::sqrt(2.0));
  CHECK(gamma == Catch::Approx(0.29289321881345248).margin(1e-15));
  CHECK(alpha == Catch::Approx(0.97140452079103168).margin(1e-15));
  CHECK(delta == Catch::Approx(0.35355339059327379).margin(1e-15));
  CHECK(t.implicit_diagonal == gamma);
  CHECK(t.b[0] == delta);
  CHECK(t.b[1] == delta);
  CHECK(t.b[2] == gamma);

  // explicit part: strictly lower triangular, rows sum to the shared nodes
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) CHECK(t.A_explicit(i, j) == 0.0);
    CHECK(t.A_explicit.row(i).sum() == Catch::Approx(t.c[i]).margin(1e-15));
  }
  CHECK(t.c[1] == Catch::Approx(2.0 * gamma).margin(1e-15));
  CHECK(t.c[2] == 1.0);
  CHECK(t.A_explicit(2, 1) == Catch::Approx(alpha).margin(1e-15));

  // implicit part: stiffly accurate, constant diagonal after the first stage
  CHECK(t.A_implicit(1, 1) == gamma);
  CHECK(t.A_implicit(2, 2) == gamma);
  CHECK((t.A_implicit.row(2).transpose() - t.b).norm() == 0.0);

  // second order of the explicit weights: b.c = 1/2 with these constants
  ButcherTableau expl;
  expl.s = 3;
  expl.A = t.A_explicit;
  expl.b = t.b;
  expl.c = t.c;
  const OrderReport rep = verify_order_conditions(expl, 2);
  CHECK(rep.passed);
}

TEST_CASE("determinism, stability spectrum, interpolatory weights", "[tableaux]") {
  // regenerating a tableau reproduces every entry
  for (int s = 1; s <= 3; ++s) {
    const ButcherTableau t1 = gauss_legendre(s), t2 = gauss_legendre(s);
    CHECK((t1.A - t2.A).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((t1.b - t2.b).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((t1.c - t2.c).cwiseAbs().maxCoeff() < 1e-14);
  }

  // eigenvalues of A have positive real part for the symmetric family
  for (int s = 1; s <= 3; ++s) {
    const Eigen::VectorXcd eig = Eigen::MatrixXd(gauss_legendre(s).A).eigenvalues();
    for (int i = 0; i < s; ++i) CHECK(eig[i].real() > 0.0);
  }

  // b_j equals the integral of the j-th Lagrange basis at the nodes
  const double g5p1 = 1.0 / 3.0 * std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0));
  const double g5p2 = 1.0 / 3.0 * std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0));
  const double g5w0 = 128.0 / 225.0;
  const double g5w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
  const double g5w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  const std::array<double, 5> qs = {0.5, 0.5 - 0.5 * g5p1, 0.5 + 0.5 * g5p1, 0.5 - 0.5 * g5p2,
                                    0.5 + 0.5 * g5p2};
  const std::array<double, 5> qw = {g5w0 / 2, g5w1 / 2, g5w1 / 2, g5w2 / 2, g5w2 / 2};
  for (const ButcherTableau& t : {gauss_legendre(3), radau_iia(3), gauss_legendre(2)}) {
    for (int j = 0; j < t.s; ++j) {
      double integral = 0.0;
      for (size_t q = 0; q < qs.size(); ++q) {
        double ell = 1.0;
        for (int m = 0; m < t.s; ++m)
          if (m != j) ell *= (qs[q] - t.c[m]) / (t.c[j] - t.c[m]);
        integral += qw[q] * ell;
      }
      CHECK(integral == Catch::Approx(t.b[j]).margin(1e-12));
    }
  }
}
