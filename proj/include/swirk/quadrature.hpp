// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace swirk {

/// Symmetric 6-point rule on the unit triangle, exact for total degree 4.
/// Weights sum to the reference area 1/2.
struct TriangleRule {
  std::array<Eigen::Vector2d, 6> points;
  std::array<double, 6> weights;

  static const TriangleRule& degree4() {
    static const TriangleRule rule = [] {
      TriangleRule r;
      const double a1 = 0.445948490915965;
      const double w1 = 0.223381589678011 * 0.5;
      const double a2 = 0.091576213509771;
      const double w2 = 0.109951743655322 * 0.5;
      r.points = {Eigen::Vector2d(a1, a1),
                  Eigen::Vector2d(1.0 - 2.0 * a1, a1),
                  Eigen::Vector2d(a1, 1.0 - 2.0 * a1),
                  Eigen::Vector2d(a2, a2),
                  Eigen::Vector2d(1.0 - 2.0 * a2, a2),
                  Eigen::Vector2d(a2, 1.0 - 2.0 * a2)};
      r.weights = {w1, w1, w1, w2, w2, w2};
      return r;
    }();
    return rule;
  }
};

/// 3-point Gauss-Legendre rule on [0,1], exact for degree 5. Weights sum to 1.
struct EdgeRule {
  std::array<double, 3> points;
  std::array<double, 3> weights;

  static const EdgeRule& gauss3() {
    static const EdgeRule rule = [] {
      EdgeRule r;
      const double s = std::sqrt(0.6);
      r.points = {0.5 * (1.0 - s), 0.5, 0.5 * (1.0 + s)};
      r.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
      return r;
    }();
    return rule;
  }
};

}  // namespace swirk
