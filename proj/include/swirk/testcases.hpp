// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <stdexcept>

#include "swirk/discretization.hpp"
#include "swirk/forms.hpp"

namespace swirk {

/// Constants of the standard spherical shallow water test suite, transcribed
/// from the usual reference values (SI units).
namespace testcase {
inline constexpr double kEarthRadius = 6.37122e6;      // m
inline constexpr double kEarthOmega = 7.292e-5;        // 1/s
inline constexpr double kGravity = 9.80616;            // m/s^2
// travelling wave (wavenumber 4)
inline constexpr double kRhOmega = 7.848e-6;           // 1/s
inline constexpr double kRhK = 7.848e-6;               // 1/s
inline constexpr int kRhWavenumber = 4;
inline constexpr double kRhH0 = 8000.0;                // m
// steady zonal flow
inline constexpr double kTc2GH0 = 2.94e4;              // m^2/s^2
inline constexpr double kTc2Days = 12.0;               // flow-around time
}  // namespace testcase

inline SWEParams earth_params(double rest_depth = testcase::kRhH0) {
  SWEParams p;
  p.rotation_rate = testcase::kEarthOmega;
  p.gravity = testcase::kGravity;
  p.radius = testcase::kEarthRadius;
  p.rest_depth = rest_depth;
  return p;
}

namespace detail {

struct LonLat {
  double lon, lat, sinlat, coslat;
};

inline LonLat lonlat(const Vec3& x) {
  const double r = x.norm();
  LonLat ll;
  ll.lon = std::atan2(x.y(), x.x());
  ll.sinlat = x.z() / r;
  ll.lat = std::asin(std::clamp(ll.sinlat, -1.0, 1.0));
  ll.coslat = std::cos(ll.lat);
  return ll;
}

inline Vec3 zonal_unit(double lon) { return {-std::sin(lon), std::cos(lon), 0.0}; }

inline Vec3 meridional_unit(double lon, double lat) {
  return {-std::sin(lat) * std::cos(lon), -std::sin(lat) * std::sin(lon), std::cos(lat)};
}

inline void check_sphere(const DiscLevel& L, const SWEParams& p) {
  if (std::abs(L.mesh->radius - p.radius) > 1e-6 * p.radius)
    throw std::invalid_argument("test case init: mesh radius does not match parameters");
}

}  // namespace detail

/// Zonal and meridional velocity of the wavenumber-4 travelling wave.
inline void rossby_haurwitz_velocity(double lon, double lat, double radius, double& u, double& v) {
  using namespace testcase;
  const double R = kRhWavenumber;
  const double c = std::cos(lat);
  const double s = std::sin(lat);
  const double cR1 = std::pow(c, R - 1.0);
  u = radius * kRhOmega * c + radius * kRhK * cR1 * (R * s * s - c * c) * std::cos(R * lon);
  v = -radius * kRhK * R * cR1 * s * std::sin(R * lon);
}

/// Depth field of the travelling wave.
inline double rossby_haurwitz_depth(double lon, double lat, double radius, double rotation_rate,
                                    double gravity) {
  using namespace testcase;
  const double R = kRhWavenumber;
  const double w = kRhOmega;
  const double K = kRhK;
  const double c = std::cos(lat);
  const double c2 = c * c;
  const double cR = std::pow(c, R);
  const double c2R = cR * cR;
  const double a2 = radius * radius;
  const double A = 0.5 * w * (2.0 * rotation_rate + w) * c2 +
                   0.25 * K * K * c2R *
                       ((R + 1.0) * c2 + (2.0 * R * R - R - 2.0) - 2.0 * R * R / c2);
  const double B = (2.0 * (rotation_rate + w) * K / ((R + 1.0) * (R + 2.0))) * cR *
                   ((R * R + 2.0 * R + 2.0) - (R + 1.0) * (R + 1.0) * c2);
  const double C = 0.25 * K * K * c2R * ((R + 1.0) * c2 - (R + 2.0));
  return kRhH0 +
         (a2 * A + a2 * B * std::cos(R * lon) + a2 * C * std::cos(2.0 * R * lon)) / gravity;
}

/// Travelling-wave initial state projected into the mixed space.
inline State tc6_init(const DiscLevel& L, const SWEParams& p) {
  detail::check_sphere(L, p);
  State s;
  s.u = project_vector(L.V, [&](const Vec3& x) {
    const auto ll = detail::lonlat(x);
    double u, v;
    rossby_haurwitz_velocity(ll.lon, ll.lat, p.radius, u, v);
    return Vec3(u * detail::zonal_unit(ll.lon) + v * detail::meridional_unit(ll.lon, ll.lat));
  });
  s.D = project_scalar(L.Q, [&](const Vec3& x) {
    const auto ll = detail::lonlat(x);
    return rossby_haurwitz_depth(ll.lon, ll.lat, p.radius, p.rotation_rate, p.gravity);
  });
  return s;
}

/// Steady geostrophic zonal flow (flow axis aligned with the rotation axis):
/// u = u0 cos(lat), g h = g h0 - (a Omega u0 + u0^2/2) sin^2(lat).
inline State tc2_init(const DiscLevel& L, const SWEParams& p,
                      double u0 = 2.0 * M_PI * testcase::kEarthRadius / (testcase::kTc2Days * 86400.0)) {
  detail::check_sphere(L, p);
  State s;
  s.u = project_vector(L.V, [&](const Vec3& x) {
    const auto ll = detail::lonlat(x);
    return Vec3(u0 * ll.coslat * detail::zonal_unit(ll.lon));
  });
  s.D = project_scalar(L.Q, [&](const Vec3& x) {
    const auto ll = detail::lonlat(x);
    const double gh = testcase::kTc2GH0 -
                      (p.radius * p.rotation_rate * u0 + 0.5 * u0 * u0) * ll.sinlat * ll.sinlat;
    return gh / p.gravity;
  });
  return s;
}

inline double tc2_depth(const Vec3& x, const SWEParams& p, double u0) {
  const auto ll = detail::lonlat(x);
  const double gh =
      testcase::kTc2GH0 - (p.radius * p.rotation_rate * u0 + 0.5 * u0 * u0) * ll.sinlat * ll.sinlat;
  return gh / p.gravity;
}

/// Smooth elevation bump with zero initial velocity, used to drive the
/// rest-state wave dynamics.
inline State linear_mode_init(const DiscLevel& L, const SWEParams& p, double amplitude = 10.0) {
  detail::check_sphere(L, p);
  State s;
  s.u = Eigen::VectorXd::Zero(L.n_v());
  s.D = project_scalar(L.Q, [&](const Vec3& x) {
    const Vec3 n = x / x.norm();
    return p.rest_depth + amplitude * (2.0 * n.x() * n.y() + 0.5 * n.z());
  });
  return s;
}

}  // namespace swirk
