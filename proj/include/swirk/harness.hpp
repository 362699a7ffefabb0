// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "swirk/imex.hpp"
#include "swirk/irk.hpp"
#include "swirk/multigrid.hpp"
#include "swirk/tableaux.hpp"
#include "swirk/testcases.hpp"

namespace swirk {

enum class TestCase { Tc6, Tc2, Linear };

inline TestCase parse_test_case(const std::string& name) {
  if (name == "tc6") return TestCase::Tc6;
  if (name == "tc2") return TestCase::Tc2;
  if (name == "linear") return TestCase::Linear;
  throw std::invalid_argument("unknown test case: " + name);
}

inline std::string test_case_name(TestCase c) {
  switch (c) {
    case TestCase::Tc6: return "tc6";
    case TestCase::Tc2: return "tc2";
    case TestCase::Linear: return "linear";
  }
  return "?";
}

struct ExperimentConfig {
  Scheme scheme = Scheme::Gl1;
  int level = 3;
  double dt = 600.0;
  double tf = 3600.0;
  TestCase test_case = TestCase::Tc6;
  NewtonConfig newton;
  KrylovConfig krylov;
  double ref_dt = 0.0;  // > 0 enables error measurement against a small-step run
  std::string out;
  unsigned seed = 0;
  int threads = 1;
  bool verbose = false;
};

struct ResultRow {
  std::string scheme;
  int level = 0;
  double dt = 0.0;
  long steps = 0;
  long newton_its = 0;
  long krylov_its = 0;
  double its_per_step = 0.0;
  double wallclock_s = 0.0;
  double err_eta = std::numeric_limits<double>::quiet_NaN();
  double err_u = std::numeric_limits<double>::quiet_NaN();
  double mass_drift = std::numeric_limits<double>::quiet_NaN();
  double energy_drift = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
};

inline const char* kCsvHeader =
    "schema,scheme,level,dt,steps,newton_its,krylov_its,its_per_step,wallclock_s,err_eta,err_u,"
    "mass_drift,energy_drift,status";

inline std::string csv_line(const ResultRow& r) {
  std::ostringstream os;
  os.precision(17);
  os << "v1," << r.scheme << "," << r.level << "," << r.dt << "," << r.steps << ","
     << r.newton_its << "," << r.krylov_its << "," << r.its_per_step << "," << r.wallclock_s
     << "," << r.err_eta << "," << r.err_u << "," << r.mass_drift << "," << r.energy_drift << ","
     << r.status;
  return os.str();
}

inline void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << kCsvHeader << "\n";
  for (const auto& r : rows) os << csv_line(r) << "\n";
}

inline SWEParams params_for(TestCase c) {
  switch (c) {
    case TestCase::Tc6: return earth_params(testcase::kRhH0);
    case TestCase::Tc2: return earth_params(testcase::kTc2GH0 / testcase::kGravity);
    case TestCase::Linear: return earth_params(testcase::kRhH0);
  }
  throw std::logic_error("params_for: unreachable");
}

inline State initial_state(const DiscLevel& L, const SWEParams& p, TestCase c) {
  switch (c) {
    case TestCase::Tc6: return tc6_init(L, p);
    case TestCase::Tc2: return tc2_init(L, p);
    case TestCase::Linear: return linear_mode_init(L, p);
  }
  throw std::logic_error("initial_state: unreachable");
}

/// Travelling-wave state with the projection's unbalanced fast-wave content
/// removed by a damped spin-up: backward Euler steps sized so the
/// inertia-gravity band sees omega*dt of order one and decays, while the slow
/// wave is barely touched. Used for timestepping-order measurements, where
/// the raw projected state's wave noise would otherwise dominate the error
/// floor.
inline State tc6_balanced_init(const Discretization& disc, int level, const SWEParams& params,
                               int n_filter_steps = 24, double filter_dt = 3600.0) {
  const DiscLevel& L = disc.level(level);
  State s = tc6_init(L, params);
  const SweModel model(L, params);
  const ButcherTableau tab = radau_iia(1);
  NewtonConfig cfg;
  cfg.rtol = 1e-10;
  MonolithicMgSolver solver(disc, level, tab.s);
  for (int i = 0; i < n_filter_steps; ++i) {
    auto [next, stats] = irk_step(model, s, filter_dt, tab, cfg, solver);
    if (!stats.converged)
      throw std::runtime_error("tc6_balanced_init: spin-up step failed (" + stats.failure + ")");
    s = std::move(next);
  }
  return s;
}

/// Relative L2 errors of elevation (eta = D - H) and velocity against a
/// reference state on the same spaces. Throws on a zero reference norm.
inline std::pair<double, double> error_norms(const DiscLevel& L, const State& s, const State& ref,
                                             double rest_depth) {
  const Eigen::VectorXd eta = s.D.array() - rest_depth;
  const Eigen::VectorXd eta_ref = ref.D.array() - rest_depth;
  const Eigen::VectorXd deta = eta - eta_ref;
  const double eta_ref_norm = std::sqrt(eta_ref.dot(L.M_D.cwiseProduct(eta_ref)));
  const Eigen::VectorXd du = s.u - ref.u;
  const double u_ref_norm = std::sqrt(ref.u.dot(L.M_u * ref.u));
  if (eta_ref_norm == 0.0 || u_ref_norm == 0.0)
    throw std::invalid_argument("error_norms: zero reference norm");
  const double err_eta = std::sqrt(deta.dot(L.M_D.cwiseProduct(deta))) / eta_ref_norm;
  const double err_u = std::sqrt(du.dot(L.M_u * du)) / u_ref_norm;
  return {err_eta, err_u};
}

inline double total_mass(const DiscLevel& L, const State& s) { return L.M_D.dot(s.D); }

/// Total energy: the quadratic wave energy for the linearised system,
/// otherwise the full shallow water energy integral.
inline double total_energy(const DiscLevel& L, const SWEParams& p, const State& s, bool linear) {
  if (linear) {
    const Eigen::VectorXd eta = s.D.array() - p.rest_depth;
    return 0.5 * p.rest_depth * s.u.dot(L.M_u * s.u) +
           0.5 * p.gravity * eta.dot(L.M_D.cwiseProduct(eta));
  }
  double e = 0.0;
  for (int c = 0; c < L.mesh->n_cells(); ++c) {
    const CellTab& t = L.cells[static_cast<size_t>(c)];
    double ke = 0.0;
    for (int q = 0; q < 6; ++q) {
      Vec3 uq = Vec3::Zero();
      for (int j = 0; j < 6; ++j)
        uq += s.u[t.vdof[static_cast<size_t>(j)]] * t.val[static_cast<size_t>(q)][static_cast<size_t>(j)];
      ke += t.wdet[static_cast<size_t>(q)] * uq.squaredNorm();
    }
    const double d = s.D[c];
    const double area = L.geom.area[static_cast<size_t>(c)];
    e += 0.5 * d * ke + (0.5 * p.gravity * d * d + p.gravity * d * p.topo(c)) * area;
  }
  return e;
}

struct TrajectoryResult {
  State state;
  SolveStats stats;
  long steps = 0;
  std::string status = "ok";
};

inline long step_count(double tf, double dt) {
  if (!(dt > 0.0) || tf < 0.0) throw std::invalid_argument("step_count: need tf >= dt > 0");
  const long n = std::llround(tf / dt);
  if (std::abs(static_cast<double>(n) * dt - tf) > 1e-9 * std::max(tf, dt))
    throw std::invalid_argument("step_count: dt must divide the horizon");
  return n;
}

/// Steps the configured scheme from the given initial state to the horizon.
/// Solver failures stop the run and mark the status; the partial state is
/// returned as-is.
inline TrajectoryResult integrate(const Discretization& disc, const ExperimentConfig& cfg,
                                  const SWEParams& params, const State& initial, double dt,
                                  double tf) {
  const DiscLevel& L = disc.level(cfg.level);
  TrajectoryResult res;
  res.state = initial;
  const long n_steps = step_count(tf, dt);
  if (is_imex(cfg.scheme)) {
    if (cfg.test_case == TestCase::Linear)
      throw std::invalid_argument("integrate: the IMEX path expects the nonlinear forms");
    if (n_steps == 0) return res;
    ImexWorkspace ws(L, params, dt);
    for (long i = 0; i < n_steps; ++i) {
      auto [next, stats] = imex_step(ws, res.state);
      res.state = std::move(next);
      res.stats.accumulate(stats);
      ++res.steps;
      if (!stats.converged || !res.state.D.allFinite() || !res.state.u.allFinite()) {
        res.status = stats.converged ? "unstable" : "failed";
        break;
      }
    }
    return res;
  }
  const ButcherTableau tab = irk_tableau(cfg.scheme);
  std::unique_ptr<ResidualModel> model;
  if (cfg.test_case == TestCase::Linear)
    model = std::make_unique<LinearSweModel>(L, params);
  else
    model = std::make_unique<SweModel>(L, params);
  MonolithicMgSolver solver(disc, cfg.level, tab.s, cfg.krylov, cfg.threads);
  for (long i = 0; i < n_steps; ++i) {
    auto [next, stats] = irk_step(*model, res.state, dt, tab, cfg.newton, solver);
    res.stats.accumulate(stats);
    if (!stats.converged) {
      res.status = "failed";
      break;
    }
    res.state = std::move(next);
    ++res.steps;
    if (!res.state.D.allFinite() || !res.state.u.allFinite()) {
      res.status = "unstable";
      break;
    }
  }
  return res;
}

/// Reruns the same scheme and spaces with the small reference step, isolating
/// the time discretisation error of the main run.
inline State reference_solution(const Discretization& disc, const ExperimentConfig& cfg,
                                const SWEParams& params, const State& initial) {
  if (cfg.tf == 0.0) return initial;
  TrajectoryResult ref = integrate(disc, cfg, params, initial, cfg.ref_dt, cfg.tf);
  if (ref.status != "ok")
    throw std::runtime_error("reference_solution: reference run failed (" + ref.status + ")");
  return std::move(ref.state);
}

/// Runs one experiment: integrates, optionally measures errors against a
/// reference run, and reports a CSV row. Solver failures are recorded in the
/// row status rather than thrown. The final state is exported through
/// final_state when requested.
inline ResultRow run_experiment(const Discretization& disc, const ExperimentConfig& cfg,
                                State* final_state = nullptr) {
  const DiscLevel& L = disc.level(cfg.level);
  const SWEParams params = params_for(cfg.test_case);
  const State initial = initial_state(L, params, cfg.test_case);
  const bool linear = cfg.test_case == TestCase::Linear;

  ResultRow row;
  row.scheme = scheme_name(cfg.scheme);
  row.level = cfg.level;
  row.dt = cfg.dt;

  const double mass0 = total_mass(L, initial);
  const double energy0 = total_energy(L, params, initial, linear);

  double wallclock = 0.0;
  TrajectoryResult traj;
  {
    ScopedTimer t(wallclock);
    traj = integrate(disc, cfg, params, initial, cfg.dt, cfg.tf);
  }
  row.steps = traj.steps;
  row.newton_its = traj.stats.newton_its;
  row.krylov_its = traj.stats.krylov_its;
  row.its_per_step = traj.steps > 0 ? static_cast<double>(traj.stats.krylov_its) / traj.steps : 0.0;
  row.wallclock_s = wallclock;
  row.status = traj.status;

  if (traj.status == "ok") {
    row.mass_drift = std::abs(total_mass(L, traj.state) - mass0) / std::abs(mass0);
    row.energy_drift =
        std::abs(total_energy(L, params, traj.state, linear) - energy0) / std::abs(energy0);
    if (cfg.ref_dt > 0.0) {
      const State ref = reference_solution(disc, cfg, params, initial);
      const auto [err_eta, err_u] = error_norms(L, traj.state, ref, params.rest_depth);
      row.err_eta = err_eta;
      row.err_u = err_u;
    }
  }
  if (cfg.verbose) std::cerr << csv_line(row) << "\n";
  if (final_state != nullptr) *final_state = std::move(traj.state);
  return row;
}

inline ResultRow run_experiment(const ExperimentConfig& cfg) {
  const Discretization disc = build_discretization(cfg.level + 1, params_for(cfg.test_case).radius);
  return run_experiment(disc, cfg);
}

/// Field dump: one line per dof.
inline void write_coeff_csv(const std::string& path, const Eigen::VectorXd& coeffs) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << "dof,coefficient\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) os << i << "," << coeffs[i] << "\n";
}

/// Cell-centroid samples of a scalar field and the velocity magnitude, for
/// external plotting.
inline void write_centroid_csv(const std::string& path, const DiscLevel& L, const State& s,
                               double rest_depth) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << "lon,lat,eta,umag\n";
  os.precision(10);
  const Vec3 bary(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
  for (int c = 0; c < L.mesh->n_cells(); ++c) {
    const auto& cell = L.mesh->cells[static_cast<size_t>(c)];
    const Vec3 x = (L.mesh->vertices[static_cast<size_t>(cell[0])] +
                    L.mesh->vertices[static_cast<size_t>(cell[1])] +
                    L.mesh->vertices[static_cast<size_t>(cell[2])]) /
                   3.0;
    const double lon = std::atan2(x.y(), x.x());
    const double lat = std::asin(std::clamp(x.z() / x.norm(), -1.0, 1.0));
    const Vec3 u = evaluate_vector(L.V, s.u, c, bary);
    os << lon << "," << lat << "," << s.D[c] - rest_depth << "," << u.norm() << "\n";
  }
}

}  // namespace swirk
