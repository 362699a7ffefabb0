// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "swirk/swirk.hpp"

namespace {

using swirk::ExperimentConfig;

void apply_json_config(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  is >> j;
  if (j.contains("scheme")) cfg.scheme = swirk::parse_scheme(j["scheme"].get<std::string>());
  if (j.contains("level")) cfg.level = j["level"].get<int>();
  if (j.contains("dt")) cfg.dt = j["dt"].get<double>();
  if (j.contains("tf")) cfg.tf = j["tf"].get<double>();
  if (j.contains("case")) cfg.test_case = swirk::parse_test_case(j["case"].get<std::string>());
  if (j.contains("ref_dt")) cfg.ref_dt = j["ref_dt"].get<double>();
  if (j.contains("rtol")) cfg.newton.rtol = j["rtol"].get<double>();
  if (j.contains("atol")) cfg.newton.atol = j["atol"].get<double>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (j.contains("verbose")) cfg.verbose = j["verbose"].get<bool>();
}

void print_matrix(const std::string& name, const Eigen::MatrixXd& m) {
  std::cout << name << " =\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      std::cout << (j ? " " : "  ") << std::setprecision(17) << m(i, j);
    std::cout << "\n";
  }
}

void print_vector(const std::string& name, const Eigen::VectorXd& v) {
  std::cout << name << " =";
  for (Eigen::Index i = 0; i < v.size(); ++i) std::cout << " " << std::setprecision(17) << v[i];
  std::cout << "\n";
}

int cmd_tableau(const std::string& scheme_name) {
  const swirk::Scheme scheme = swirk::parse_scheme(scheme_name);
  if (swirk::is_imex(scheme)) {
    const swirk::DoubleButcherTableau t = swirk::ark2();
    print_matrix("A (explicit)", t.A_explicit);
    print_matrix("A (implicit)", t.A_implicit);
    print_vector("b", t.b);
    print_vector("c", t.c);
    return 0;
  }
  const swirk::ButcherTableau t = swirk::irk_tableau(scheme);
  print_matrix("A", t.A);
  print_vector("b", t.b);
  print_vector("c", t.c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implicit Runge-Kutta shallow water testbed"};
  app.require_subcommand(1);

  // --- run ---
  ExperimentConfig cfg;
  std::string scheme = "gl1";
  std::string test_case = "tc6";
  std::string config_path;
  std::string dump_prefix;
  auto* run = app.add_subcommand("run", "run one timestepping experiment");
  auto* opt_scheme = run->add_option("--scheme", scheme, "gl1|gl2|gl3|radau1|radau2|radau3|ark2");
  auto* opt_level = run->add_option("--level", cfg.level, "mesh refinement level");
  auto* opt_dt = run->add_option("--dt", cfg.dt, "timestep (s)");
  auto* opt_tf = run->add_option("--tf", cfg.tf, "end time (s)");
  auto* opt_case = run->add_option("--case", test_case, "tc6|tc2|linear");
  auto* opt_refdt = run->add_option("--ref-dt", cfg.ref_dt, "reference timestep for error measurement (0 = off)");
  auto* opt_rtol = run->add_option("--rtol", cfg.newton.rtol, "nonlinear relative tolerance");
  auto* opt_atol = run->add_option("--atol", cfg.newton.atol, "nonlinear absolute tolerance");
  auto* opt_out = run->add_option("--out", cfg.out, "CSV output path");
  auto* opt_seed = run->add_option("--seed", cfg.seed, "random seed for perturbation studies");
  auto* opt_threads = run->add_option("--threads", cfg.threads, "worker threads for patch solves");
  auto* opt_verbose = run->add_flag("--verbose", cfg.verbose, "trace rows to stderr");
  run->add_option("--config", config_path, "JSON config file; explicit flags override it");
  run->add_option("--dump-fields", dump_prefix, "write coefficient and centroid CSV dumps of the final state");

  // --- tableau ---
  std::string tab_scheme = "gl1";
  auto* tab = app.add_subcommand("tableau", "print Runge-Kutta coefficients");
  tab->add_option("--scheme", tab_scheme, "gl1|gl2|gl3|radau1|radau2|radau3|ark2")->required();

  // --- scan-stability ---
  int scan_level = 4;
  std::string scan_case = "tc6";
  int scan_steps = 50;
  std::vector<double> scan_dts;
  auto* scan = app.add_subcommand("scan-stability", "bracket the largest stable IMEX timestep");
  scan->add_option("--level", scan_level, "mesh refinement level");
  scan->add_option("--case", scan_case, "test case (tc6)");
  scan->add_option("--steps", scan_steps, "steps per candidate dt");
  scan->add_option("--dts", scan_dts, "candidate timesteps (s)")->delimiter(',');

  // --- dump-mesh ---
  int mesh_level = 0;
  std::string mesh_out;
  auto* dm = app.add_subcommand("dump-mesh", "write the mesh in the plain-text debug format");
  dm->add_option("--level", mesh_level, "refinement level");
  dm->add_option("--out", mesh_out, "output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tab) return cmd_tableau(tab_scheme);

    if (*dm) {
      const swirk::MeshHierarchy h = swirk::build_hierarchy(mesh_level + 1, swirk::testcase::kEarthRadius);
      if (mesh_out.empty()) {
        swirk::dump_mesh(h.levels.back(), std::cout);
      } else {
        std::ofstream os(mesh_out);
        if (!os) throw std::runtime_error("cannot open output file: " + mesh_out);
        swirk::dump_mesh(h.levels.back(), os);
      }
      return 0;
    }

    if (*scan) {
      if (scan_case != "tc6") throw std::invalid_argument("scan-stability: only tc6 is supported");
      if (scan_dts.empty()) scan_dts = {50, 100, 200, 400, 800, 1600, 3200};
      const swirk::Discretization disc =
          swirk::build_discretization(scan_level + 1, swirk::testcase::kEarthRadius);
      const swirk::SWEParams params = swirk::earth_params();
      const swirk::State init = swirk::tc6_init(disc.level(scan_level), params);
      const swirk::StabilityScan result =
          swirk::imex_stability_scan(disc.level(scan_level), params, init, scan_dts, scan_steps);
      for (size_t i = 0; i < result.dts.size(); ++i)
        std::cout << "dt=" << result.dts[i] << "  " << (result.stable[i] ? "stable" : "unstable")
                  << "\n";
      std::cout << "max stable dt: " << result.max_stable_dt << "\n";
      if (result.min_unstable_dt > 0.0)
        std::cout << "instability bracket: (" << result.max_stable_dt << ", "
                  << result.min_unstable_dt << "]\n";
      return 0;
    }

    // run: explicit flags take precedence over the config file
    cfg.scheme = swirk::parse_scheme(scheme);
    cfg.test_case = swirk::parse_test_case(test_case);
    if (!config_path.empty()) {
      ExperimentConfig file_cfg;
      apply_json_config(config_path, file_cfg);
      if (!opt_scheme->count()) cfg.scheme = file_cfg.scheme;
      if (!opt_case->count()) cfg.test_case = file_cfg.test_case;
      if (!opt_level->count()) cfg.level = file_cfg.level;
      if (!opt_dt->count()) cfg.dt = file_cfg.dt;
      if (!opt_tf->count()) cfg.tf = file_cfg.tf;
      if (!opt_refdt->count()) cfg.ref_dt = file_cfg.ref_dt;
      if (!opt_rtol->count()) cfg.newton.rtol = file_cfg.newton.rtol;
      if (!opt_atol->count()) cfg.newton.atol = file_cfg.newton.atol;
      if (!opt_out->count()) cfg.out = file_cfg.out;
      if (!opt_seed->count()) cfg.seed = file_cfg.seed;
      if (!opt_threads->count()) cfg.threads = file_cfg.threads;
      if (!opt_verbose->count()) cfg.verbose = file_cfg.verbose;
    }

    const swirk::Discretization disc =
        swirk::build_discretization(cfg.level + 1, swirk::params_for(cfg.test_case).radius);
    swirk::State final_state;
    const swirk::ResultRow row = swirk::run_experiment(disc, cfg, &final_state);
    std::cout << swirk::kCsvHeader << "\n" << swirk::csv_line(row) << "\n";
    if (!cfg.out.empty()) swirk::write_csv(cfg.out, {row});
    if (!dump_prefix.empty()) {
      swirk::write_coeff_csv(dump_prefix + "_u_coeffs.csv", final_state.u);
      swirk::write_coeff_csv(dump_prefix + "_D_coeffs.csv", final_state.D);
      swirk::write_centroid_csv(dump_prefix + "_centroids.csv", disc.level(cfg.level), final_state,
                                swirk::params_for(cfg.test_case).rest_depth);
    }
    return row.status == "ok" ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
