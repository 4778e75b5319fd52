// Copyright 2026 the sdot authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sdot/reports.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "sdot/rng.hpp"

#include "sdot/counterexample.hpp"
#include "sdot/diagnostics.hpp"
#include "sdot/verify.hpp"

namespace sdot {

namespace {

json params_to_json(const std::vector<double>& p) {
  json a = json::array();
  for (double v : p) a.push_back(real_to_json(v));
  return a;
}

std::vector<double> params_from_json(const json& j) {
  std::vector<double> p;
  for (const auto& e : j) p.push_back(real_from_json(e));
  return p;
}

std::vector<double> theta_grid(double lo, double hi) {
  std::vector<double> t;
  for (double x = lo; x <= hi * (1.0 + 1e-12); x *= 2.0) t.push_back(x);
  return t;
}

json scaling_to_json(const ScalingReport& r) {
  json j;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json e;
    e["theta"] = real_to_json(row.theta);
    e["volume"] = real_to_json(row.volume);
    e["mc_volume"] = real_to_json(row.mc_volume);
    e["mc_stderr"] = real_to_json(row.mc_stderr);
    e["used_in_fit"] = row.used_in_fit;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  j["fitted_exponent"] = real_to_json(r.fitted_exponent);
  j["ci"] = json::array({real_to_json(r.ci_low), real_to_json(r.ci_high)});
  j["theoretical_exponent"] = real_to_json(r.theoretical_exponent);
  j["verdict"] = r.verdict;
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  os << text;
}

// The report body proper excludes wall-clock data; the timestamp goes to a
// sidecar so identical runs produce identical report bytes.
void emit(const std::string& path, json& report) {
  std::string text = report.dump(2);
  text.push_back('\n');
  write_file(path, text);
  auto now = std::chrono::system_clock::now().time_since_epoch();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  write_file(path + ".time", std::to_string(ms) + "\n");
}

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

json ExperimentConfig::to_json() const {
  json j;
  j["command"] = command;
  j["dim"] = dim;
  j["source"] = {{"name", source_name}, {"params", params_to_json(source_params)}};
  j["target"] = {{"name", target_name}, {"params", params_to_json(target_params)}};
  j["N"] = N;
  j["truncation_radius"] = real_to_json(truncation_radius);
  j["quantize_mode"] = quantize_mode;
  j["seed"] = seed;
  j["tol"] = real_to_json(tol);
  j["samples"] = samples;
  j["alpha"] = real_to_json(alpha);
  j["lambda"] = real_to_json(lambda);
  j["c"] = real_to_json(c);
  j["theta_min"] = real_to_json(theta_min);
  j["theta_max"] = real_to_json(theta_max);
  j["levels"] = levels;
  j["potential_file"] = potential_file;
  j["out_path"] = out_path;
  j["force"] = force;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.command = j.at("command").get<std::string>();
  if (j.contains("dim")) c.dim = j.at("dim").get<int>();
  if (j.contains("source")) {
    c.source_name = j.at("source").at("name").get<std::string>();
    c.source_params = params_from_json(j.at("source").at("params"));
  }
  if (j.contains("target")) {
    c.target_name = j.at("target").at("name").get<std::string>();
    c.target_params = params_from_json(j.at("target").at("params"));
  }
  if (j.contains("N")) c.N = j.at("N").get<int>();
  if (j.contains("truncation_radius"))
    c.truncation_radius = real_from_json(j.at("truncation_radius"));
  if (j.contains("quantize_mode"))
    c.quantize_mode = j.at("quantize_mode").get<std::string>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tol")) c.tol = real_from_json(j.at("tol"));
  if (j.contains("samples")) c.samples = j.at("samples").get<std::uint64_t>();
  if (j.contains("alpha")) c.alpha = real_from_json(j.at("alpha"));
  if (j.contains("lambda")) c.lambda = real_from_json(j.at("lambda"));
  if (j.contains("c")) c.c = real_from_json(j.at("c"));
  if (j.contains("theta_min")) c.theta_min = real_from_json(j.at("theta_min"));
  if (j.contains("theta_max")) c.theta_max = real_from_json(j.at("theta_max"));
  if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<int>>();
  if (j.contains("potential_file"))
    c.potential_file = j.at("potential_file").get<std::string>();
  if (j.contains("out_path")) c.out_path = j.at("out_path").get<std::string>();
  if (j.contains("force")) c.force = j.at("force").get<bool>();
  return c;
}

std::string resolve_output_path(const std::string& out_path, bool force) {
  namespace fs = std::filesystem;
  if (force || !fs::exists(out_path)) return out_path;
  fs::path p(out_path);
  std::string stem = p.stem().string();
  std::string ext = p.extension().string();
  for (int k = 1; k < 100000; ++k) {
    fs::path cand = p.parent_path() / (stem + "." + std::to_string(k) + ext);
    if (!fs::exists(cand)) return cand.string();
  }
  throw std::runtime_error("resolve_output_path: suffix space exhausted");
}

namespace {

QuantizeMode parse_mode(const std::string& s) {
  if (s == "grid") return QuantizeMode::kGrid;
  if (s == "lloyd") return QuantizeMode::kLloyd;
  throw std::invalid_argument("unknown quantize mode: " + s);
}

void run_solve_like(const ExperimentConfig& cfg, json& results,
                    std::string& failed_invariant) {
  SourceDensity source =
      make_density_by_name(cfg.source_name, cfg.dim, cfg.source_params);
  SourceDensity tdens =
      make_density_by_name(cfg.target_name, cfg.dim, cfg.target_params);
  DiscreteMeasure target =
      quantize_target(tdens, cfg.N, cfg.truncation_radius, cfg.seed,
                      parse_mode(cfg.quantize_mode));

  SolveResult sol = solve_weights(source, target, cfg.tol, 200);
  results["weights"] = vector_to_json(sol.weights);
  json masses = json::array(), residuals = json::array();
  for (size_t i = 0; i < target.size(); ++i) {
    masses.push_back(real_to_json(sol.diagram.masses[i]));
    residuals.push_back(real_to_json(sol.diagram.masses[i] - target.masses[i]));
  }
  results["masses"] = std::move(masses);
  results["residuals"] = std::move(residuals);
  results["iterations"] = sol.iterations;
  results["residual"] = real_to_json(sol.residual);
  results["source_mass_deficit"] = real_to_json(source.mass_deficit);
  if (sol.residual > cfg.tol) failed_invariant = "solver residual above tol";

  if (cfg.command == "verify") {
    double err = verify_pushforward(sol.diagram, source, target, cfg.samples,
                                    cfg.seed + 1);
    results["pushforward_max_mass_error"] = real_to_json(err);
    double min_mass = 1e300;
    for (double m : target.masses) min_mass = std::min(min_mass, m);
    // 3-sigma binomial bound on the worst atom plus the solver tolerance
    double bound =
        cfg.tol + 3.0 * std::sqrt(0.25 / static_cast<double>(cfg.samples));
    results["pushforward_bound"] = real_to_json(bound);
    if (err > bound) failed_invariant = "pushforward mass error above 3-sigma bound";

    AlexandrovReport rep =
        verify_alexandrov(sol.diagram, source, target, {}, 1e-7);
    results["max_cell_mass_error"] = real_to_json(rep.max_cell_mass_error);
    results["slopes_in_target_hull"] = rep.slopes_in_target_hull;
    results["hull_exhaustion"] = real_to_json(rep.hull_exhaustion);
    if (!rep.pass && failed_invariant.empty())
      failed_invariant = "weak Monge-Ampere identity check";
  }

  if (cfg.dim == 2)
    results["cells_csv"] = diagram_cells_csv(sol.diagram);
}

void run_counterexample(const ExperimentConfig& cfg, json& results,
                        std::string& failed_invariant) {
  CounterexampleSpec spec(cfg.dim, cfg.alpha);
  results["n"] = spec.n;
  results["alpha"] = real_to_json(spec.alpha);
  results["gamma"] = real_to_json(spec.gamma);

  ConvexityCertificate cert = ce_convexity_certificate(spec);
  results["convexity"] = {
      {"positive_det", cert.positive_det},
      {"min_inequality_margin", real_to_json(cert.min_inequality_margin)},
      {"min_eigenvalue_scan", real_to_json(cert.min_eigenvalue_scan)}};
  if (!cert.positive_det || cert.min_inequality_margin <= 0.0)
    failed_invariant = "convexity certificate";

  std::vector<Eigen::VectorXd> approach;
  for (int k = 1; k <= 6; ++k) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(spec.n);
    x[0] = 1.0;
    x[spec.n - 1] = 1.0 - std::pow(10.0, -k);
    approach.push_back(x);
  }
  auto scan = ce_degeneracy_scan(spec, 10.0, approach);
  json table = json::array();
  double prev = 1e300;
  bool decreasing = true;
  for (const auto& row : scan) {
    json e;
    e["k"] = row.k;
    e["x"] = vector_to_json(row.x);
    e["F"] = real_to_json(row.F);
    e["log_F"] = real_to_json(row.log_F);
    e["gradient_norm"] = real_to_json(row.gradient_norm);
    table.push_back(std::move(e));
    if (row.log_F >= prev) decreasing = false;
    prev = row.log_F;
  }
  results["degeneracy_table"] = std::move(table);
  if (!decreasing && failed_invariant.empty())
    failed_invariant = "boundary degeneracy monotonicity";
}

void run_wedge(const ExperimentConfig& cfg, json& results,
               std::string& failed_invariant) {
  ScalingReport rep =
      wedge_volume_scaling(cfg.dim, cfg.lambda, cfg.c,
                           theta_grid(cfg.theta_min, cfg.theta_max),
                           cfg.samples, cfg.seed);
  results["scaling"] = scaling_to_json(rep);
  results["lambda_threshold"] = real_to_json(lambda_threshold(cfg.dim));
  LambdaClass cls = classify_lambda(cfg.dim, cfg.lambda);
  const char* cname = cls == LambdaClass::kAdmissible ? "ADMISSIBLE"
                      : cls == LambdaClass::kBorderline ? "BORDERLINE"
                                                        : "INADMISSIBLE";
  results["lambda_class"] = cname;
  if (rep.verdict != "MATCH")
    failed_invariant = "wedge scaling exponent mismatch";
  else if (cls != LambdaClass::kAdmissible)
    failed_invariant = std::string("boundary exponent ") + cname +
                       ": scaling verdict BORDERLINE-OR-WORSE";
}

void run_cone(const ExperimentConfig& cfg, json& results,
              std::string& failed_invariant) {
  Domain Y = Domain::full_space(cfg.dim);
  if (cfg.target_name == "ball") {
    Eigen::VectorXd c = 0.5 * Eigen::VectorXd::Unit(cfg.dim, 0);
    Y = Domain::ball(c, 0.5);
  }
  ScalingReport rep = cone_volume_scaling(
      Y, theta_grid(cfg.theta_min, cfg.theta_max), cfg.samples, cfg.seed);
  results["scaling"] = scaling_to_json(rep);
  results["min_normalized_volume"] = real_to_json(rep.min_normalized_volume);
  if (rep.verdict != "LOWER_BOUND_OK")
    failed_invariant = "cone volume lower bound";
}

void run_probe(const ExperimentConfig& cfg, json& results,
               std::string& failed_invariant) {
  SourceDensity source =
      make_density_by_name(cfg.source_name, cfg.dim, cfg.source_params);
  SourceDensity tdens =
      make_density_by_name(cfg.target_name, cfg.dim, cfg.target_params);
  std::vector<Eigen::VectorXd> probes;
  if (cfg.target_name == "counterexample_F") {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(cfg.dim);
    p[cfg.dim - 1] = 1.0;
    probes.push_back(p);
    probes.push_back(-p);
  } else {
    probes.push_back(Eigen::VectorXd::Zero(cfg.dim));
  }
  ProbeReport rep =
      strict_convexity_probe(source, tdens, cfg.levels, probes,
                             cfg.truncation_radius, cfg.seed,
                             parse_mode(cfg.quantize_mode), {}, cfg.tol);
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json e;
    e["N"] = r.N;
    e["max_cell_diameter"] = real_to_json(r.max_cell_diameter);
    e["max_preimage_diameter"] = real_to_json(r.max_preimage_diameter);
    e["neighborhood_radius"] = real_to_json(r.neighborhood_radius);
    e["iterations"] = r.iterations;
    rows.push_back(std::move(e));
  }
  results["rows"] = std::move(rows);
  results["flag"] = rep.flag;
  if (rep.degenerate) failed_invariant = "strict convexity (map degenerate)";
}

void run_legendre(const ExperimentConfig& cfg, json& results,
                  std::string& failed_invariant) {
  if (cfg.potential_file.empty())
    throw std::invalid_argument("legendre: missing potential_file");
  std::ifstream is(cfg.potential_file);
  if (!is)
    throw std::invalid_argument("legendre: cannot read " + cfg.potential_file);
  json j = json::parse(is);
  PiecewiseAffinePotential u = potential_from_json(j).canonical();
  LowerHullPotential conj = legendre_conjugate(u);
  PiecewiseAffinePotential back = legendre_conjugate(conj);
  results["input_pieces"] = static_cast<int>(u.pieces().size());
  results["conjugate"] = hull_to_json(conj);
  results["double_conjugate"] = potential_to_json(back);

  Rng rng(cfg.seed);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(u.dim(), -3.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(u.dim(), 3.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Eigen::VectorXd x = rng.uniform_in_box(lo, hi);
    worst = std::max(worst, std::abs(u.value(x) - back.value(x)));
  }
  results["max_involution_error"] = real_to_json(worst);
  if (worst > 1e-10) failed_invariant = "conjugation involution";
}

}  // namespace

int run(const ExperimentConfig& config) {
  json report;
  report["schema"] = 1;
  report["version"] = kLibraryVersion;
  json cfg_json = config.to_json();
  report["config"] = cfg_json;
  report["config_hash"] = fnv1a_hash(cfg_json.dump());

  json results;
  std::string failed_invariant;
  try {
    if (config.command == "solve" || config.command == "verify")
      run_solve_like(config, results, failed_invariant);
    else if (config.command == "counterexample")
      run_counterexample(config, results, failed_invariant);
    else if (config.command == "wedge")
      run_wedge(config, results, failed_invariant);
    else if (config.command == "cone")
      run_cone(config, results, failed_invariant);
    else if (config.command == "probe")
      run_probe(config, results, failed_invariant);
    else if (config.command == "legendre")
      run_legendre(config, results, failed_invariant);
    else
      throw std::invalid_argument("unknown command: " + config.command);
  } catch (const std::exception& e) {
    report["error"] = e.what();
    report["exit_code"] = 2;
    try {
      std::string path = resolve_output_path(config.out_path, config.force);
      emit(path, report);
    } catch (...) {
    }
    return 2;
  }

  report["results"] = std::move(results);
  int code = failed_invariant.empty() ? 0 : 1;
  if (!failed_invariant.empty()) report["failed_invariant"] = failed_invariant;
  report["exit_code"] = code;
  std::string path = resolve_output_path(config.out_path, config.force);
  emit(path, report);
  return code;
}

}  // namespace sdot
