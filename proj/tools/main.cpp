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

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sdot/reports.hpp"

namespace {

// Accepts bare density names plus the "<name><dim>d" shorthand, e.g.
// "gaussian2d".
void parse_density(const std::string& s, std::string& name, int& dim) {
  std::size_t n = s.size();
  if (n > 2 && s[n - 1] == 'd' && std::isdigit(static_cast<unsigned char>(s[n - 2]))) {
    std::size_t k = n - 2;
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    name = s.substr(0, k);
    dim = std::stoi(s.substr(k, n - 1 - k));
  } else {
    name = s;
  }
}

std::string apply_out_dir(const std::string& out) {
  if (out.find('/') != std::string::npos) return out;
  const char* dir = std::getenv("SDOT_OUT_DIR");
  if (!dir || !*dir) return out;
  return (std::filesystem::path(dir) / out).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-discrete optimal transport toolbox"};
  app.require_subcommand(1);

  sdot::ExperimentConfig cfg;
  std::string source_str, target_str, config_file;
  std::string out = "report.json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON config file (overrides flags)");
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--tol", cfg.tol);
    sub->add_option("--out", out, "output report path");
    sub->add_flag("--force", cfg.force, "overwrite an existing report");
    sub->add_option("--dim", cfg.dim);
  };

  auto* solve = app.add_subcommand("solve", "solve dual weights");
  auto* verify = app.add_subcommand("verify", "solve + pushforward checks");
  for (auto* sub : {solve, verify}) {
    add_common(sub);
    sub->add_option("--source", source_str, "source density (e.g. uniform, gaussian2d)");
    sub->add_option("--target", target_str, "target density");
    sub->add_option("--n,--N", cfg.N, "number of target atoms");
    sub->add_option("--radius", cfg.truncation_radius, "target truncation radius");
    sub->add_option("--mode", cfg.quantize_mode, "grid or lloyd");
    sub->add_option("--samples", cfg.samples);
  }

  auto* ce = app.add_subcommand("counterexample", "degenerate potential certificate");
  add_common(ce);
  ce->add_option("--alpha", cfg.alpha);

  auto* wedge = app.add_subcommand("wedge", "boundary wedge volume scaling");
  add_common(wedge);
  wedge->add_option("--lambda", cfg.lambda);
  wedge->add_option("--c", cfg.c);
  wedge->add_option("--theta-min", cfg.theta_min);
  wedge->add_option("--theta-max", cfg.theta_max);
  wedge->add_option("--samples", cfg.samples);

  auto* cone = app.add_subcommand("cone", "slope cone volume scaling");
  add_common(cone);
  cone->add_option("--target", target_str, "full_space or ball");
  cone->add_option("--theta-min", cfg.theta_min);
  cone->add_option("--theta-max", cfg.theta_max);
  cone->add_option("--samples", cfg.samples);

  auto* probe = app.add_subcommand("probe", "strict convexity refinement probe");
  add_common(probe);
  probe->add_option("--source", source_str);
  probe->add_option("--target", target_str);
  probe->add_option("--levels", cfg.levels)->delimiter(',');
  probe->add_option("--radius", cfg.truncation_radius);
  probe->add_option("--mode", cfg.quantize_mode);

  auto* leg = app.add_subcommand("legendre", "conjugate a serialized potential");
  add_common(leg);
  leg->add_option("--potential", cfg.potential_file, "potential JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    // wedge/cone geometry lives in dimension >= 3
    if ((cfg.command == "wedge" || cfg.command == "cone") &&
        sub->count("--dim") == 0)
      cfg.dim = 3;
    if (!source_str.empty()) parse_density(source_str, cfg.source_name, cfg.dim);
    if (!target_str.empty()) parse_density(target_str, cfg.target_name, cfg.dim);
    cfg.out_path = apply_out_dir(out);

    if (!config_file.empty()) {
      std::ifstream is(config_file);
      if (!is) throw std::runtime_error("cannot read config file " + config_file);
      sdot::json j = sdot::json::parse(is);
      std::string cmd = cfg.command;
      cfg = sdot::ExperimentConfig::from_json(j);
      if (cfg.command.empty()) cfg.command = cmd;
    }
    return sdot::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
