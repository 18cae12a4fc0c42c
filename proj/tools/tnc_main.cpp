/* Copyright (C) 2026 tnc contributors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "acceptance_suite.hpp"
#include "tnc/scene.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
  CLI::App app{"tnc - exact calculus of toric filtration norms"};
  app.require_subcommand(1);

  std::string scene_path;
  std::string out_dir = ".";
  bool csv = false;
  double tol = 1e-6;
  auto* run = app.add_subcommand("run", "execute the tasks of a JSON scene file");
  run->add_option("scene", scene_path, "scene file")->required();
  run->add_flag("--csv", csv, "also write CSV tables for distribution results");
  run->add_option("--tol", tol, "mass tolerance for transport solves")->check(CLI::PositiveNumber);
  run->add_option("--out-dir", out_dir, "directory task output paths are resolved against");

  std::uint64_t seed = 2026;
  std::string filter;
  double self_tol = 1e-6;
  auto* selftest = app.add_subcommand("selftest", "run the bundled acceptance suite");
  selftest->add_option("--seed", seed, "seed for the randomized criteria");
  selftest->add_option("--filter", filter, "run only criteria whose name contains this substring");
  selftest->add_option("--tol", self_tol, "mass tolerance for transport solves")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    tnc::Scene scene;
    try {
      scene = tnc::load_scene(scene_path);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "invalid scene: %s\n", e.what());
      return 1;
    }
    try {
      tnc::RunOptions options;
      options.csv = csv;
      options.ot_tolerance = tol;
      options.output_root = out_dir;
      tnc::run_scene(scene, options);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "computation failed: %s\n", e.what());
      return 2;
    }
    return 0;
  }

  auto results = tnc::acceptance::run_all(seed, self_tol, filter);
  return tnc::acceptance::print_report(results) ? 0 : 2;
}
