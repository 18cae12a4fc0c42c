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
#pragma once

#include "tnc/energy.hpp"

#include <map>
#include <optional>
#include <string>

namespace tnc {

/// One named computation from a scene file.
struct SceneTask {
  std::string op;
  std::string output;
  std::string norm;     // primary norm argument, when applicable
  std::string other;    // second norm argument
  std::string measure;  // measure argument
  std::optional<std::string> p;  // "1", "2", ..., or "inf"
  std::optional<long> m;
  std::optional<long> d;
  std::optional<Vec> xi;
};

/// Parsed batch scene: one polytope, named norms and measures, tasks in
/// declaration order.
struct Scene {
  int version = 0;
  std::optional<RationalPolytope> polytope;
  std::map<std::string, ToricHomNorm> norms;
  std::map<std::string, TruncatedToricNorm> truncated;
  std::map<std::string, DiscreteMeasure> measures;
  std::vector<SceneTask> tasks;
};

/// Parses and validates a scene file. Throws InvalidArgument with a
/// diagnostic on any parse, schema, or invariant failure.
Scene load_scene(const std::string& path);
Scene parse_scene(const std::string& json_text);

struct RunOptions {
  bool csv = false;
  double ot_tolerance = 1e-6;
  std::string output_root = ".";
};

/// Executes all tasks in order, writing one JSON result per task
/// (atomically; byte-deterministic for a fixed scene and options).
/// Throws ComputeError on computation failures.
void run_scene(const Scene& scene, const RunOptions& options);

/// Serialization helpers shared by the CLI and tests.
std::string result_json_for_task(const Scene& scene, const SceneTask& task, const RunOptions& options);

}  // namespace tnc
