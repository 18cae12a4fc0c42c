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
#include "tnc/scene.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace tnc {

using Json = nlohmann::ordered_json;

namespace {

Rational rat(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidArgument(where + ": rationals must be \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

Vec vec(const Json& j, const std::string& where) {
  if (j.is_string()) return Vec{rat(j, where)};
  if (!j.is_array() || j.empty()) throw InvalidArgument(where + ": expected a coordinate array");
  Vec v;
  for (const Json& x : j) v.push_back(rat(x, where));
  return v;
}

Json slope_json(const Vec& s) {
  if (s.size() == 1) return format_rational(s[0]);
  Json arr = Json::array();
  for (const Rational& x : s) arr.push_back(format_rational(x));
  return arr;
}

Json vec_json(const Vec& s) { return slope_json(s); }

Json pieces_json(const std::vector<AffinePiece>& pieces) {
  Json arr = Json::array();
  for (const AffinePiece& p : pieces)
    arr.push_back(Json{{"slope", slope_json(p.slope)}, {"const", format_rational(p.constant)}});
  return arr;
}

Json measure_json(const DiscreteMeasure& mu) {
  Json atoms = Json::array(), masses = Json::array();
  for (const Vec& a : mu.atoms()) atoms.push_back(vec_json(a));
  for (const Rational& m : mu.masses()) masses.push_back(format_rational(m));
  return Json{{"atoms", atoms}, {"masses", masses}};
}

Json plmeasure_json(const PLMeasure1D& mu) {
  Json breaks = Json::array();
  for (const Rational& t : mu.breakpoints()) breaks.push_back(format_rational(t));
  Json jumps = Json::array();
  for (const auto& j : mu.jumps())
    jumps.push_back(Json{{"location", format_rational(j.location)}, {"mass", format_rational(j.mass)}});
  Json cdf = Json::array();
  for (const Rational& t : mu.breakpoints())
    cdf.push_back(Json{{"t", format_rational(t)}, {"cdf", format_rational(mu.cdf(t))}});
  return Json{{"breakpoints", breaks}, {"jumps", jumps}, {"cdf_at_breakpoints", cdf}};
}

AffinePiece parse_piece(const Json& j, int dim, const std::string& where) {
  if (!j.contains("slope") || !j.contains("const"))
    throw InvalidArgument(where + ": pieces need slope and const");
  AffinePiece p{vec(j.at("slope"), where + ".slope"), rat(j.at("const"), where + ".const")};
  if (static_cast<int>(p.slope.size()) != dim) throw InvalidArgument(where + ": slope dimension mismatch");
  return p;
}

const ToricHomNorm& norm_ref(const Scene& scene, const std::string& name, const std::string& where) {
  auto it = scene.norms.find(name);
  if (it == scene.norms.end()) throw InvalidArgument(where + ": unknown norm '" + name + "'");
  return it->second;
}

const TruncatedToricNorm& truncated_ref(const Scene& scene, const std::string& name,
                                        const std::string& where) {
  auto it = scene.truncated.find(name);
  if (it == scene.truncated.end()) throw InvalidArgument(where + ": unknown truncated norm '" + name + "'");
  return it->second;
}

const DiscreteMeasure& measure_ref(const Scene& scene, const std::string& name, const std::string& where) {
  auto it = scene.measures.find(name);
  if (it == scene.measures.end()) throw InvalidArgument(where + ": unknown measure '" + name + "'");
  return it->second;
}

}  // namespace

Scene parse_scene(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const std::exception& e) {
    throw InvalidArgument(std::string("scene: JSON parse error: ") + e.what());
  }
  Scene scene;
  if (!root.contains("version") || !root.at("version").is_number_integer())
    throw InvalidArgument("scene: missing integer 'version'");
  scene.version = root.at("version").get<int>();
  if (scene.version != 1) throw InvalidArgument("scene: unsupported schema version");

  if (!root.contains("polytope") || !root.at("polytope").contains("vertices"))
    throw InvalidArgument("scene: missing polytope.vertices");
  std::vector<Vec> verts;
  for (const Json& v : root.at("polytope").at("vertices")) verts.push_back(vec(v, "polytope.vertices"));
  if (verts.empty()) throw InvalidArgument("scene: polytope has no vertices");
  scene.polytope = RationalPolytope::from_points(static_cast<int>(verts[0].size()), verts);
  const RationalPolytope& p = *scene.polytope;

  if (root.contains("norms")) {
    for (const auto& [name, spec] : root.at("norms").items()) {
      std::string where = "norms." + name;
      if (!spec.contains("kind")) throw InvalidArgument(where + ": missing kind");
      std::string kind = spec.at("kind").get<std::string>();
      if (kind == "pl-min") {
        std::vector<AffinePiece> pieces;
        for (const Json& pj : spec.at("pieces")) pieces.push_back(parse_piece(pj, p.dim(), where));
        scene.norms.emplace(name, divisorial_norm(p, std::move(pieces)));
      } else if (kind == "valuation") {
        scene.norms.emplace(name, valuation_norm(p, vec(spec.at("xi"), where + ".xi")));
      } else if (kind == "sampled") {
        std::vector<Rational> values;
        for (const Json& vj : spec.at("values")) values.push_back(rat(vj, where + ".values"));
        if (p.dim() != 1) throw InvalidArgument(where + ": sampled norms require a 1-dimensional polytope");
        Rational lo = p.vertices().front()[0], hi = p.vertices().back()[0];
        scene.norms.emplace(name, ToricHomNorm(p, SampledConcave(lo, hi, std::move(values))));
      } else if (kind == "truncated") {
        long base = spec.value("base_degree", 1L);
        std::vector<std::vector<Rational>> levels;
        for (const Json& lev : spec.at("levels")) {
          std::vector<Rational> vals;
          for (const Json& vj : lev) vals.push_back(rat(vj, where + ".levels"));
          levels.push_back(std::move(vals));
        }
        scene.truncated.emplace(name, TruncatedToricNorm(p, base, std::move(levels)));
      } else {
        throw InvalidArgument(where + ": unknown kind '" + kind + "'");
      }
    }
  }

  if (root.contains("measures")) {
    for (const auto& [name, spec] : root.at("measures").items()) {
      std::string where = "measures." + name;
      std::vector<Vec> atoms;
      std::vector<Rational> masses;
      for (const Json& aj : spec.at("atoms")) atoms.push_back(vec(aj, where + ".atoms"));
      for (const Json& mj : spec.at("masses")) masses.push_back(rat(mj, where + ".masses"));
      scene.measures.emplace(name, DiscreteMeasure(std::move(atoms), std::move(masses)));
    }
  }

  static const std::vector<std::string> known_ops = {
      "vol", "lambda-max", "legendre", "biconjugate", "distance", "spectral-measure",
      "spectral-measure-truncated", "fs-at", "monge-ampere", "canonical-approximant",
      "round-down", "is-finite-type", "quotient-d1", "min-with", "energy", "energy-dual",
      "minimum-norm", "t-s-invariants", "polytope-stats", "lattice-points", "restrict-level"};

  if (!root.contains("tasks") || !root.at("tasks").is_array())
    throw InvalidArgument("scene: missing task list");
  int task_no = 0;
  for (const Json& tj : root.at("tasks")) {
    std::string where = "tasks[" + std::to_string(task_no++) + "]";
    SceneTask t;
    if (!tj.contains("op") || !tj.contains("output"))
      throw InvalidArgument(where + ": tasks need op and output");
    t.op = tj.at("op").get<std::string>();
    t.output = tj.at("output").get<std::string>();
    if (std::find(known_ops.begin(), known_ops.end(), t.op) == known_ops.end())
      throw InvalidArgument(where + ": unknown op '" + t.op + "'");
    t.norm = tj.value("norm", "");
    t.other = tj.value("other", "");
    t.measure = tj.value("measure", "");
    if (tj.contains("p")) t.p = tj.at("p").get<std::string>();
    if (tj.contains("m")) t.m = tj.at("m").get<long>();
    if (tj.contains("d")) t.d = tj.at("d").get<long>();
    if (tj.contains("xi")) t.xi = vec(tj.at("xi"), where + ".xi");

    // Reference validation up front: every task must point at declared objects.
    auto known_norm = [&](const std::string& n) {
      return scene.norms.count(n) > 0 || scene.truncated.count(n) > 0;
    };
    if (!t.norm.empty() && !known_norm(t.norm))
      throw InvalidArgument(where + ": unknown norm '" + t.norm + "'");
    if (!t.other.empty() && !known_norm(t.other))
      throw InvalidArgument(where + ": unknown norm '" + t.other + "'");
    if (!t.measure.empty() && scene.measures.count(t.measure) == 0)
      throw InvalidArgument(where + ": unknown measure '" + t.measure + "'");
    scene.tasks.push_back(std::move(t));
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("scene: cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scene(text);
}

namespace {

Json norm_json(const ToricHomNorm& chi) {
  if (chi.is_pl())
    return Json{{"kind", "pl-min"}, {"pieces", pieces_json(chi.pl().pieces())}};
  Json vals = Json::array();
  for (const Rational& v : chi.sampled().values()) vals.push_back(format_rational(v));
  return Json{{"kind", "sampled"}, {"values", vals}};
}

Json run_task(const Scene& scene, const SceneTask& t, const RunOptions& options, std::string* csv_out) {
  const RationalPolytope& p = *scene.polytope;
  const std::string where = "task '" + t.op + "'";
  Json result{{"op", t.op}};

  if (t.op == "vol" || t.op == "energy") {
    const ToricHomNorm& chi = norm_ref(scene, t.norm, where);
    if (chi.is_pl()) {
      result["value"] = format_rational(volume(chi));
    } else {
      IntervalQ b = volume_bounds(chi);
      result["lower"] = format_rational(b.lo);
      result["upper"] = format_rational(b.hi);
    }
  } else if (t.op == "lambda-max") {
    result["value"] = format_rational(lambda_max(norm_ref(scene, t.norm, where)));
  } else if (t.op == "legendre") {
    result["pieces"] = pieces_json(legendre_transform(norm_ref(scene, t.norm, where).pl()).pieces());
  } else if (t.op == "biconjugate") {
    result["pieces"] = pieces_json(biconjugate(norm_ref(scene, t.norm, where).pl()).pieces());
  } else if (t.op == "distance") {
    const ToricHomNorm& a = norm_ref(scene, t.norm, where);
    const ToricHomNorm& b = norm_ref(scene, t.other, where);
    std::string ps = t.p.value_or("1");
    if (ps == "inf") {
      result["p"] = "inf";
      result["value"] = format_rational(distance_sup(a, b));
    } else {
      long pv = std::stol(ps);
      if (pv < 1) throw InvalidArgument(where + ": p must be >= 1");
      result["p"] = ps;
      Rational dp = distance_pow(a, b, static_cast<unsigned>(pv));
      if (pv == 1) {
        result["value"] = format_rational(dp);
      } else {
        result["value_pow"] = format_rational(dp);
        result["value"] = std::pow(to_double(dp), 1.0 / static_cast<double>(pv));
      }
    }
  } else if (t.op == "spectral-measure") {
    const ToricHomNorm& chi = norm_ref(scene, t.norm, where);
    if (chi.is_pl()) {
      PLMeasure1D mu = spectral_measure(chi);
      result["measure"] = plmeasure_json(mu);
      if (csv_out) *csv_out = mu.csv_table(64);
    } else {
      result["measure"] = measure_json(spectral_measure_empirical(chi));
    }
  } else if (t.op == "spectral-measure-truncated") {
    if (!t.m) throw InvalidArgument(where + ": missing m");
    result["measure"] = measure_json(spectral_measure_truncated(truncated_ref(scene, t.norm, where), *t.m));
  } else if (t.op == "fs-at") {
    if (!t.xi) throw InvalidArgument(where + ": missing xi");
    result["value"] = format_rational(fs_at(norm_ref(scene, t.norm, where), *t.xi));
  } else if (t.op == "monge-ampere") {
    result["measure"] = measure_json(monge_ampere(norm_ref(scene, t.norm, where)));
  } else if (t.op == "canonical-approximant") {
    if (!t.d) throw InvalidArgument(where + ": missing d");
    ToricHomNorm approx = scene.norms.count(t.norm)
                              ? canonical_approximant(norm_ref(scene, t.norm, where), *t.d)
                              : canonical_approximant(truncated_ref(scene, t.norm, where), *t.d);
    result["norm"] = norm_json(approx);
    result["volume"] = format_rational(volume(approx));
  } else if (t.op == "round-down") {
    TruncatedToricNorm down = truncated_ref(scene, t.norm, where).rounded_down();
    Json levels = Json::array();
    for (long r = 0; r < down.level_count(); ++r) {
      Json vals = Json::array();
      for (const Rational& v : down.level_values(r)) vals.push_back(format_rational(v));
      levels.push_back(vals);
    }
    result["base_degree"] = down.base_degree();
    result["levels"] = levels;
  } else if (t.op == "is-finite-type") {
    FiniteTypeResult ft = is_finite_type(norm_ref(scene, t.norm, where));
    result["finite_type"] = ft.finite_type;
    if (ft.finite_type)
      result["certificate"] = pieces_json(ft.certificate);
    else
      result["reason"] = ft.reason;
  } else if (t.op == "quotient-d1") {
    QuotientDistance q = quotient_d1(norm_ref(scene, t.norm, where), norm_ref(scene, t.other, where));
    result["value"] = format_rational(q.value);
    result["minimizer"] = format_rational(q.minimizer);
  } else if (t.op == "min-with") {
    const ToricHomNorm& a = norm_ref(scene, t.norm, where);
    const ToricHomNorm& b = norm_ref(scene, t.other, where);
    result["norm"] = norm_json(ToricHomNorm(p, a.pl().min_with(b.pl())));
  } else if (t.op == "energy-dual") {
    OTOptions opts;
    opts.mass_tolerance = options.ot_tolerance;
    auto [value, sol] = energy_dual(p, measure_ref(scene, t.measure, where), opts);
    result["value"] = to_double(value);
    result["value_exact"] = format_rational(value);
    Json weights = Json::array(), masses = Json::array();
    for (double w : sol.weights) weights.push_back(w);
    for (double m : sol.masses) masses.push_back(m);
    result["solver"] = Json{{"weights", weights},
                            {"masses", masses},
                            {"residual", sol.residual},
                            {"iterations", sol.iterations},
                            {"objective", sol.objective}};
  } else if (t.op == "minimum-norm") {
    result["value"] = format_rational(minimum_norm(norm_ref(scene, t.norm, where)));
  } else if (t.op == "t-s-invariants") {
    if (!t.xi) throw InvalidArgument(where + ": missing xi");
    auto [tv, sv] = t_and_s_invariants(p, *t.xi);
    result["T"] = format_rational(tv);
    result["S"] = format_rational(sv);
  } else if (t.op == "polytope-stats") {
    result["volume"] = format_rational(p.volume());
    result["barycenter"] = vec_json(p.barycenter());
  } else if (t.op == "lattice-points") {
    if (!t.m) throw InvalidArgument(where + ": missing m");
    auto pts = p.lattice_points(*t.m);
    result["count"] = pts.size();
    Json arr = Json::array();
    for (const Vec& q : pts) arr.push_back(vec_json(q));
    result["points"] = arr;
  } else if (t.op == "restrict-level") {
    if (!t.m) throw InvalidArgument(where + ": missing m");
    FiniteDimNorm fd = restrict_to_level(norm_ref(scene, t.norm, where), *t.m);
    result["dimension"] = fd.dim();
    Json vals = Json::array();
    for (const Rational& v : fd.values()) vals.push_back(format_rational(v));
    result["values"] = vals;
  } else {
    throw InvalidArgument(where + ": unhandled op");
  }
  return result;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ComputeError("cannot write '" + tmp.string() + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::string result_json_for_task(const Scene& scene, const SceneTask& task, const RunOptions& options) {
  return run_task(scene, task, options, nullptr).dump(2) + "\n";
}

void run_scene(const Scene& scene, const RunOptions& options) {
  for (const SceneTask& t : scene.tasks) {
    std::string csv;
    Json result = run_task(scene, t, options, options.csv ? &csv : nullptr);
    std::filesystem::path out = std::filesystem::path(options.output_root) / t.output;
    write_atomically(out, result.dump(2) + "\n");
    if (options.csv && !csv.empty()) {
      std::filesystem::path csv_path = out;
      csv_path.replace_extension(".csv");
      write_atomically(csv_path, csv);
    }
  }
}

}  // namespace tnc
