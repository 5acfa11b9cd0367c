// Copyright 2026 The asymfb Authors.
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

#include "asymfb/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace asymfb {
namespace {

using nlohmann::json;

const std::map<std::string, std::string>& preset_sources() {
  static const std::map<std::string, std::string> sources = {
      {"fig1", R"({
  "name": "fig1",
  "game": "cournot10",
  "N_z": [0, 2, 5, 8, 10],
  "schedule": "exp-a",
  "T": 10000,
  "seeds": {"count": 50, "base": 1},
  "metrics": ["ne_distance", "group_errors"],
  "trajectory_stride": 10
})"},
      {"fig2", R"({
  "name": "fig2",
  "game": "cournot10",
  "N_z": [5],
  "schedule": "exp-a",
  "T": 10000,
  "seeds": {"count": 50, "base": 1},
  "metrics": ["ne_distance", "group_errors"],
  "trajectory_stride": 10
})"},
      {"fig4", R"({
  "name": "fig4",
  "game": "risk-cournot2",
  "N_z": [1, 2],
  "schedule": "exp-b",
  "T": 5000,
  "seeds": {"count": 50, "base": 1},
  "metrics": ["ne_distance", "group_errors"],
  "trajectory_stride": 10
})"},
  };
  return sources;
}

// Collects violations while walking the document.
class Checker {
 public:
  void fail(const std::string& path, const std::string& what) {
    problems_.push_back(path + ": " + what);
  }
  bool ok() const { return problems_.empty(); }
  std::vector<std::string>& problems() { return problems_; }

  void only_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
    std::set<std::string> names(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
      if (!names.count(key)) fail(join(path, key), "unknown key");
    }
  }

  std::optional<double> real(const json& obj, const std::string& path,
                             const char* key, bool required) {
    if (!obj.contains(key)) {
      if (required) fail(join(path, key), "missing");
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
      fail(join(path, key), "expected a number");
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      fail(join(path, key), "must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<std::uint64_t> integer(const json& obj, const std::string& path,
                                       const char* key, bool required) {
    if (!obj.contains(key)) {
      if (required) fail(join(path, key), "missing");
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) {
      fail(join(path, key), "expected a nonnegative integer");
      return std::nullopt;
    }
    return v.get<std::uint64_t>();
  }

  std::optional<std::string> string(const json& obj, const std::string& path,
                                    const char* key, bool required) {
    if (!obj.contains(key)) {
      if (required) fail(join(path, key), "missing");
      return std::nullopt;
    }
    if (!obj.at(key).is_string()) {
      fail(join(path, key), "expected a string");
      return std::nullopt;
    }
    return obj.at(key).get<std::string>();
  }

  std::optional<Vector> reals(const json& obj, const std::string& path,
                              const char* key, bool required) {
    if (!obj.contains(key)) {
      if (required) fail(join(path, key), "missing");
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_array() || v.empty()) {
      fail(join(path, key), "expected a nonempty list of numbers");
      return std::nullopt;
    }
    Vector out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_number() || !std::isfinite(v[k].get<double>())) {
        fail(join(path, key) + "[" + std::to_string(k) + "]",
             "expected a finite number");
        return std::nullopt;
      }
      out.push_back(v[k].get<double>());
    }
    return out;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  std::vector<std::string> problems_;
};

void parse_quadratic_fields(Checker& c, const json& g, QuadraticGameSpec& q) {
  if (auto v = c.reals(g, "game", "a", false)) q.a = *v;
  if (auto v = c.reals(g, "game", "b", false)) q.b = *v;
  if (auto v = c.reals(g, "game", "e", false)) q.e = *v;
  if (auto v = c.real(g, "game", "offset", false)) q.offset = *v;
  if (auto v = c.real(g, "game", "lower", false)) q.lower = *v;
  if (auto v = c.real(g, "game", "upper", false)) q.upper = *v;
  if (q.a.empty()) c.fail("game.a", "missing");
  if (q.b.size() != q.a.size() || q.e.size() != q.a.size()) {
    c.fail("game", "a, b and e must have the same length");
  }
  for (std::size_t i = 0; i < q.a.size(); ++i) {
    if (!(q.a[i] > 0.0)) {
      c.fail("game.a[" + std::to_string(i) + "]",
             "must be > 0 (cost convex in the own action)");
    }
  }
  if (!(q.lower < q.upper)) c.fail("game", "lower must be < upper");
}

void parse_risk_fields(Checker& c, const json& g, RiskCournotSpec& r) {
  if (auto v = c.reals(g, "game", "alpha", false)) r.alpha = *v;
  if (auto v = c.real(g, "game", "xi_lower", false)) r.xi_lower = *v;
  if (auto v = c.real(g, "game", "xi_upper", false)) r.xi_upper = *v;
  if (auto v = c.real(g, "game", "intercept", false)) r.intercept = *v;
  if (auto v = c.real(g, "game", "cost_slope", false)) r.cost_slope = *v;
  if (auto v = c.real(g, "game", "offset", false)) r.offset = *v;
  if (auto v = c.real(g, "game", "lower", false)) r.lower = *v;
  if (auto v = c.real(g, "game", "upper", false)) r.upper = *v;
  if (r.alpha.size() != 2) c.fail("game.alpha", "needs exactly 2 entries");
  for (std::size_t i = 0; i < r.alpha.size(); ++i) {
    if (!(r.alpha[i] > 0.0 && r.alpha[i] <= 1.0)) {
      c.fail("game.alpha[" + std::to_string(i) + "]", "must lie in (0, 1]");
    }
  }
  if (r.xi_lower > r.xi_upper) c.fail("game", "xi_lower must be <= xi_upper");
  if (r.lower < 0.0) c.fail("game.lower", "must be >= 0");
  if (!(r.lower < r.upper)) c.fail("game", "lower must be < upper");
}

GameConfig parse_game(Checker& c, const json& root) {
  GameConfig gc;
  if (!root.contains("game")) {
    c.fail("game", "missing");
    return gc;
  }
  json g = root.at("game");
  if (g.is_string()) g = json{{"preset", g}};
  if (!g.is_object()) {
    c.fail("game", "expected a preset name or an object");
    return gc;
  }
  const auto preset = c.string(g, "game", "preset", false);
  const auto type = c.string(g, "game", "type", false);
  if (preset) {
    gc.preset = *preset;
    if (*preset == "cournot10") {
      gc.kind = GameKind::kQuadratic;
      gc.quadratic = cournot10_spec();
    } else if (*preset == "risk-cournot2") {
      gc.kind = GameKind::kRisk;
      gc.risk = risk_cournot2_spec();
    } else {
      c.fail("game.preset", "unknown preset '" + *preset + "'");
      return gc;
    }
    if (type && *type != (gc.kind == GameKind::kRisk ? "risk" : "quadratic")) {
      c.fail("game.type", "does not match the preset");
    }
  } else if (type) {
    if (*type == "quadratic") {
      gc.kind = GameKind::kQuadratic;
      gc.quadratic = QuadraticGameSpec{};
    } else if (*type == "risk") {
      gc.kind = GameKind::kRisk;
    } else {
      c.fail("game.type", "must be 'quadratic' or 'risk'");
      return gc;
    }
  } else {
    c.fail("game", "needs 'preset' or 'type'");
    return gc;
  }
  if (gc.kind == GameKind::kQuadratic) {
    c.only_keys(g, "game",
                {"preset", "type", "a", "b", "e", "offset", "lower", "upper"});
    parse_quadratic_fields(c, g, gc.quadratic);
  } else {
    c.only_keys(g, "game",
                {"preset", "type", "alpha", "xi_lower", "xi_upper", "intercept",
                 "cost_slope", "offset", "lower", "upper"});
    parse_risk_fields(c, g, gc.risk);
  }
  return gc;
}

std::optional<PowerLaw> parse_power_law(Checker& c, const json& obj,
                                        const std::string& path) {
  if (!obj.is_object()) {
    c.fail(path, "expected an object");
    return std::nullopt;
  }
  c.only_keys(obj, path, {"coeff", "nz_exp", "n_exp", "t_exp", "inverse_m"});
  PowerLaw p;
  if (auto v = c.real(obj, path, "coeff", true)) p.coeff = *v;
  if (auto v = c.real(obj, path, "nz_exp", false)) p.nz_exp = *v;
  if (auto v = c.real(obj, path, "n_exp", false)) p.n_exp = *v;
  if (auto v = c.real(obj, path, "t_exp", true)) p.t_exp = *v;
  if (obj.contains("inverse_m")) {
    if (!obj.at("inverse_m").is_boolean()) {
      c.fail(path + ".inverse_m", "expected true or false");
    } else {
      p.inverse_m = obj.at("inverse_m").get<bool>();
    }
  }
  if (!(p.coeff > 0.0)) c.fail(path + ".coeff", "must be > 0");
  if (p.t_exp > 0.0) c.fail(path + ".t_exp", "must be <= 0 (non-increasing)");
  return p;
}

ScheduleSet parse_schedule(Checker& c, const json& root) {
  ScheduleSet s;
  if (!root.contains("schedule")) {
    c.fail("schedule", "missing");
    return s;
  }
  json j = root.at("schedule");
  if (j.is_string()) j = json{{"preset", j}};
  if (!j.is_object()) {
    c.fail("schedule", "expected a preset name or an object");
    return s;
  }
  c.only_keys(j, "schedule",
              {"preset", "name", "eta_f", "eta_z", "delta", "samples"});
  const auto preset = c.string(j, "schedule", "preset", false);
  if (preset) {
    if (auto p = schedule_preset(*preset)) {
      s = *p;
    } else {
      c.fail("schedule.preset", "unknown preset '" + *preset + "'");
      return s;
    }
  } else {
    s.name = "custom";
  }
  if (auto v = c.string(j, "schedule", "name", false)) s.name = *v;
  const bool need = !preset.has_value();
  for (auto [key, slot] : {std::pair{"eta_f", &s.eta_f},
                           std::pair{"eta_z", &s.eta_z},
                           std::pair{"delta", &s.delta}}) {
    if (j.contains(key)) {
      if (auto p = parse_power_law(c, j.at(key), std::string("schedule.") + key)) {
        *slot = *p;
      }
    } else if (need) {
      c.fail(std::string("schedule.") + key, "missing");
    }
  }
  if (j.contains("samples")) {
    const json& sj = j.at("samples");
    if (sj.is_null()) {
      s.samples.reset();
    } else if (!sj.is_object()) {
      c.fail("schedule.samples", "expected an object or null");
    } else {
      c.only_keys(sj, "schedule.samples", {"n0", "exponent"});
      SampleSchedule ss = s.samples.value_or(SampleSchedule{});
      if (auto v = c.integer(sj, "schedule.samples", "n0", false)) ss.n0 = *v;
      if (auto v = c.real(sj, "schedule.samples", "exponent", false)) {
        ss.exponent = *v;
      }
      if (ss.n0 < 1) c.fail("schedule.samples.n0", "must be >= 1");
      if (ss.exponent < 0.0) c.fail("schedule.samples.exponent", "must be >= 0");
      s.samples = ss;
    }
  }
  return s;
}

json power_law_json(const PowerLaw& p) {
  return json{{"coeff", p.coeff},
              {"nz_exp", p.nz_exp},
              {"n_exp", p.n_exp},
              {"t_exp", p.t_exp},
              {"inverse_m", p.inverse_m}};
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid config:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

std::size_t GameConfig::num_agents() const {
  return kind == GameKind::kRisk ? 2 : quadratic.num_agents();
}

GameInstance GameConfig::build() const {
  if (kind == GameKind::kRisk) {
    return make_risk_game(risk, preset.empty() ? "risk" : preset);
  }
  return make_quadratic_game(quadratic, preset.empty() ? "quadratic" : preset);
}

bool ExperimentConfig::wants(const std::string& metric) const {
  return std::find(metrics.begin(), metrics.end(), metric) != metrics.end();
}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("syntax: ") + e.what()});
  }
  Checker c;
  if (!root.is_object()) throw ConfigError({"top level: expected an object"});
  c.only_keys(root, "",
              {"name", "game", "N", "N_z", "schedule", "T", "seeds", "metrics",
               "output_dir", "jobs", "trajectory_stride"});

  ExperimentConfig cfg;
  cfg.name = c.string(root, "", "name", false).value_or("experiment");
  if (cfg.name.empty() ||
      cfg.name.find_first_of("/\\") != std::string::npos) {
    c.fail("name", "must be a nonempty name without path separators");
  }
  cfg.game = parse_game(c, root);
  // The agent count is known whenever the coefficient lists agree in length,
  // even if their values are invalid.
  const QuadraticGameSpec& q = cfg.game.quadratic;
  const bool game_ok =
      c.ok() || cfg.game.kind == GameKind::kRisk ||
      (q.num_agents() > 0 && q.b.size() == q.num_agents() &&
       q.e.size() == q.num_agents());
  const std::size_t n = cfg.game.num_agents();
  if (auto v = c.integer(root, "", "N", false); v && game_ok && *v != n) {
    c.fail("N", "is " + std::to_string(*v) + " but the game has " +
                    std::to_string(n) + " agents");
  }

  if (!root.contains("N_z")) {
    c.fail("N_z", "missing");
  } else {
    json nz = root.at("N_z");
    if (nz.is_number()) nz = json::array({nz});
    if (!nz.is_array() || nz.empty()) {
      c.fail("N_z", "expected a nonempty list of integers");
    } else {
      for (std::size_t k = 0; k < nz.size(); ++k) {
        const std::string path = "N_z[" + std::to_string(k) + "]";
        if (!nz[k].is_number_unsigned()) {
          c.fail(path, "expected a nonnegative integer");
          continue;
        }
        const std::size_t v = nz[k].get<std::size_t>();
        if (game_ok && v > n) {
          c.fail(path, "N_z = " + std::to_string(v) + " exceeds N = " +
                           std::to_string(n));
        }
        if (std::find(cfg.num_zo.begin(), cfg.num_zo.end(), v) !=
            cfg.num_zo.end()) {
          c.fail(path, "duplicate value " + std::to_string(v));
        }
        cfg.num_zo.push_back(v);
      }
    }
  }

  cfg.schedule = parse_schedule(c, root);

  if (auto v = c.integer(root, "", "T", true)) {
    if (*v < 1) c.fail("T", "must be >= 1");
    cfg.episodes = *v;
  }

  if (!root.contains("seeds")) {
    c.fail("seeds", "missing");
  } else if (!root.at("seeds").is_object()) {
    c.fail("seeds", "expected an object {count, base}");
  } else {
    const json& s = root.at("seeds");
    c.only_keys(s, "seeds", {"count", "base"});
    if (auto v = c.integer(s, "seeds", "count", true)) {
      if (*v < 1) c.fail("seeds.count", "must be >= 1");
      cfg.seed_count = *v;
    }
    cfg.base_seed = c.integer(s, "seeds", "base", false).value_or(0);
  }

  if (root.contains("metrics")) {
    const json& m = root.at("metrics");
    if (!m.is_array()) {
      c.fail("metrics", "expected a list");
    } else {
      for (std::size_t k = 0; k < m.size(); ++k) {
        const std::string path = "metrics[" + std::to_string(k) + "]";
        if (!m[k].is_string()) {
          c.fail(path, "expected a string");
          continue;
        }
        const std::string name = m[k].get<std::string>();
        if (name != "ne_distance" && name != "regret" && name != "group_errors") {
          c.fail(path, "unknown metric '" + name +
                           "' (ne_distance, regret, group_errors)");
        } else if (!cfg.wants(name)) {
          cfg.metrics.push_back(name);
        }
      }
    }
  } else {
    cfg.metrics = {"ne_distance"};
  }

  cfg.output_dir = c.string(root, "", "output_dir", false).value_or("");
  if (auto v = c.integer(root, "", "jobs", false)) {
    if (*v < 1) c.fail("jobs", "must be >= 1");
    cfg.jobs = *v;
  }
  if (auto v = c.integer(root, "", "trajectory_stride", false)) {
    if (*v < 1) c.fail("trajectory_stride", "must be >= 1");
    cfg.trajectory_stride = *v;
  }

  // Semantic checks that need the whole config.
  if (c.ok()) {
    try {
      const GameInstance game = cfg.game.build();
      if ((cfg.wants("ne_distance") || cfg.wants("group_errors")) &&
          !game.nash) {
        c.fail("metrics", "the game has no known equilibrium");
      }
      const auto m = game.constants ? game.constants->m : std::nullopt;
      for (std::size_t nz : cfg.num_zo) {
        try {
          BoundSchedule bound(cfg.schedule, nz, n, m);
          if (nz > 0 && game.is_stochastic() && !bound.has_samples()) {
            c.fail("schedule.samples",
                   "required: zeroth-order agents of this game sample costs");
            break;
          }
        } catch (const std::exception& e) {
          c.fail("schedule", std::string(e.what()) + " (N_z = " +
                                 std::to_string(nz) + ")");
          break;
        }
      }
    } catch (const std::exception& e) {
      c.fail("game", e.what());
    }
  }
  if (!c.ok()) throw ConfigError(std::move(c.problems()));
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path + ": cannot open"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg, bool include_runtime) {
  json g;
  if (!cfg.game.preset.empty()) g["preset"] = cfg.game.preset;
  if (cfg.game.kind == GameKind::kQuadratic) {
    const auto& q = cfg.game.quadratic;
    g["type"] = "quadratic";
    g["a"] = q.a;
    g["b"] = q.b;
    g["e"] = q.e;
    g["offset"] = q.offset;
    g["lower"] = q.lower;
    g["upper"] = q.upper;
  } else {
    const auto& r = cfg.game.risk;
    g["type"] = "risk";
    g["alpha"] = r.alpha;
    g["xi_lower"] = r.xi_lower;
    g["xi_upper"] = r.xi_upper;
    g["intercept"] = r.intercept;
    g["cost_slope"] = r.cost_slope;
    g["offset"] = r.offset;
    g["lower"] = r.lower;
    g["upper"] = r.upper;
  }
  json s{{"name", cfg.schedule.name},
         {"eta_f", power_law_json(cfg.schedule.eta_f)},
         {"eta_z", power_law_json(cfg.schedule.eta_z)},
         {"delta", power_law_json(cfg.schedule.delta)}};
  if (cfg.schedule.samples) {
    s["samples"] = {{"n0", cfg.schedule.samples->n0},
                    {"exponent", cfg.schedule.samples->exponent}};
  } else {
    s["samples"] = nullptr;
  }
  json root{{"name", cfg.name},
            {"game", g},
            {"N", cfg.num_agents()},
            {"N_z", cfg.num_zo},
            {"schedule", s},
            {"T", cfg.episodes},
            {"seeds", {{"count", cfg.seed_count}, {"base", cfg.base_seed}}},
            {"metrics", cfg.metrics},
            {"trajectory_stride", cfg.trajectory_stride}};
  if (include_runtime) {
    if (!cfg.output_dir.empty()) root["output_dir"] = cfg.output_dir;
    root["jobs"] = cfg.jobs;
  }
  return root.dump(2) + "\n";
}

std::optional<ExperimentConfig> experiment_preset(const std::string& name) {
  const auto& src = preset_sources();
  const auto it = src.find(name);
  if (it == src.end()) return std::nullopt;
  return parse_config(it->second);
}

std::vector<std::string> experiment_preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, src] : preset_sources()) names.push_back(name);
  return names;
}

std::string experiment_preset_source(const std::string& name) {
  const auto& src = preset_sources();
  const auto it = src.find(name);
  if (it == src.end()) throw std::out_of_range("unknown preset " + name);
  return it->second + "\n";
}

}  // namespace asymfb
