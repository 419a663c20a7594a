// Copyright 2026 The lrvqe Authors
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

#include "lrvqe/serialize.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "lrvqe/error.hpp"

namespace lrvqe {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config key '" + path + "': " + what);
}

void reject_unknown(const json& obj, const std::string& prefix,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown config key '" + prefix + key + "'");
    }
  }
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "must be finite");
  return d;
}

long long get_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long long>();
}

std::vector<double> get_number_list(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

OptimizerConfig optimizer_from_json(const json& obj) {
  if (!obj.is_object()) fail("optimizer", "expected an object");
  reject_unknown(obj, "optimizer.", {"max_iters", "grad_tol", "f_tol", "restarts", "init_scale"});
  OptimizerConfig cfg;
  if (obj.contains("max_iters")) {
    const long long v = get_integer(obj["max_iters"], "optimizer.max_iters");
    if (v < 1 || v > 10'000'000) fail("optimizer.max_iters", "must lie in [1, 10000000]");
    cfg.max_iters = static_cast<int>(v);
  }
  if (obj.contains("grad_tol")) {
    cfg.grad_tol = get_number(obj["grad_tol"], "optimizer.grad_tol");
    if (!(cfg.grad_tol > 0.0)) fail("optimizer.grad_tol", "must be > 0");
  }
  if (obj.contains("f_tol")) {
    cfg.f_tol = get_number(obj["f_tol"], "optimizer.f_tol");
    if (!(cfg.f_tol > 0.0)) fail("optimizer.f_tol", "must be > 0");
  }
  if (obj.contains("restarts")) {
    const long long v = get_integer(obj["restarts"], "optimizer.restarts");
    if (v < 1 || v > 1000) fail("optimizer.restarts", "must lie in [1, 1000]");
    cfg.restarts = static_cast<int>(v);
  }
  if (obj.contains("init_scale")) {
    cfg.init_scale = get_number(obj["init_scale"], "optimizer.init_scale");
    if (cfg.init_scale < 0.0) fail("optimizer.init_scale", "must be >= 0");
  }
  return cfg;
}

}  // namespace

json to_json(const OptimizerConfig& cfg) {
  json j;
  j["max_iters"] = cfg.max_iters;
  j["grad_tol"] = cfg.grad_tol;
  j["f_tol"] = cfg.f_tol;
  j["restarts"] = cfg.restarts;
  j["init_scale"] = cfg.init_scale;
  return j;
}

ConfigFile config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(doc, "", {"alphas", "lambdas", "sizes", "kinds", "p_max", "threshold", "strategy",
                           "optimizer", "base_seed", "output"});
  ConfigFile cfg;
  SweepConfig& s = cfg.sweep;
  if (doc.contains("alphas")) {
    s.alphas = get_number_list(doc["alphas"], "alphas");
    for (std::size_t i = 0; i < s.alphas.size(); ++i) {
      if (s.alphas[i] < 0.0) fail("alphas[" + std::to_string(i) + "]", "must be >= 0");
    }
  }
  if (doc.contains("lambdas")) {
    s.lambdas = get_number_list(doc["lambdas"], "lambdas");
    for (std::size_t i = 0; i < s.lambdas.size(); ++i) {
      if (s.lambdas[i] < 0.0) fail("lambdas[" + std::to_string(i) + "]", "must be >= 0");
    }
  }
  if (doc.contains("sizes")) {
    const json& v = doc["sizes"];
    if (!v.is_array() || v.empty()) fail("sizes", "expected a non-empty array of integers");
    s.sizes.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string path = "sizes[" + std::to_string(i) + "]";
      const long long n = get_integer(v[i], path);
      if (n < 2 || n > kMaxDenseSites) fail(path, "must lie in [2, 12]");
      s.sizes.push_back(static_cast<int>(n));
    }
  }
  if (doc.contains("kinds")) {
    const json& v = doc["kinds"];
    if (!v.is_array() || v.empty()) fail("kinds", "expected a non-empty array of ansatz names");
    s.kinds.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string path = "kinds[" + std::to_string(i) + "]";
      if (!v[i].is_string()) fail(path, "expected \"nn\", \"nnn\" or \"nnnn\"");
      try {
        s.kinds.push_back(parse_ansatz_kind(v[i].get<std::string>()));
      } catch (const InvalidParameter& e) {
        fail(path, e.what());
      }
    }
  }
  if (doc.contains("p_max")) {
    const long long v = get_integer(doc["p_max"], "p_max");
    if (v < 1 || v > 10'000) fail("p_max", "must lie in [1, 10000]");
    s.p_max = static_cast<int>(v);
  }
  if (doc.contains("threshold")) {
    s.threshold = get_number(doc["threshold"], "threshold");
    if (!(s.threshold > 0.0)) fail("threshold", "must be > 0");
  }
  if (doc.contains("strategy")) {
    if (!doc["strategy"].is_string()) fail("strategy", "expected a string");
    try {
      s.strategy = parse_pair_strategy(doc["strategy"].get<std::string>());
    } catch (const InvalidParameter& e) {
      fail("strategy", e.what());
    }
  }
  if (doc.contains("optimizer")) s.optimizer = optimizer_from_json(doc["optimizer"]);
  if (doc.contains("base_seed")) {
    const json& v = doc["base_seed"];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      fail("base_seed", "expected a non-negative integer");
    }
    s.base_seed = v.get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) fail("output", "expected an object");
    reject_unknown(o, "output.", {"precision", "plot_data"});
    if (o.contains("precision")) {
      const long long v = get_integer(o["precision"], "output.precision");
      if (v < 1 || v > 17) fail("output.precision", "must lie in [1, 17]");
      cfg.output.precision = static_cast<int>(v);
    }
    if (o.contains("plot_data")) {
      if (!o["plot_data"].is_boolean()) fail("output.plot_data", "expected true or false");
      cfg.output.plot_data = o["plot_data"].get<bool>();
    }
  }
  try {
    s.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

json config_to_json(const ConfigFile& cfg) {
  const SweepConfig& s = cfg.sweep;
  json j;
  j["alphas"] = s.alphas;
  j["lambdas"] = s.lambdas;
  j["sizes"] = s.sizes;
  json kinds = json::array();
  for (AnsatzKind k : s.kinds) kinds.push_back(to_string(k));
  j["kinds"] = kinds;
  j["p_max"] = s.p_max;
  j["threshold"] = s.threshold;
  j["strategy"] = to_string(s.strategy);
  j["optimizer"] = to_json(s.optimizer);
  j["base_seed"] = s.base_seed;
  j["output"] = {{"precision", cfg.output.precision}, {"plot_data", cfg.output.plot_data}};
  return j;
}

ConfigFile parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

json to_json(const NegativityProfile& profile) {
  return {{"strategy", to_string(profile.strategy)}, {"values", profile.values}};
}

json to_json(const RestartRecord& r) {
  json j;
  j["alpha"] = r.cell.alpha;
  j["lambda"] = r.cell.lambda;
  j["n"] = r.cell.n;
  j["ansatz"] = to_string(r.cell.kind);
  j["p"] = r.p;
  j["restart"] = r.restart;
  j["seed"] = r.seed;
  j["failed"] = r.failed;
  j["status"] = r.status;
  j["energy"] = r.energy;
  j["exact_energy"] = r.exact_energy;
  j["fidelity"] = r.fidelity;
  j["ent_error"] = r.ent_error;
  j["n_iters"] = r.n_iters;
  j["evaluations"] = r.evaluations;
  j["converged"] = r.converged;
  j["wall_time_s"] = r.wall_time_s;
  j["negativity_profile"] = to_json(r.profile);
  return j;
}

RestartRecord restart_from_json(const json& doc) {
  try {
    RestartRecord r;
    r.cell.alpha = doc.at("alpha").get<double>();
    r.cell.lambda = doc.at("lambda").get<double>();
    r.cell.n = doc.at("n").get<int>();
    r.cell.kind = parse_ansatz_kind(doc.at("ansatz").get<std::string>());
    r.p = doc.at("p").get<int>();
    r.restart = doc.at("restart").get<int>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.failed = doc.at("failed").get<bool>();
    r.status = doc.at("status").get<std::string>();
    r.energy = doc.at("energy").get<double>();
    r.exact_energy = doc.at("exact_energy").get<double>();
    r.fidelity = doc.at("fidelity").get<double>();
    r.ent_error = doc.at("ent_error").get<double>();
    r.n_iters = doc.at("n_iters").get<int>();
    r.evaluations = doc.at("evaluations").get<int>();
    r.converged = doc.at("converged").get<bool>();
    r.wall_time_s = doc.at("wall_time_s").get<double>();
    const json& prof = doc.at("negativity_profile");
    r.profile.strategy = parse_pair_strategy(prof.at("strategy").get<std::string>());
    r.profile.values = prof.at("values").get<std::vector<double>>();
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid run document: ") + e.what());
  } catch (const InvalidParameter& e) {
    throw IoError(std::string("invalid run document: ") + e.what());
  }
}

}  // namespace lrvqe
