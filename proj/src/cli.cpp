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

#include "lrvqe/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "CLI11.hpp"
#include "lrvqe/entanglement.hpp"
#include "lrvqe/error.hpp"
#include "lrvqe/exact.hpp"
#include "lrvqe/report.hpp"
#include "lrvqe/serialize.hpp"
#include "lrvqe/sweep.hpp"
#include "lrvqe/vqe.hpp"

namespace lrvqe {

namespace fs = std::filesystem;

namespace {

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool quiet = false;
};

struct ModelFlags {
  int n = 4;
  double alpha = 0.5;
  double lambda = 0.5;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m) {
  cmd->add_option("--n", m.n, "Number of sites")->required();
  cmd->add_option("--alpha", m.alpha, "Interaction decay exponent")->required();
  cmd->add_option("--lambda", m.lambda, "Coupling ratio J/h")->required();
}

void write_json(const fs::path& path, const json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

json params_json(const ModelParams& p) {
  return {{"n", p.n_sites}, {"alpha", p.alpha}, {"lambda", p.lam}, {"h", p.field()},
          {"J", p.coupling()}};
}

int cmd_exact(const ModelFlags& m, int k_samples, const std::string& strategy, const fs::path& out) {
  const ModelParams params{m.n, m.alpha, m.lambda};
  params.validate();
  if (k_samples < 2) throw InvalidParameter("--k-samples must be >= 2");
  const SpinHamiltonian ham = build_hamiltonian(params);
  const GroundSolution ed = ground_state(dense_matrix(ham));
  const NegativityProfile profile = negativity_profile(ed.state, parse_pair_strategy(strategy));
  const CriticalFields crit = critical_fields(params);

  json doc;
  doc["params"] = params_json(params);
  doc["E0"] = ed.energy;
  doc["gap"] = ed.gap;
  doc["degeneracy"] = ed.ground_space.size();
  doc["negativity_profile"] = to_json(profile);
  doc["critical_fields"] = {{"k0", crit.k0}, {"kpi", crit.kpi}};
  json samples = json::array();
  for (int i = 0; i < k_samples; ++i) {
    const double k = std::numbers::pi * i / (k_samples - 1);
    const DispersionPoint d = dispersion(params, k);
    samples.push_back({{"k", d.k}, {"eps", d.eps}, {"delta", d.delta}, {"energy", d.energy}});
  }
  doc["dispersion"] = samples;
  write_json(out, doc);
  return kExitOk;
}

int cmd_vqe(const ModelFlags& m, const std::string& ansatz, int layers, OptimizerConfig cfg,
            const std::string& strategy, const fs::path& out, std::ostream& log, bool quiet) {
  const ModelParams params{m.n, m.alpha, m.lambda};
  params.validate();
  cfg.validate();
  const SpinHamiltonian ham = build_hamiltonian(params);
  const GroundSolution ed = ground_state(dense_matrix(ham));
  const AnsatzSpec spec = build_ansatz(parse_ansatz_kind(ansatz), m.n, layers);
  const VqeResult res = minimize(spec, ham, cfg, ed);
  const PairStrategy ps = parse_pair_strategy(strategy);
  const NegativityProfile ed_profile = negativity_profile(ed.state, ps);
  const NegativityProfile vqe_profile = negativity_profile(res.state, ps);

  json doc;
  doc["params"] = params_json(params);
  doc["ansatz"] = to_string(spec.kind);
  doc["layers"] = layers;
  doc["params_per_layer"] = spec.params_per_layer;
  doc["cnot_count"] = cnot_count(spec.kind, m.n, layers);
  doc["optimizer"] = to_json(cfg);
  doc["seed"] = cfg.seed;
  doc["energy"] = res.energy;
  doc["exact_energy"] = ed.energy;
  doc["fidelity"] = res.fidelity;
  doc["ent_error"] = entanglement_error(vqe_profile, ed_profile);
  doc["n_iters"] = res.n_iters;
  doc["n_iters_mean"] = res.mean_iters;
  doc["total_iters"] = res.total_iters;
  doc["converged"] = res.converged;
  doc["best_restart"] = res.best_restart;
  doc["negativity_profile"] = to_json(vqe_profile);
  doc["exact_negativity_profile"] = to_json(ed_profile);
  doc["best_params"] = res.best_params;
  json restarts = json::array();
  for (const RestartResult& r : res.restarts) {
    restarts.push_back({{"seed", r.seed}, {"failed", r.failed}, {"status", r.status},
                        {"energy", r.energy}, {"iterations", r.iterations},
                        {"converged", r.converged}});
  }
  doc["restarts"] = restarts;
  write_json(out, doc);
  if (!quiet) {
    log << "E_vqe = " << format_number(res.energy, 12) << "  E0 = " << format_number(ed.energy, 12)
        << "  fidelity = " << format_number(res.fidelity, 10) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const fs::path& config_path, const fs::path& out_dir, bool resume,
              const GlobalFlags& g, std::ostream& log) {
  ConfigFile cfg = parse_config(config_path);
  if (g.seed) cfg.sweep.base_seed = *g.seed;
  const ResultStore store(out_dir);
  const fs::path resolved = out_dir / "resolved-config.json";
  const json resolved_doc = config_to_json(cfg);
  if (fs::exists(resolved)) {
    if (!resume) {
      throw IoError("store " + out_dir.string() + " already holds a sweep; pass --resume to continue");
    }
    std::ifstream in(resolved);
    json previous;
    try {
      previous = json::parse(in);
    } catch (const json::exception& e) {
      throw IoError("cannot read " + resolved.string() + ": " + e.what());
    }
    if (previous != resolved_doc) {
      throw ConfigError("config differs from the stored resolved-config.json; refusing to resume");
    }
  }
  store.prepare();
  if (!fs::exists(resolved)) write_json(resolved, resolved_doc);

  SweepOptions options;
  options.jobs = g.jobs;
  if (!g.quiet) {
    options.on_record = [&log](const RunRecord& r) {
      log << "alpha=" << format_key_number(r.cell.alpha) << " lambda=" << format_key_number(r.cell.lambda)
          << " N=" << r.cell.n << " " << to_string(r.cell.kind) << " p=" << r.p
          << " E(p)=" << format_number(r.ent_error, 4) << " fid=" << format_number(r.fidelity, 8)
          << " iters=" << r.n_iters_best << "\n";
      log.flush();
    };
  }
  SweepStats stats;
  run_grid(cfg.sweep, store, options, &stats);
  emit_reports(store, cfg);
  if (!g.quiet) {
    log << "sweep complete: " << stats.cells << " cells, " << stats.computed_restarts
        << " restarts computed, " << stats.loaded_restarts << " loaded from store\n";
  }
  return kExitOk;
}

ConfigFile load_store_config(const fs::path& dir) {
  const fs::path resolved = dir / "resolved-config.json";
  if (!fs::exists(resolved)) throw IoError("no resolved-config.json in " + dir.string());
  return parse_config(resolved);
}

int cmd_fit(const fs::path& in_dir, const fs::path& out_path) {
  const ConfigFile cfg = load_store_config(in_dir);
  const ResultStore store(in_dir);
  const std::vector<RestartRecord> restarts = store.load_all();
  if (restarts.empty()) throw IoError("no runs in store " + in_dir.string());
  const std::vector<ScalingRecord> scaling =
      build_scaling(aggregate_store(restarts), cfg.sweep.threshold);
  write_text(out_path, scaling_csv(scaling, cfg.output.precision));
  const fs::path parent = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  write_text(parent / "fits.csv", fits_csv(scaling, cfg.output.precision));
  return kExitOk;
}

int cmd_report(const fs::path& in_dir) {
  emit_reports(ResultStore(in_dir), load_store_config(in_dir));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resource-scaling laboratory for VQE on the long-range extended Ising chain",
               "lrvqe"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  if (const char* env = std::getenv("LRVQE_JOBS")) {
    try {
      g.jobs = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      err << "ignoring malformed LRVQE_JOBS='" << env << "'\n";
    }
  }
  std::uint64_t seed_flag = 0;
  auto* seed_opt = app.add_option("--seed", seed_flag, "Base seed");
  app.add_option("--jobs", g.jobs, "Worker threads (default: $LRVQE_JOBS or 1)")
      ->check(CLI::Range(1, 4096));
  app.add_flag("--quiet", g.quiet, "Suppress progress output");

  ModelFlags exact_model;
  int k_samples = 65;
  std::string exact_strategy = "average";
  fs::path exact_out;
  auto* exact = app.add_subcommand("exact", "Exact diagonalization benchmark");
  add_model_flags(exact, exact_model);
  exact->add_option("--k-samples", k_samples, "Dispersion samples on [0, pi]");
  exact->add_option("--strategy", exact_strategy, "average | central | first-pair");
  exact->add_option("--out", exact_out, "Output JSON file")->required();

  ModelFlags vqe_model;
  std::string ansatz = "nn";
  int layers = 1;
  OptimizerConfig opt;
  std::string vqe_strategy = "average";
  fs::path vqe_out;
  auto* vqe = app.add_subcommand("vqe", "Single VQE optimization");
  add_model_flags(vqe, vqe_model);
  vqe->add_option("--ansatz", ansatz, "nn | nnn | nnnn")->required();
  vqe->add_option("--layers", layers, "Ansatz layers p")->required();
  vqe->add_option("--restarts", opt.restarts, "Random restarts");
  vqe->add_option("--max-iters", opt.max_iters, "Optimizer iteration cap per restart");
  vqe->add_option("--strategy", vqe_strategy, "average | central | first-pair");
  vqe->add_option("--out", vqe_out, "Output JSON file")->required();

  fs::path config_path;
  fs::path out_dir;
  bool resume = false;
  auto* sweep = app.add_subcommand("sweep", "Run the (alpha, lambda, N, ansatz, p) grid");
  sweep->add_option("--config", config_path, "Config JSON")->required();
  sweep->add_option("--out-dir", out_dir, "Result store directory")->required();
  sweep->add_flag("--resume", resume, "Continue an existing store");

  fs::path fit_in;
  fs::path fit_out;
  auto* fit = app.add_subcommand("fit", "Compute p*, fits and resources from a store");
  fit->add_option("--in", fit_in, "Result store directory")->required();
  fit->add_option("--out", fit_out, "Output scaling CSV")->required();

  fs::path report_in;
  auto* report = app.add_subcommand("report", "Write scaling.csv, fits.csv and plot data");
  report->add_option("--in", report_in, "Result store directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (*seed_opt) g.seed = seed_flag;

  try {
    if (*exact) return cmd_exact(exact_model, k_samples, exact_strategy, exact_out);
    if (*vqe) {
      if (!g.seed) throw ConfigError("vqe requires --seed");
      opt.seed = *g.seed;
      return cmd_vqe(vqe_model, ansatz, layers, opt, vqe_strategy, vqe_out, err, g.quiet);
    }
    if (*sweep) return cmd_sweep(config_path, out_dir, resume, g, err);
    if (*fit) return cmd_fit(fit_in, fit_out);
    if (*report) return cmd_report(report_in);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const OptimizationFailure& e) {
    err << "optimization failure: " << e.what() << "\n";
    return kExitOptimization;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace lrvqe
