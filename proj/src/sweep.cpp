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

#include "lrvqe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "lrvqe/error.hpp"
#include "lrvqe/exact.hpp"
#include "lrvqe/seeding.hpp"
#include "lrvqe/serialize.hpp"

namespace lrvqe {

namespace fs = std::filesystem;

void SweepConfig::validate() const {
  if (alphas.empty()) throw InvalidParameter("alphas must not be empty");
  if (lambdas.empty()) throw InvalidParameter("lambdas must not be empty");
  if (sizes.empty()) throw InvalidParameter("sizes must not be empty");
  if (kinds.empty()) throw InvalidParameter("kinds must not be empty");
  if (p_max < 1) throw InvalidParameter("p_max must be >= 1");
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw InvalidParameter("threshold must be finite and > 0");
  }
  optimizer.validate();
  for (double a : alphas) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw InvalidParameter("alphas entries must be >= 0");
  }
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidParameter("lambdas entries must be >= 0");
  }
  for (int n : sizes) {
    if (n < 2 || n > kMaxDenseSites) {
      throw InvalidParameter("sizes entries must lie in [2, " + std::to_string(kMaxDenseSites) + "]");
    }
    for (AnsatzKind k : kinds) params_per_layer(k, n);  // throws on kind/size mismatch
  }
}

std::vector<CellKey> grid_cells(const SweepConfig& cfg) {
  std::vector<CellKey> cells;
  for (double a : cfg.alphas) {
    for (double l : cfg.lambdas) {
      for (int n : cfg.sizes) {
        for (AnsatzKind k : cfg.kinds) cells.push_back({a, l, n, k});
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

std::uint64_t run_seed(std::uint64_t base_seed, const CellKey& cell, int p, int restart) {
  return SeedMixer(base_seed)
      .add(cell.alpha)
      .add(cell.lambda)
      .add(cell.n)
      .add(to_string(cell.kind))
      .add(p)
      .add(restart)
      .value();
}

bool RestartRecord::same_outcome(const RestartRecord& o) const {
  return cell == o.cell && p == o.p && restart == o.restart && seed == o.seed &&
         failed == o.failed && status == o.status && energy == o.energy &&
         exact_energy == o.exact_energy && fidelity == o.fidelity && ent_error == o.ent_error &&
         n_iters == o.n_iters && evaluations == o.evaluations && converged == o.converged &&
         profile == o.profile;
}

RunRecord aggregate_restarts(const std::vector<RestartRecord>& restarts) {
  if (restarts.empty()) throw InvalidParameter("aggregate_restarts: no restarts");
  RunRecord out;
  out.cell = restarts.front().cell;
  out.p = restarts.front().p;
  const RestartRecord* best = nullptr;
  int ok = 0;
  for (const RestartRecord& r : restarts) {
    out.wall_time_s += r.wall_time_s;
    if (r.failed) continue;
    ++ok;
    out.n_iters_mean += r.n_iters;
    if (best == nullptr || r.energy < best->energy) best = &r;
  }
  if (best == nullptr) {
    throw OptimizationFailure("every restart failed at p = " + std::to_string(out.p));
  }
  out.n_iters_mean /= ok;
  out.seed = best->seed;
  out.energy = best->energy;
  out.exact_energy = best->exact_energy;
  out.fidelity = best->fidelity;
  out.ent_error = best->ent_error;
  out.n_iters_best = best->n_iters;
  return out;
}

LogLinearFit loglinear_fit(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> use;
  for (const auto& [p, e] : points) {
    if (e > kFitFloor && std::isfinite(e)) use.emplace_back(p, std::log(e));
  }
  if (use.size() < 3) {
    throw InsufficientData("log-linear fit needs >= 3 points above the floor, got " +
                           std::to_string(use.size()));
  }
  const double n = static_cast<double>(use.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : use) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : use) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw InsufficientData("log-linear fit needs distinct p values");
  LogLinearFit fit;
  fit.a = sxy / sxx;
  fit.b = my - fit.a * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : use) {
    const double r = y - (fit.a * x + fit.b);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

PStar find_pstar(const std::vector<RunRecord>& records, double threshold) {
  if (records.empty()) throw InvalidParameter("find_pstar: no records");
  std::vector<RunRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(), [](const RunRecord& a, const RunRecord& b) { return a.p < b.p; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].p != static_cast<int>(i) + 1) {
      throw InvalidParameter("find_pstar: records must cover p = 1.." + std::to_string(sorted.size()) +
                             " without gaps");
    }
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].ent_error > threshold) continue;
    if (i + 1 < sorted.size() && sorted[i + 1].ent_error > threshold) continue;
    return {sorted[i].p, false};
  }
  std::vector<std::pair<double, double>> pts;
  for (const RunRecord& r : sorted) pts.emplace_back(r.p, r.ent_error);
  LogLinearFit fit;
  try {
    fit = loglinear_fit(pts);
  } catch (const InsufficientData&) {
    return {};
  }
  if (!(fit.a < 0.0)) return {};
  const double crossing = std::ceil((std::log(threshold) - fit.b) / fit.a);
  const int last = sorted.back().p;
  // The data say the threshold was not met up to `last`.
  const int value = std::max(static_cast<int>(crossing), last + 1);
  return {value, true};
}

int resource_quantum(AnsatzKind kind, int n, int p_star) { return cnot_count(kind, n, p_star); }

double resource_classical(int p_star, int params_per_layer, double n_iter_avg) {
  return static_cast<double>(p_star) * static_cast<double>(params_per_layer) * n_iter_avg;
}

ScalingRecord scaling_record(const CellKey& cell, const std::vector<RunRecord>& records,
                             double threshold) {
  ScalingRecord s;
  s.cell = cell;
  s.params_per_layer = params_per_layer(cell.kind, cell.n);
  s.p_star = find_pstar(records, threshold);
  std::vector<std::pair<double, double>> pts;
  for (const RunRecord& r : records) pts.emplace_back(r.p, r.ent_error);
  try {
    s.fit = loglinear_fit(pts);
  } catch (const InsufficientData&) {
  }
  if (s.p_star.value) {
    const int p = *s.p_star.value;
    s.rq_total = resource_quantum(cell.kind, cell.n, p);
    // Mean restart iterations at p*, or at the deepest measured p when p* is
    // extrapolated beyond the data.
    const RunRecord* at = nullptr;
    for (const RunRecord& r : records) {
      if (r.p == p || (s.p_star.extrapolated && (at == nullptr || r.p > at->p))) at = &r;
    }
    if (at != nullptr) {
      s.n_iter_avg = at->n_iters_mean;
      s.rc_total = resource_classical(p, s.params_per_layer, at->n_iters_mean);
    }
  }
  return s;
}

std::string to_string(ScalingQuantity q) {
  switch (q) {
    case ScalingQuantity::PStar: return "p_star";
    case ScalingQuantity::RQ: return "rq";
    case ScalingQuantity::RC: return "rc";
  }
  return "?";
}

std::string to_string(FitModel m) { return m == FitModel::Linear ? "linear" : "quadratic"; }

PolyFit poly_fit(const std::vector<std::pair<double, double>>& points, FitModel model) {
  if (points.size() < 3) {
    throw InsufficientData("scaling fit needs >= 3 points, got " + std::to_string(points.size()));
  }
  const int cols = model == FitModel::Linear ? 2 : 3;
  Eigen::MatrixXd a(points.size(), cols);
  Eigen::VectorXd y(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i].first;
    a(i, 0) = 1.0;
    a(i, 1) = x;
    if (cols == 3) a(i, 2) = x * x;
    y(i) = points[i].second;
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  PolyFit fit;
  fit.c0 = c(0);
  fit.c1 = c(1);
  fit.c2 = cols == 3 ? c(2) : 0.0;
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = (y - a * c).squaredNorm();
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

PolyFit scaling_fits(const std::vector<ScalingRecord>& records, ScalingQuantity quantity,
                     FitModel model) {
  std::vector<std::pair<double, double>> pts;
  for (const ScalingRecord& r : records) {
    std::optional<double> v;
    switch (quantity) {
      case ScalingQuantity::PStar:
        if (r.p_star.value) v = *r.p_star.value;
        break;
      case ScalingQuantity::RQ:
        if (r.rq_total) v = *r.rq_total;
        break;
      case ScalingQuantity::RC:
        v = r.rc_total;
        break;
    }
    if (v) pts.emplace_back(r.cell.n, *v);
  }
  return poly_fit(pts, model);
}

std::string format_key_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

ResultStore::ResultStore(fs::path root) : root_(std::move(root)) {}

fs::path ResultStore::run_path(const CellKey& cell, int p, int restart) const {
  return runs_dir() / (format_key_number(cell.alpha) + "_" + format_key_number(cell.lambda) + "_" +
                       std::to_string(cell.n) + "_" + to_string(cell.kind) + "_p" +
                       std::to_string(p) + "_s" + std::to_string(restart) + ".json");
}

void ResultStore::prepare() const {
  std::error_code ec;
  fs::create_directories(runs_dir(), ec);
  if (ec) throw IoError("cannot create " + runs_dir().string() + ": " + ec.message());
}

bool ResultStore::has_run(const CellKey& cell, int p, int restart) const {
  return fs::exists(run_path(cell, p, restart));
}

namespace {

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace

RestartRecord ResultStore::load_run(const CellKey& cell, int p, int restart) const {
  const fs::path path = run_path(cell, p, restart);
  RestartRecord r = restart_from_json(read_json(path));
  if (!(r.cell == cell) || r.p != p || r.restart != restart) {
    throw IoError("run document " + path.string() + " does not match its file name");
  }
  return r;
}

void ResultStore::save_run(const RestartRecord& record) const {
  const fs::path path = run_path(record.cell, record.p, record.restart);
  if (fs::exists(path)) return;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << to_json(record).dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::vector<RestartRecord> ResultStore::load_all() const {
  std::vector<RestartRecord> out;
  if (!fs::exists(runs_dir())) return out;
  for (const auto& entry : fs::directory_iterator(runs_dir())) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    out.push_back(restart_from_json(read_json(entry.path())));
  }
  std::sort(out.begin(), out.end(), [](const RestartRecord& a, const RestartRecord& b) {
    return std::tie(a.cell, a.p, a.restart) < std::tie(b.cell, b.p, b.restart);
  });
  return out;
}

std::vector<RunRecord> aggregate_store(const std::vector<RestartRecord>& restarts) {
  std::map<std::pair<CellKey, int>, std::vector<RestartRecord>> groups;
  for (const RestartRecord& r : restarts) groups[{r.cell, r.p}].push_back(r);
  std::vector<RunRecord> out;
  out.reserve(groups.size());
  for (const auto& [key, group] : groups) out.push_back(aggregate_restarts(group));
  return out;
}

namespace {

struct CellContext {
  CellKey key;
  SpinHamiltonian ham;
  GroundSolution ed;
  NegativityProfile ed_profile;
};

RestartRecord compute_restart(const SweepConfig& cfg, const CellContext& ctx, const AnsatzSpec& spec,
                              int p, int restart) {
  const auto t0 = std::chrono::steady_clock::now();
  RestartRecord rec;
  rec.cell = ctx.key;
  rec.p = p;
  rec.restart = restart;
  rec.seed = run_seed(cfg.base_seed, ctx.key, p, restart);
  rec.exact_energy = ctx.ed.energy;
  const RestartResult rr = run_restart(spec, ctx.ham, cfg.optimizer, rec.seed);
  rec.failed = rr.failed;
  rec.status = rr.status;
  rec.n_iters = rr.iterations;
  rec.evaluations = rr.evaluations;
  rec.converged = rr.converged;
  if (!rr.failed) {
    const Statevector state = apply_rotations(spec, rr.params, initial_state(spec.n_qubits));
    rec.energy = rr.energy;
    rec.fidelity = fidelity(state, ctx.ed.ground_space);
    rec.profile = negativity_profile(state, cfg.strategy);
    rec.ent_error = entanglement_error(rec.profile, ctx.ed_profile);
  } else {
    rec.profile.strategy = cfg.strategy;
  }
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

/// Runs fn(i) for i in [0, count) on up to `threads` threads; rethrows the
/// first exception after all threads have joined.
template <typename Fn>
void parallel_for(int count, int threads, std::atomic<bool>& abort, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!abort.load()) {
      const int i = next.fetch_add(1);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        abort.store(true);
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<RunRecord> run_grid(const SweepConfig& cfg, const ResultStore& store,
                                const SweepOptions& options, SweepStats* stats) {
  cfg.validate();
  store.prepare();
  const std::vector<CellKey> cells = grid_cells(cfg);
  const int jobs = std::max(1, options.jobs);
  const int cell_threads = std::min<int>(jobs, static_cast<int>(cells.size()));
  const int restart_threads = std::max(1, jobs / std::max(1, cell_threads));

  std::vector<std::vector<RunRecord>> per_cell(cells.size());
  std::atomic<int> computed{0};
  std::atomic<int> loaded{0};
  std::atomic<bool> abort{false};
  std::mutex callback_mutex;

  parallel_for(static_cast<int>(cells.size()), cell_threads, abort, [&](int ci) {
    CellContext ctx;
    ctx.key = cells[ci];
    ctx.ham = build_hamiltonian({ctx.key.n, ctx.key.alpha, ctx.key.lambda});
    ctx.ed = ground_state(dense_matrix(ctx.ham));
    ctx.ed_profile = negativity_profile(ctx.ed.state, cfg.strategy);

    int below_in_a_row = 0;
    for (int p = 1; p <= cfg.p_max && !abort.load(); ++p) {
      const AnsatzSpec spec = build_ansatz(ctx.key.kind, ctx.key.n, p);
      std::vector<RestartRecord> restarts(cfg.optimizer.restarts);
      std::atomic<bool> restart_abort{false};
      parallel_for(cfg.optimizer.restarts, restart_threads, restart_abort, [&](int r) {
        if (store.has_run(ctx.key, p, r)) {
          restarts[r] = store.load_run(ctx.key, p, r);
          ++loaded;
          return;
        }
        restarts[r] = compute_restart(cfg, ctx, spec, p, r);
        store.save_run(restarts[r]);
        ++computed;
      });
      const RunRecord rec = aggregate_restarts(restarts);
      per_cell[ci].push_back(rec);
      if (options.on_record) {
        std::lock_guard lock(callback_mutex);
        options.on_record(rec);
      }
      below_in_a_row = rec.ent_error <= cfg.threshold ? below_in_a_row + 1 : 0;
      if (below_in_a_row >= 2) break;
    }
  });

  if (stats != nullptr) {
    stats->cells = static_cast<int>(cells.size());
    stats->computed_restarts = computed.load();
    stats->loaded_restarts = loaded.load();
  }
  std::vector<RunRecord> out;
  for (auto& v : per_cell) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace lrvqe
