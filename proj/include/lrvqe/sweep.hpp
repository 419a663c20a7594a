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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lrvqe/circuit.hpp"
#include "lrvqe/entanglement.hpp"
#include "lrvqe/vqe.hpp"

namespace lrvqe {

struct SweepConfig {
  std::vector<double> alphas{0.5, 1.5, 10.0};
  std::vector<double> lambdas{0.5, 1.0, 2.0};
  std::vector<int> sizes{4, 5, 6, 7, 8, 9};
  std::vector<AnsatzKind> kinds{AnsatzKind::NN, AnsatzKind::NNN, AnsatzKind::NNNN};
  int p_max = 60;
  double threshold = 1e-3;
  PairStrategy strategy = PairStrategy::Average;
  /// `optimizer.seed` is ignored; restart seeds derive from base_seed.
  OptimizerConfig optimizer;
  std::uint64_t base_seed = 20260101;

  void validate() const;
  bool operator==(const SweepConfig&) const = default;
};

/// One (alpha, lambda, N, ansatz) grid point.
struct CellKey {
  double alpha = 0.0;
  double lambda = 0.0;
  int n = 0;
  AnsatzKind kind = AnsatzKind::NN;

  auto operator<=>(const CellKey&) const = default;
};

std::vector<CellKey> grid_cells(const SweepConfig& cfg);

/// Seed of one restart: hash(base_seed, alpha, lambda, N, kind, p, restart).
std::uint64_t run_seed(std::uint64_t base_seed, const CellKey& cell, int p, int restart);

/// Persisted outcome of one restart at one (cell, p).
struct RestartRecord {
  CellKey cell;
  int p = 0;
  int restart = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string status;
  double energy = 0.0;
  double exact_energy = 0.0;
  double fidelity = 0.0;
  double ent_error = 0.0;
  int n_iters = 0;
  int evaluations = 0;
  bool converged = false;
  double wall_time_s = 0.0;
  NegativityProfile profile;

  /// Equality on everything except wall time.
  bool same_outcome(const RestartRecord& other) const;
};

/// Best-of-restarts summary at one (cell, p).
struct RunRecord {
  CellKey cell;
  int p = 0;
  std::uint64_t seed = 0;
  double energy = 0.0;
  double exact_energy = 0.0;
  double fidelity = 0.0;
  double ent_error = 0.0;
  int n_iters_best = 0;
  double n_iters_mean = 0.0;
  double wall_time_s = 0.0;
};

/// Lowest-energy restart wins, lowest restart index on ties.
RunRecord aggregate_restarts(const std::vector<RestartRecord>& restarts);

struct LogLinearFit {
  double a = 0.0;  // slope of ln E against p
  double b = 0.0;
  double r2 = 0.0;
};

inline constexpr double kFitFloor = 1e-12;

/// Ordinary least squares of ln E on p over points with E > kFitFloor.
/// Throws InsufficientData with fewer than three usable points.
LogLinearFit loglinear_fit(const std::vector<std::pair<double, double>>& points);

struct PStar {
  /// Empty when the error does not decay (failure sentinel).
  std::optional<int> value;
  bool extrapolated = false;
};

/// Smallest measured p with E(p) <= threshold whose successor, if measured,
/// also meets it. Falls back on the log-linear fit's crossing point.
/// `records` must cover p = 1, 2, ... contiguously for one cell.
PStar find_pstar(const std::vector<RunRecord>& records, double threshold);

int resource_quantum(AnsatzKind kind, int n, int p_star);
double resource_classical(int p_star, int params_per_layer, double n_iter_avg);

struct ScalingRecord {
  CellKey cell;
  PStar p_star;
  std::optional<LogLinearFit> fit;
  std::optional<int> rq_total;
  int params_per_layer = 0;
  std::optional<double> n_iter_avg;
  std::optional<double> rc_total;
};

ScalingRecord scaling_record(const CellKey& cell, const std::vector<RunRecord>& records,
                             double threshold);

enum class ScalingQuantity { PStar, RQ, RC };
enum class FitModel { Linear, Quadratic };

std::string to_string(ScalingQuantity q);
std::string to_string(FitModel m);

/// value = c2 N^2 + c1 N + c0 (c2 = 0 for the linear model).
struct PolyFit {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double r2 = 0.0;
};

/// Least-squares fit of (N, value) points. Throws InsufficientData with fewer
/// than three points.
PolyFit poly_fit(const std::vector<std::pair<double, double>>& points, FitModel model);

/// Fit of one quantity against N over the records of a single
/// (alpha, lambda, kind) series; records without a value are skipped.
PolyFit scaling_fits(const std::vector<ScalingRecord>& records, ScalingQuantity quantity,
                     FitModel model);

/// Directory-backed result store:
///   resolved-config.json
///   runs/<alpha>_<lambda>_<N>_<kind>_p<p>_s<restart>.json
class ResultStore {
 public:
  explicit ResultStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path runs_dir() const { return root_ / "runs"; }
  std::filesystem::path run_path(const CellKey& cell, int p, int restart) const;

  /// Creates the directory tree. Throws IoError.
  void prepare() const;
  bool has_run(const CellKey& cell, int p, int restart) const;
  RestartRecord load_run(const CellKey& cell, int p, int restart) const;
  /// Writes through a temporary file and rename; never overwrites.
  void save_run(const RestartRecord& record) const;
  /// Every parseable run document, sorted by (cell, p, restart).
  std::vector<RestartRecord> load_all() const;

 private:
  std::filesystem::path root_;
};

std::string format_key_number(double v);

struct SweepStats {
  int cells = 0;
  int computed_restarts = 0;
  int loaded_restarts = 0;
};

struct SweepOptions {
  int jobs = 1;
  /// Called after each (cell, p) completes; may be invoked from worker threads
  /// (calls are serialized).
  std::function<void(const RunRecord&)> on_record;
};

/// Runs every cell of the grid, p = 1, 2, ... until E(p) <= threshold at two
/// consecutive p or p = p_max. Restart documents already in the store are
/// loaded instead of recomputed.
std::vector<RunRecord> run_grid(const SweepConfig& cfg, const ResultStore& store,
                                const SweepOptions& options, SweepStats* stats = nullptr);

/// Groups stored restarts into per-(cell, p) records sorted by key.
std::vector<RunRecord> aggregate_store(const std::vector<RestartRecord>& restarts);

}  // namespace lrvqe
