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

#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "lrvqe/error.hpp"
#include "lrvqe/report.hpp"
#include "lrvqe/sweep.hpp"

using namespace lrvqe;
namespace fs = std::filesystem;

namespace {

std::vector<RunRecord> synthetic(const std::vector<double>& errors) {
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    RunRecord r;
    r.cell = {0.5, 0.5, 8, AnsatzKind::NN};
    r.p = static_cast<int>(i) + 1;
    r.ent_error = errors[i];
    r.n_iters_mean = 10.0 * r.p;
    out.push_back(r);
  }
  return out;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lrvqe_test_" + name);
  fs::remove_all(dir);
  return dir;
}

SweepConfig one_cell() {
  SweepConfig cfg;
  cfg.alphas = {10.0};
  cfg.lambdas = {2.0};
  cfg.sizes = {4};
  cfg.kinds = {AnsatzKind::NN};
  cfg.optimizer.restarts = 3;
  return cfg;
}

}  // namespace

TEST_CASE("find_pstar examples") {
  std::vector<double> decay;
  for (int p = 1; p <= 40; ++p) decay.push_back(std::exp(1.0 - 0.3 * p));
  const PStar measured = find_pstar(synthetic(decay), 1e-3);
  CHECK(measured.value == 27);
  CHECK(!measured.extrapolated);

  const PStar first = find_pstar(synthetic({1e-4, 1e-5, 1e-6}), 1e-3);
  CHECK(first.value == 1);

  // A single fluke below threshold is not confirmed.
  const PStar fluke = find_pstar(synthetic({0.1, 5e-4, 2e-3, 8e-4, 7e-4}), 1e-3);
  CHECK(fluke.value == 4);

  // The last measured point has no successor, so it stands alone.
  const PStar tail = find_pstar(synthetic({0.1, 0.05, 5e-4}), 1e-3);
  CHECK(tail.value == 3);

  std::vector<double> short_decay(decay.begin(), decay.begin() + 10);
  const PStar extrapolated = find_pstar(synthetic(short_decay), 1e-3);
  CHECK(extrapolated.extrapolated);
  CHECK(extrapolated.value == 27);

  const PStar flat = find_pstar(synthetic({0.1, 0.2, 0.3, 0.4}), 1e-3);
  CHECK(!flat.value);

  CHECK_THROWS_AS(find_pstar({}, 1e-3), InvalidParameter);
  std::vector<RunRecord> gap = synthetic({0.1, 0.05, 0.01});
  gap.erase(gap.begin() + 1);
  CHECK_THROWS_AS(find_pstar(gap, 1e-3), InvalidParameter);
}

TEST_CASE("find_pstar is monotone in the threshold") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> errors;
    for (int p = 1; p <= 30; ++p) errors.push_back(std::exp(-0.4 * p + noise(rng)));
    const std::vector<RunRecord> records = synthetic(errors);
    int previous = 1 << 30;
    for (double thr : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
      const PStar ps = find_pstar(records, thr);
      REQUIRE(ps.value);
      CHECK(*ps.value <= previous);
      previous = *ps.value;
    }
  }
}

TEST_CASE("loglinear_fit examples") {
  const LogLinearFit line = loglinear_fit({{1, std::exp(1.5)}, {2, std::exp(1.0)}, {4, std::exp(0.0)}});
  CHECK(line.a == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(line.b == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(line.r2 == doctest::Approx(1.0).epsilon(1e-12));

  const LogLinearFit unit = loglinear_fit({{1, std::exp(-1.0)}, {2, std::exp(-2.0)}, {3, std::exp(-3.0)}});
  CHECK(unit.a == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(unit.b) < 1e-12);

  CHECK_THROWS_AS(loglinear_fit({{1, 0.1}, {2, 0.01}, {3, 1e-13}}), InsufficientData);
}

TEST_CASE("resource formulas") {
  CHECK(resource_quantum(AnsatzKind::NN, 9, 34) == 544);
  CHECK(resource_quantum(AnsatzKind::NNN, 9, 13) == 572);
  CHECK(resource_quantum(AnsatzKind::NNNN, 9, 8) == 640);
  CHECK(resource_classical(34, 17, 100) == 57800.0);
  CHECK(resource_classical(1, 1, 1) == 1.0);
  for (int n = 4; n <= 12; ++n) {
    CHECK(cnots_per_layer(AnsatzKind::NNNN, n) > cnots_per_layer(AnsatzKind::NNN, n));
    CHECK(cnots_per_layer(AnsatzKind::NNN, n) > cnots_per_layer(AnsatzKind::NN, n));
  }
}

TEST_CASE("scaling_record consistency") {
  std::vector<double> decay;
  for (int p = 1; p <= 8; ++p) decay.push_back(std::exp(1.0 - 1.5 * p));
  const std::vector<RunRecord> records = synthetic(decay);
  const ScalingRecord s = scaling_record(records.front().cell, records, 1e-3);
  REQUIRE(s.p_star.value);
  const int p = *s.p_star.value;
  int census = 0;
  for (const Gate& g : build_ansatz(AnsatzKind::NN, 8, p).gates()) census += g.type == GateType::CNOT;
  CHECK(*s.rq_total == census);
  CHECK(s.params_per_layer == 15);
  CHECK(*s.n_iter_avg == 10.0 * p);
  CHECK(*s.rc_total == p * 15 * (10.0 * p));
}

TEST_CASE("poly_fit examples") {
  std::vector<std::pair<double, double>> pts;
  for (int n = 4; n <= 9; ++n) pts.emplace_back(n, 5.6 * n + 1.0);
  const PolyFit lin = poly_fit(pts, FitModel::Linear);
  CHECK(lin.c1 == doctest::Approx(5.6).epsilon(1e-12));
  CHECK(lin.c0 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(lin.c2 == 0.0);
  CHECK(lin.r2 == doctest::Approx(1.0).epsilon(1e-12));

  pts.clear();
  for (int n = 4; n <= 9; ++n) pts.emplace_back(n, 2216.0 * n * n - 3.0 * n + 7.0);
  const PolyFit quad = poly_fit(pts, FitModel::Quadratic);
  CHECK(quad.c2 == doctest::Approx(2216.0).epsilon(1e-10));
  CHECK(quad.c1 == doctest::Approx(-3.0).epsilon(1e-6));

  CHECK_THROWS_AS(poly_fit({{4, 1}, {5, 2}}, FitModel::Linear), InsufficientData);
}

TEST_CASE("config validation") {
  SweepConfig cfg;
  cfg.validate();
  CHECK(grid_cells(cfg).size() == 162);
  cfg.threshold = -1;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
  cfg = SweepConfig{};
  cfg.p_max = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);

  const CellKey a{0.5, 0.5, 8, AnsatzKind::NN};
  CHECK(run_seed(1, a, 3, 0) == run_seed(1, a, 3, 0));
  CHECK(run_seed(1, a, 3, 0) != run_seed(1, a, 3, 1));
  CHECK(run_seed(1, a, 3, 0) != run_seed(1, a, 4, 0));
  CHECK(run_seed(1, a, 3, 0) != run_seed(2, a, 3, 0));
  CHECK(run_seed(1, a, 3, 0) != run_seed(1, {0.5, 0.5, 8, AnsatzKind::NNN}, 3, 0));
}

TEST_CASE("run_grid persistence, resume and determinism") {
  const SweepConfig cfg = one_cell();
  const fs::path dir_a = fresh_dir("grid_a");
  const fs::path dir_b = fresh_dir("grid_b");
  const ResultStore store_a(dir_a);
  const ResultStore store_b(dir_b);
  store_a.prepare();
  store_b.prepare();

  SweepStats first;
  const std::vector<RunRecord> runs = run_grid(cfg, store_a, {}, &first);
  REQUIRE(!runs.empty());
  CHECK(first.computed_restarts == static_cast<int>(runs.size()) * 3);
  CHECK(runs.size() < 10);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    CHECK(runs[i].p == static_cast<int>(i) + 1);
    CHECK(runs[i].energy >= runs[i].exact_energy - 1e-9);
    CHECK(runs[i].ent_error >= 0.0);
  }
  const PStar ps = find_pstar(runs, cfg.threshold);
  REQUIRE(ps.value);
  CHECK(!ps.extrapolated);

  SweepStats again;
  const std::vector<RunRecord> resumed = run_grid(cfg, store_a, {}, &again);
  CHECK(again.computed_restarts == 0);
  CHECK(again.loaded_restarts == first.computed_restarts);
  CHECK(resumed.size() == runs.size());

  run_grid(cfg, store_b, {}, nullptr);
  const std::vector<RestartRecord> all_a = store_a.load_all();
  const std::vector<RestartRecord> all_b = store_b.load_all();
  REQUIRE(all_a.size() == all_b.size());
  for (std::size_t i = 0; i < all_a.size(); ++i) CHECK(all_a[i].same_outcome(all_b[i]));

  // Interrupted run: drop the tail of the store and resume.
  const CellKey cell = grid_cells(cfg).front();
  fs::remove(store_b.run_path(cell, static_cast<int>(runs.size()), 2));
  fs::remove(store_b.run_path(cell, static_cast<int>(runs.size()), 1));
  SweepStats partial;
  run_grid(cfg, store_b, {}, &partial);
  CHECK(partial.computed_restarts == 2);
  const std::vector<RestartRecord> healed = store_b.load_all();
  REQUIRE(healed.size() == all_a.size());
  for (std::size_t i = 0; i < healed.size(); ++i) CHECK(healed[i].same_outcome(all_a[i]));

  RestartRecord altered = all_a.front();
  altered.energy += 1.0;
  store_a.save_run(altered);
  CHECK(store_a.load_run(altered.cell, altered.p, altered.restart).same_outcome(all_a.front()));

  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}
