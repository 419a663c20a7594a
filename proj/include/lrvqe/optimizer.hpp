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

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lrvqe {

/// Objective callback: returns f(x) and writes the gradient into `grad`.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsSettings {
  int history = 10;
  int max_iters = 2000;
  /// Stop when the infinity norm of the projected gradient falls below this.
  double grad_tol = 1e-9;
  /// Stop when (f_prev - f) <= f_tol * max(|f_prev|, |f|, 1).
  double f_tol = 1e-12;
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search = 40;
};

struct LbfgsResult {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> grad;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string status;
  /// Objective value after every accepted iteration, starting with f(x0).
  std::vector<double> f_history;
};

/// Limited-memory BFGS with box constraints.
///
/// Variables sitting on a bound with the gradient pushing outward are held
/// fixed for the iteration; the two-loop recursion runs on the remaining free
/// set, and the strong-Wolfe line search is capped at the largest feasible
/// step along the search direction. Throws OptimizationFailure if the
/// objective returns a non-finite value.
LbfgsResult minimize_box(const Objective& objective, std::vector<double> x0,
                         std::span<const double> lower, std::span<const double> upper,
                         const LbfgsSettings& settings);

}  // namespace lrvqe
