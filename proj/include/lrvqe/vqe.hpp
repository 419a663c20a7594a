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
#include <span>
#include <string>
#include <vector>

#include "lrvqe/circuit.hpp"
#include "lrvqe/exact.hpp"
#include "lrvqe/model.hpp"
#include "lrvqe/optimizer.hpp"
#include "lrvqe/statevector.hpp"

namespace lrvqe {

struct OptimizerConfig {
  int max_iters = 2000;
  double grad_tol = 1e-9;
  double f_tol = 1e-12;
  int restarts = 5;
  double init_scale = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
  LbfgsSettings lbfgs() const;

  bool operator==(const OptimizerConfig&) const = default;
};

/// Box applied to every circuit parameter.
inline constexpr double kParamBound = 6.283185307179586;

/// One optimization from one random starting point.
struct RestartResult {
  std::uint64_t seed = 0;
  bool failed = false;
  std::string status;
  std::vector<double> params;
  double energy = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;

  bool operator==(const RestartResult&) const = default;
};

struct VqeResult {
  std::vector<double> best_params;
  double energy = 0.0;
  /// Iterations of the winning restart.
  int n_iters = 0;
  int total_iters = 0;
  /// Mean iterations over the restarts that did not fail.
  double mean_iters = 0.0;
  double fidelity = 0.0;
  Statevector state;
  bool converged = false;
  int best_restart = 0;
  std::vector<RestartResult> restarts;

  bool operator==(const VqeResult&) const = default;
};

/// <psi|H|psi>, term by term.
double energy(const Statevector& psi, const SpinHamiltonian& ham);

/// H|psi> without forming the dense matrix.
Statevector apply_hamiltonian(const SpinHamiltonian& ham, const Statevector& psi);

/// Exact parameter-shift gradient of E(theta). Each slot feeds one gate
/// exp(-i g theta P) with P^2 = I, so dE/dtheta = g [E(theta + pi/(4g)) -
/// E(theta - pi/(4g))]; g = 1 for the entangling blocks and 1/2 for RZ.
std::vector<double> gradient(const AnsatzSpec& spec, std::span<const double> theta,
                             const SpinHamiltonian& ham, const Statevector& init);

/// Reverse-mode (adjoint) gradient; same values as `gradient` at the cost of
/// about three circuit passes. Writes E(theta) into `energy_out`.
std::vector<double> adjoint_gradient(const AnsatzSpec& spec, std::span<const double> theta,
                                     const SpinHamiltonian& ham, const Statevector& init,
                                     double& energy_out);

/// Draws initial parameters uniformly from [-init_scale, init_scale].
std::vector<double> initial_parameters(int count, double init_scale, std::uint64_t seed);

/// Runs one quasi-Newton optimization. Non-finite energies mark the restart
/// failed instead of throwing.
RestartResult run_restart(const AnsatzSpec& spec, const SpinHamiltonian& ham,
                          const OptimizerConfig& cfg, std::uint64_t seed);

/// Seed of restart `index` when minimize is driven by cfg.seed alone.
std::uint64_t restart_seed(std::uint64_t base, int index);

/// Combines restarts into a VqeResult, keeping the lowest energy
/// (lowest index on ties). Throws OptimizationFailure when every restart
/// failed.
VqeResult select_best(const AnsatzSpec& spec, std::vector<RestartResult> restarts,
                      const GroundSolution& ed);

VqeResult minimize(const AnsatzSpec& spec, const SpinHamiltonian& ham, const OptimizerConfig& cfg,
                   const GroundSolution& ed);

/// Sum over the ground-space basis of |<g|psi>|^2.
double fidelity(const Statevector& psi, std::span<const Statevector> ground_space);

}  // namespace lrvqe
