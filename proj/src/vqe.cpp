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

#include "lrvqe/vqe.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "lrvqe/error.hpp"
#include "lrvqe/seeding.hpp"

namespace lrvqe {

void OptimizerConfig::validate() const {
  if (max_iters < 1) throw InvalidParameter("optimizer.max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw InvalidParameter("optimizer.grad_tol must be > 0");
  if (!(f_tol > 0.0)) throw InvalidParameter("optimizer.f_tol must be > 0");
  if (restarts < 1) throw InvalidParameter("optimizer.restarts must be >= 1");
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw InvalidParameter("optimizer.init_scale must be finite and >= 0");
  }
}

LbfgsSettings OptimizerConfig::lbfgs() const {
  LbfgsSettings s;
  s.max_iters = max_iters;
  s.grad_tol = grad_tol;
  s.f_tol = f_tol;
  return s;
}

namespace {

void check_dims(const Statevector& psi, const SpinHamiltonian& ham) {
  if (psi.n_qubits() != ham.n_sites) {
    throw InvalidParameter("state has " + std::to_string(psi.n_qubits()) +
                           " qubits, Hamiltonian has " + std::to_string(ham.n_sites) + " sites");
  }
}

/// <a|P|b> for a Y-free Pauli string.
complex pauli_matrix_element(std::span<const complex> a, std::span<const complex> b,
                             std::uint64_t x_mask, std::uint64_t z_mask) {
  complex s{0.0, 0.0};
  for (std::uint64_t i = 0; i < b.size(); ++i) {
    const complex term = std::conj(a[i ^ x_mask]) * b[i];
    s += parity(i & z_mask) ? -term : term;
  }
  return s;
}

void check_y_free(const PauliTerm& term) {
  if (term.letters.find('Y') != std::string::npos) {
    throw InvalidParameter("Y-containing terms are not supported");
  }
}

}  // namespace

double energy(const Statevector& psi, const SpinHamiltonian& ham) {
  check_dims(psi, ham);
  double e = 0.0;
  for (const PauliTerm& term : ham.terms) {
    check_y_free(term);
    e += term.coeff * pauli_matrix_element(psi.amps(), psi.amps(), term.x_mask(), term.z_mask()).real();
  }
  return e;
}

Statevector apply_hamiltonian(const SpinHamiltonian& ham, const Statevector& psi) {
  check_dims(psi, ham);
  std::vector<complex> out(psi.dim(), complex{0.0, 0.0});
  const auto in = psi.amps();
  for (const PauliTerm& term : ham.terms) {
    check_y_free(term);
    const std::uint64_t x = term.x_mask();
    const std::uint64_t z = term.z_mask();
    for (std::uint64_t b = 0; b < in.size(); ++b) {
      out[b ^ x] += parity(b & z) ? -term.coeff * in[b] : term.coeff * in[b];
    }
  }
  return Statevector(psi.n_qubits(), std::move(out));
}

std::vector<double> gradient(const AnsatzSpec& spec, std::span<const double> theta,
                             const SpinHamiltonian& ham, const Statevector& init) {
  if (static_cast<int>(theta.size()) != spec.total_params) {
    throw InvalidParameter("gradient: theta has the wrong length");
  }
  check_dims(init, ham);
  std::vector<double> scale(spec.total_params, 0.0);
  for (const PauliRotation& r : spec.rotations()) scale[r.slot] = r.scale;

  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(spec.total_params, 0.0);
  for (int m = 0; m < spec.total_params; ++m) {
    const double g = scale[m];
    const double shift = std::numbers::pi / (4.0 * g);
    shifted[m] = theta[m] + shift;
    const double plus = energy(apply_rotations(spec, shifted, init), ham);
    shifted[m] = theta[m] - shift;
    const double minus = energy(apply_rotations(spec, shifted, init), ham);
    shifted[m] = theta[m];
    grad[m] = g * (plus - minus);
  }
  return grad;
}

std::vector<double> adjoint_gradient(const AnsatzSpec& spec, std::span<const double> theta,
                                     const SpinHamiltonian& ham, const Statevector& init,
                                     double& energy_out) {
  check_dims(init, ham);
  const std::vector<PauliRotation> rots = spec.rotations();
  Statevector psi = apply_rotations(spec, theta, init);
  Statevector lambda = apply_hamiltonian(ham, psi);
  energy_out = psi.inner(lambda).real();

  std::vector<double> grad(spec.total_params, 0.0);
  for (std::size_t k = rots.size(); k-- > 0;) {
    const PauliRotation& r = rots[k];
    const complex elem = pauli_matrix_element(lambda.amps(), psi.amps(), r.x_mask, r.z_mask);
    grad[r.slot] += 2.0 * r.scale * elem.imag();
    const double angle = -r.scale * theta[r.slot];
    psi.apply_pauli_rotation(r.x_mask, r.z_mask, 0, angle);
    lambda.apply_pauli_rotation(r.x_mask, r.z_mask, 0, angle);
  }
  return grad;
}

std::vector<double> initial_parameters(int count, double init_scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-init_scale, init_scale);
  std::vector<double> out(count);
  for (double& v : out) v = init_scale > 0.0 ? dist(rng) : 0.0;
  return out;
}

std::uint64_t restart_seed(std::uint64_t base, int index) {
  return SeedMixer(base).add(index).value();
}

RestartResult run_restart(const AnsatzSpec& spec, const SpinHamiltonian& ham,
                          const OptimizerConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const Statevector init = initial_state(spec.n_qubits);
  check_dims(init, ham);
  RestartResult out;
  out.seed = seed;
  std::vector<double> x0 = initial_parameters(spec.total_params, cfg.init_scale, seed);
  const std::vector<double> lower(spec.total_params, -kParamBound);
  const std::vector<double> upper(spec.total_params, kParamBound);
  Objective objective = [&](std::span<const double> x, std::span<double> g) {
    double e = 0.0;
    const std::vector<double> grad = adjoint_gradient(spec, x, ham, init, e);
    std::copy(grad.begin(), grad.end(), g.begin());
    return e;
  };
  try {
    LbfgsResult res = minimize_box(objective, std::move(x0), lower, upper, cfg.lbfgs());
    out.params = std::move(res.x);
    out.energy = res.f;
    out.iterations = res.iterations;
    out.evaluations = res.evaluations;
    out.converged = res.converged;
    out.status = res.status;
  } catch (const OptimizationFailure& e) {
    out.failed = true;
    out.status = e.what();
  }
  return out;
}

VqeResult select_best(const AnsatzSpec& spec, std::vector<RestartResult> restarts,
                      const GroundSolution& ed) {
  VqeResult out;
  int best = -1;
  int ok = 0;
  for (std::size_t i = 0; i < restarts.size(); ++i) {
    const RestartResult& r = restarts[i];
    out.total_iters += r.iterations;
    if (r.failed) continue;
    ++ok;
    out.mean_iters += r.iterations;
    if (best < 0 || r.energy < restarts[best].energy) best = static_cast<int>(i);
  }
  if (best < 0) {
    std::string why = "all " + std::to_string(restarts.size()) + " restarts failed";
    if (!restarts.empty()) why += " (first: " + restarts.front().status + ")";
    throw OptimizationFailure(why);
  }
  out.mean_iters /= ok;
  const RestartResult& win = restarts[best];
  out.best_restart = best;
  out.best_params = win.params;
  out.energy = win.energy;
  out.n_iters = win.iterations;
  out.converged = win.converged;
  out.state = apply_rotations(spec, win.params, initial_state(spec.n_qubits));
  out.fidelity = fidelity(out.state, ed.ground_space);
  out.restarts = std::move(restarts);
  return out;
}

VqeResult minimize(const AnsatzSpec& spec, const SpinHamiltonian& ham, const OptimizerConfig& cfg,
                   const GroundSolution& ed) {
  cfg.validate();
  std::vector<RestartResult> restarts;
  restarts.reserve(cfg.restarts);
  for (int r = 0; r < cfg.restarts; ++r) {
    restarts.push_back(run_restart(spec, ham, cfg, restart_seed(cfg.seed, r)));
  }
  return select_best(spec, std::move(restarts), ed);
}

double fidelity(const Statevector& psi, std::span<const Statevector> ground_space) {
  double f = 0.0;
  for (const Statevector& g : ground_space) {
    if (g.dim() != psi.dim()) throw InvalidParameter("fidelity: dimension mismatch");
    f += std::norm(g.inner(psi));
  }
  return f;
}

}  // namespace lrvqe
