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

#include "lrvqe/entanglement.hpp"

#include <cmath>

#include "lrvqe/error.hpp"

namespace lrvqe {

std::string to_string(PairStrategy s) {
  switch (s) {
    case PairStrategy::Average: return "average";
    case PairStrategy::Central: return "central";
    case PairStrategy::FirstPair: return "first-pair";
  }
  return "?";
}

PairStrategy parse_pair_strategy(std::string_view text) {
  if (text == "average") return PairStrategy::Average;
  if (text == "central") return PairStrategy::Central;
  if (text == "first-pair") return PairStrategy::FirstPair;
  throw InvalidParameter("unknown pair strategy '" + std::string(text) +
                         "' (expected average|central|first-pair)");
}

TwoQubitDensity reduced_density_two(const Statevector& psi, int i, int j) {
  const int n = psi.n_qubits();
  if (i == j) throw InvalidParameter("reduced_density_two: sites must differ");
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw InvalidParameter("reduced_density_two: site index out of range");
  }
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  const std::uint64_t pair = bi | bj;
  auto embed = [&](std::uint64_t env, int l) {
    return env | ((l & 2) ? bi : 0) | ((l & 1) ? bj : 0);
  };

  TwoQubitDensity out;
  const auto amps = psi.amps();
  for (std::uint64_t env = 0; env < psi.dim(); ++env) {
    if (env & pair) continue;
    complex a[4];
    for (int l = 0; l < 4; ++l) a[l] = amps[embed(env, l)];
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) out.rho(r, c) += a[r] * std::conj(a[c]);
    }
  }
  return out;
}

double log_negativity(const TwoQubitDensity& d) {
  const Eigen::Matrix4cd& rho = d.rho;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ContractViolation("log_negativity: density matrix is not Hermitian");
  }
  // Partial transpose over the first qubit: swap its ket and bra indices.
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int e = 0; e < 2; ++e) pt(2 * c + b, 2 * a + e) = rho(2 * a + b, 2 * c + e);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
  const double value = std::log2(trace_norm);
  return std::abs(value) <= 1e-12 ? 0.0 : value;
}

NegativityProfile negativity_profile(const Statevector& psi, PairStrategy strategy) {
  const int n = psi.n_qubits();
  if (n < 2) throw InvalidParameter("negativity_profile: need at least two sites");
  NegativityProfile profile;
  profile.strategy = strategy;
  profile.values.reserve(n - 1);
  for (int r = 1; r < n; ++r) {
    double value = 0.0;
    switch (strategy) {
      case PairStrategy::Average: {
        for (int i = 0; i + r < n; ++i) value += log_negativity(reduced_density_two(psi, i, i + r));
        value /= static_cast<double>(n - r);
        break;
      }
      case PairStrategy::Central: {
        // Midpoint i + r/2 (0-based) closest to the chain centre (n-1)/2;
        // strict comparison keeps the lower i on ties.
        int best = 0;
        double best_dist = 1e300;
        for (int i = 0; i + r < n; ++i) {
          const double dist = std::abs(i + 0.5 * r - 0.5 * (n - 1));
          if (dist < best_dist - 1e-12) {
            best_dist = dist;
            best = i;
          }
        }
        value = log_negativity(reduced_density_two(psi, best, best + r));
        break;
      }
      case PairStrategy::FirstPair:
        value = log_negativity(reduced_density_two(psi, 0, r));
        break;
    }
    profile.values.push_back(value);
  }
  return profile;
}

double entanglement_error(const NegativityProfile& vqe, const NegativityProfile& ed) {
  if (vqe.values.size() != ed.values.size()) {
    throw InvalidParameter("entanglement_error: profile lengths differ");
  }
  if (vqe.strategy != ed.strategy) {
    throw InvalidParameter("entanglement_error: profiles use different pair strategies");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < ed.values.size(); ++r) total += std::abs(ed.values[r] - vqe.values[r]);
  return total;
}

}  // namespace lrvqe
