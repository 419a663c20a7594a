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

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "lrvqe/statevector.hpp"

namespace lrvqe {

/// Two-site reduced density matrix; basis index 2*q_i + q_j.
struct TwoQubitDensity {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
};

/// Which pair represents distance r in a profile.
enum class PairStrategy { Average, Central, FirstPair };

std::string to_string(PairStrategy s);
/// "average", "central", "first-pair".
PairStrategy parse_pair_strategy(std::string_view text);

struct NegativityProfile {
  /// values[r - 1] is the log-negativity at distance r.
  std::vector<double> values;
  PairStrategy strategy = PairStrategy::Average;

  bool operator==(const NegativityProfile&) const = default;
};

TwoQubitDensity reduced_density_two(const Statevector& psi, int i, int j);

/// log2 of the trace norm of the partial transpose over the first qubit.
/// Values within 1e-12 of zero are reported as exactly zero.
double log_negativity(const TwoQubitDensity& rho);

NegativityProfile negativity_profile(const Statevector& psi,
                                     PairStrategy strategy = PairStrategy::Average);

/// Sum over distances of |ed - vqe|.
double entanglement_error(const NegativityProfile& vqe, const NegativityProfile& ed);

}  // namespace lrvqe
