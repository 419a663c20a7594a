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
#include <vector>

#include "lrvqe/model.hpp"
#include "lrvqe/statevector.hpp"

namespace lrvqe {

inline constexpr int kMaxDenseSites = 12;
/// Eigenvalues within this window of E0 span the ground space.
inline constexpr double kDegeneracyTol = 1e-10;

/// Real symmetric matrix of a model Hamiltonian in the little-endian basis.
struct DenseOperator {
  int n_qubits = 0;
  Eigen::MatrixXd entries;

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
};

struct GroundSolution {
  double energy = 0.0;
  /// Representative ground state (real, sign-fixed).
  Statevector state;
  /// E1 - E0 against the next distinct eigenvalue; 0 when the spectrum is a
  /// single degenerate level.
  double gap = 0.0;
  /// Orthonormal basis of every eigenvector within kDegeneracyTol of E0.
  std::vector<Statevector> ground_space;

  bool operator==(const GroundSolution&) const = default;
};

struct DispersionPoint {
  double k = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  double energy = 0.0;
};

/// Throws CapacityError for N > 12 and InvalidParameter for Y-containing terms.
DenseOperator dense_matrix(const SpinHamiltonian& ham);

/// Full symmetric eigendecomposition. Throws ContractViolation on a
/// non-symmetric matrix.
///
/// Sign convention: a non-degenerate ground state is flipped so that its
/// largest-magnitude amplitude (lowest index on ties) is positive. A
/// degenerate ground space is represented by the normalized projection of the
/// lowest basis vector with non-negligible weight in the space.
GroundSolution ground_state(const DenseOperator& op);

/// Free-fermion quasiparticle dispersion at momentum k.
DispersionPoint dispersion(const ModelParams& params, double k);

}  // namespace lrvqe
