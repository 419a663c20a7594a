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
#include <string>
#include <vector>

namespace lrvqe {

/// Parameters of the long-range extended Ising chain
///
///   H = sum_n [ h Z_n - sum_r J_r X_n Z_{n+1} ... Z_{n+r-1} X_{n+r} ]
///
/// with Kac-normalized couplings J_r = (J / A) r^-alpha, A = sum_r r^-alpha,
/// field h = A and J = lam * h. The chain is open: only pairs with n + r <= N
/// are present.
struct ModelParams {
  int n_sites = 4;
  double alpha = 0.5;
  double lam = 0.5;

  /// Throws InvalidParameter on n_sites < 2, negative or non-finite alpha/lam.
  void validate() const;

  double field() const;     // h = A(N, alpha)
  double coupling() const;  // J = lam * h
};

/// j[r - 1] = J_r for r = 1..N-1.
struct CouplingTable {
  std::vector<double> j;

  double total() const;
};

/// A real-weighted Pauli string. letters[q] acts on qubit q.
struct PauliTerm {
  double coeff = 0.0;
  std::string letters;

  /// Bit q set when letters[q] flips the basis state (X or Y).
  std::uint64_t x_mask() const;
  /// Bit q set when letters[q] carries a Z phase (Z or Y).
  std::uint64_t z_mask() const;
};

struct SpinHamiltonian {
  int n_sites = 0;
  std::vector<PauliTerm> terms;
};

/// A(N, alpha) = sum_{r=1}^{N-1} r^-alpha.
double kac_norm(int n_sites, double alpha);

CouplingTable couplings(const ModelParams& params);

/// Field terms (+h Z_n) first in site order, then interaction terms ordered by
/// range r and left site n.
SpinHamiltonian build_hamiltonian(const ModelParams& params);

struct CriticalFields {
  double k0 = 0.0;   // sum_r J_r, gap closing at k = 0
  double kpi = 0.0;  // sum_r (-1)^r J_r, gap closing at k = pi
};

CriticalFields critical_fields(const ModelParams& params);

}  // namespace lrvqe
