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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrvqe/statevector.hpp"

namespace lrvqe {

/// Entangling range of the structure-aware ansatz.
///   NN:   exp(-i t X_j X_{j+1})
///   NNN:  NN plus exp(-i t X_j Z_{j+1} X_{j+2})
///   NNNN: NNN plus exp(-i t X_j Z_{j+1} Z_{j+2} X_{j+3})
enum class AnsatzKind { NN, NNN, NNNN };

std::string to_string(AnsatzKind kind);
/// Accepts "nn", "nnn", "nnnn" in any case.
AnsatzKind parse_ansatz_kind(std::string_view text);

/// Entangling block families, named by their Pauli string.
enum class BlockKind { XX, XZX, XZZX };

int block_arity(BlockKind block);

enum class GateType { H, X, CNOT, RZ };

/// Primitive gate of the native set {H, X, CNOT, RZ}. For RZ, the applied
/// angle is multiplier * theta[slot].
struct Gate {
  GateType type = GateType::H;
  int qubit = 0;   // target for CNOT
  int control = -1;
  int slot = -1;
  double multiplier = 1.0;

  bool operator==(const Gate&) const = default;
};

/// One parameterized factor exp(-i scale * theta[slot] * P) with P a Y-free
/// Pauli string. The block-level view of the same circuit as the gate
/// template; used by the optimizer for speed and for adjoint gradients.
struct PauliRotation {
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int slot = 0;
  double scale = 1.0;
};

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::NN;
  int n_qubits = 0;
  int layers = 0;
  int params_per_layer = 0;
  int total_params = 0;
  /// Gates of one layer; slots are relative to the layer's parameter offset.
  std::vector<Gate> layer_template;
  /// Rotations of one layer, same slot convention.
  std::vector<PauliRotation> layer_rotations;

  /// Every gate of the full circuit with absolute parameter slots.
  std::vector<Gate> gates() const;
  std::vector<PauliRotation> rotations() const;
};

Statevector initial_state(int n_qubits);

AnsatzSpec build_ansatz(AnsatzKind kind, int n_qubits, int layers);

/// Native-gate decomposition of exp(-i theta[slot] P) for the block whose
/// first qubit is `first`.
std::vector<Gate> block_gates(BlockKind block, int first, int slot);

/// Applies the gate template gate by gate.
Statevector apply_circuit(const AnsatzSpec& spec, std::span<const double> theta,
                          const Statevector& init);

/// Same circuit applied block by block as Pauli rotations. Agrees with
/// apply_circuit to rounding; much cheaper.
Statevector apply_rotations(const AnsatzSpec& spec, std::span<const double> theta,
                            const Statevector& init);

void apply_gate(const Gate& gate, std::span<const double> theta, Statevector& state);

/// cos(theta) I - i sin(theta) P on the block's qubits, little-endian.
Eigen::MatrixXcd block_unitary(BlockKind block, double theta);

int cnot_count(AnsatzKind kind, int n_qubits, int layers);
int param_count(AnsatzKind kind, int n_qubits, int layers);
int cnots_per_layer(AnsatzKind kind, int n_qubits);
int params_per_layer(AnsatzKind kind, int n_qubits);

}  // namespace lrvqe
