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

#include "lrvqe/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "lrvqe/error.hpp"

namespace lrvqe {

std::string to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::NN: return "nn";
    case AnsatzKind::NNN: return "nnn";
    case AnsatzKind::NNNN: return "nnnn";
  }
  return "?";
}

AnsatzKind parse_ansatz_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "nn") return AnsatzKind::NN;
  if (lower == "nnn") return AnsatzKind::NNN;
  if (lower == "nnnn") return AnsatzKind::NNNN;
  throw InvalidParameter("unknown ansatz kind '" + std::string(text) + "' (expected nn|nnn|nnnn)");
}

int block_arity(BlockKind block) {
  switch (block) {
    case BlockKind::XX: return 2;
    case BlockKind::XZX: return 3;
    case BlockKind::XZZX: return 4;
  }
  return 0;
}

namespace {

int min_qubits(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::NN: return 2;
    case AnsatzKind::NNN: return 3;
    case AnsatzKind::NNNN: return 4;
  }
  return 0;
}

void check_shape(AnsatzKind kind, int n_qubits, int layers) {
  if (n_qubits < min_qubits(kind) || n_qubits > 30) {
    throw InvalidParameter(to_string(kind) + " ansatz needs " + std::to_string(min_qubits(kind)) +
                           " to 30 qubits, got " + std::to_string(n_qubits));
  }
  if (layers < 1) throw InvalidParameter("layers must be >= 1, got " + std::to_string(layers));
}

std::vector<BlockKind> families(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::NN: return {BlockKind::XX};
    case AnsatzKind::NNN: return {BlockKind::XX, BlockKind::XZX};
    case AnsatzKind::NNNN: return {BlockKind::XX, BlockKind::XZX, BlockKind::XZZX};
  }
  return {};
}

Gate h(int q) { return {GateType::H, q, -1, -1, 1.0}; }
Gate cnot(int c, int t) { return {GateType::CNOT, t, c, -1, 1.0}; }
Gate rz(int q, int slot, double mult) { return {GateType::RZ, q, -1, slot, mult}; }

}  // namespace

std::vector<Gate> block_gates(BlockKind block, int first, int slot) {
  const int last = first + block_arity(block) - 1;
  std::vector<Gate> g;
  // Basis change X -> Z on the end qubits, parity staircase down, RZ(2t) on
  // the last qubit, staircase up, undo basis change.
  g.push_back(h(first));
  g.push_back(h(last));
  for (int q = first; q < last; ++q) g.push_back(cnot(q, q + 1));
  g.push_back(rz(last, slot, 2.0));
  for (int q = last - 1; q >= first; --q) g.push_back(cnot(q, q + 1));
  g.push_back(h(first));
  g.push_back(h(last));
  return g;
}

int cnots_per_layer(AnsatzKind kind, int n_qubits) {
  check_shape(kind, n_qubits, 1);
  const int n = n_qubits;
  switch (kind) {
    case AnsatzKind::NN: return 2 * (n - 1);
    case AnsatzKind::NNN: return 2 * (3 * n - 5);
    case AnsatzKind::NNNN: return 4 * (3 * n - 7);
  }
  return 0;
}

int params_per_layer(AnsatzKind kind, int n_qubits) {
  check_shape(kind, n_qubits, 1);
  const int n = n_qubits;
  switch (kind) {
    case AnsatzKind::NN: return 2 * n - 1;
    case AnsatzKind::NNN: return 3 * (n - 1);
    case AnsatzKind::NNNN: return 2 * (2 * n - 3);
  }
  return 0;
}

int cnot_count(AnsatzKind kind, int n_qubits, int layers) {
  check_shape(kind, n_qubits, layers);
  return layers * cnots_per_layer(kind, n_qubits);
}

int param_count(AnsatzKind kind, int n_qubits, int layers) {
  check_shape(kind, n_qubits, layers);
  return layers * params_per_layer(kind, n_qubits);
}

Statevector initial_state(int n_qubits) {
  if (n_qubits < 1) throw InvalidParameter("initial_state: n_qubits must be >= 1");
  Statevector s(n_qubits);
  if (n_qubits % 2 == 1) {
    for (int q = 0; q < n_qubits; ++q) s.apply_x(q);
  }
  return s;
}

AnsatzSpec build_ansatz(AnsatzKind kind, int n_qubits, int layers) {
  check_shape(kind, n_qubits, layers);
  AnsatzSpec spec;
  spec.kind = kind;
  spec.n_qubits = n_qubits;
  spec.layers = layers;

  int slot = 0;
  for (BlockKind block : families(kind)) {
    const int arity = block_arity(block);
    for (int first = 0; first + arity <= n_qubits; ++first, ++slot) {
      auto gates = block_gates(block, first, slot);
      spec.layer_template.insert(spec.layer_template.end(), gates.begin(), gates.end());
      PauliRotation rot;
      rot.slot = slot;
      rot.scale = 1.0;
      rot.x_mask = (std::uint64_t{1} << first) | (std::uint64_t{1} << (first + arity - 1));
      for (int q = first + 1; q < first + arity - 1; ++q) rot.z_mask |= std::uint64_t{1} << q;
      spec.layer_rotations.push_back(rot);
    }
  }
  for (int q = 0; q < n_qubits; ++q, ++slot) {
    spec.layer_template.push_back(rz(q, slot, 1.0));
    // RZ(t) = exp(-i (t/2) Z)
    spec.layer_rotations.push_back({0, std::uint64_t{1} << q, slot, 0.5});
  }
  spec.params_per_layer = slot;
  spec.total_params = slot * layers;
  return spec;
}

std::vector<Gate> AnsatzSpec::gates() const {
  std::vector<Gate> out;
  out.reserve(layer_template.size() * layers);
  for (int layer = 0; layer < layers; ++layer) {
    for (Gate g : layer_template) {
      if (g.slot >= 0) g.slot += layer * params_per_layer;
      out.push_back(g);
    }
  }
  return out;
}

std::vector<PauliRotation> AnsatzSpec::rotations() const {
  std::vector<PauliRotation> out;
  out.reserve(layer_rotations.size() * layers);
  for (int layer = 0; layer < layers; ++layer) {
    for (PauliRotation r : layer_rotations) {
      r.slot += layer * params_per_layer;
      out.push_back(r);
    }
  }
  return out;
}

void apply_gate(const Gate& gate, std::span<const double> theta, Statevector& state) {
  switch (gate.type) {
    case GateType::H: state.apply_h(gate.qubit); break;
    case GateType::X: state.apply_x(gate.qubit); break;
    case GateType::CNOT: state.apply_cnot(gate.control, gate.qubit); break;
    case GateType::RZ: state.apply_rz(gate.qubit, gate.multiplier * theta[gate.slot]); break;
  }
}

namespace {

void check_inputs(const AnsatzSpec& spec, std::span<const double> theta, const Statevector& init) {
  if (static_cast<int>(theta.size()) != spec.total_params) {
    throw InvalidParameter("theta has " + std::to_string(theta.size()) + " entries, ansatz needs " +
                           std::to_string(spec.total_params));
  }
  if (init.n_qubits() != spec.n_qubits) {
    throw InvalidParameter("initial state has " + std::to_string(init.n_qubits()) +
                           " qubits, ansatz has " + std::to_string(spec.n_qubits));
  }
}

}  // namespace

Statevector apply_circuit(const AnsatzSpec& spec, std::span<const double> theta,
                          const Statevector& init) {
  check_inputs(spec, theta, init);
  Statevector state = init;
  for (int layer = 0; layer < spec.layers; ++layer) {
    const auto layer_theta = theta.subspan(layer * spec.params_per_layer, spec.params_per_layer);
    for (const Gate& g : spec.layer_template) apply_gate(g, layer_theta, state);
  }
  return state;
}

Statevector apply_rotations(const AnsatzSpec& spec, std::span<const double> theta,
                            const Statevector& init) {
  check_inputs(spec, theta, init);
  Statevector state = init;
  for (int layer = 0; layer < spec.layers; ++layer) {
    const int offset = layer * spec.params_per_layer;
    for (const PauliRotation& r : spec.layer_rotations) {
      state.apply_pauli_rotation(r.x_mask, r.z_mask, 0, r.scale * theta[offset + r.slot]);
    }
  }
  return state;
}

Eigen::MatrixXcd block_unitary(BlockKind block, double theta) {
  const int arity = block_arity(block);
  const Eigen::Index dim = Eigen::Index{1} << arity;
  const std::uint64_t x = 1u | (1u << (arity - 1));
  std::uint64_t z = 0;
  for (int q = 1; q < arity - 1; ++q) z |= 1u << q;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
    p(b ^ x, b) = parity(b & z) ? -1.0 : 1.0;
  }
  return std::cos(theta) * Eigen::MatrixXcd::Identity(dim, dim) -
         complex{0.0, std::sin(theta)} * p;
}

}  // namespace lrvqe
