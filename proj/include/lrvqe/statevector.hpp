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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace lrvqe {

using complex = std::complex<double>;

/// Dense N-qubit state. Little-endian: qubit q is bit q of the basis index.
class Statevector {
 public:
  Statevector() = default;
  /// |0...0> on n_qubits qubits.
  explicit Statevector(int n_qubits);
  Statevector(int n_qubits, std::vector<complex> amps);

  static Statevector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const complex> amps() const { return amps_; }
  std::span<complex> amps() { return amps_; }
  complex operator[](std::size_t i) const { return amps_[i]; }
  complex& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  void normalize();
  /// <this|other>
  complex inner(const Statevector& other) const;

  // Primitive gates, applied in place.
  void apply_x(int q);
  void apply_h(int q);
  void apply_cnot(int control, int target);
  /// RZ(phi) = diag(exp(-i phi/2), exp(+i phi/2)).
  void apply_rz(int q, double phi);

  /// exp(-i theta P) for the Pauli string P given by its masks. `y_count`
  /// counts Y letters (each Y = i X Z).
  void apply_pauli_rotation(std::uint64_t x_mask, std::uint64_t z_mask, int y_count,
                            double theta);
  /// P|psi> for the same mask representation.
  Statevector pauli_applied(std::uint64_t x_mask, std::uint64_t z_mask, int y_count) const;

  bool operator==(const Statevector&) const = default;

 private:
  void check_qubit(int q) const;
  /// exp(-i theta P) when the phase of P is real; c = cos(theta), s = sin(theta).
  void apply_real_pauli_rotation(std::uint64_t x_mask, std::uint64_t z_mask, double c, double s);

  int n_qubits_ = 0;
  std::vector<complex> amps_;
};

inline int parity(std::uint64_t v) { return __builtin_popcountll(v) & 1; }

}  // namespace lrvqe
