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

#include "lrvqe/statevector.hpp"

#include <cmath>
#include <string>

#include "lrvqe/error.hpp"

namespace lrvqe {

namespace {

constexpr int kMaxQubits = 30;

complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw InvalidParameter("Statevector: unsupported qubit count " + std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, complex{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<complex> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits || amps_.size() != (std::size_t{1} << n_qubits)) {
    throw InvalidParameter("Statevector: amplitude count does not match 2^n_qubits");
  }
}

Statevector Statevector::basis(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw InvalidParameter("Statevector::basis: index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const complex& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void Statevector::normalize() {
  const double n = norm();
  if (n == 0.0) throw InvalidParameter("Statevector::normalize: zero vector");
  for (complex& a : amps_) a /= n;
}

complex Statevector::inner(const Statevector& other) const {
  if (other.dim() != dim()) throw InvalidParameter("Statevector::inner: dimension mismatch");
  complex s{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

void Statevector::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw InvalidParameter("qubit index " + std::to_string(q) + " out of range");
  }
}

void Statevector::apply_x(int q) {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
}

void Statevector::apply_h(int q) {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const complex a0 = amps_[i];
    const complex a1 = amps_[i | bit];
    amps_[i] = s * (a0 + a1);
    amps_[i | bit] = s * (a0 - a1);
  }
}

void Statevector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw InvalidParameter("CNOT: control equals target");
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }
}

void Statevector::apply_rz(int q, double phi) {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  const complex lo = std::polar(1.0, -0.5 * phi);
  const complex hi = std::polar(1.0, 0.5 * phi);
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & bit) ? hi : lo;
}

void Statevector::apply_pauli_rotation(std::uint64_t x_mask, std::uint64_t z_mask, int y_count,
                                       double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (y_count % 4 == 0) {
    apply_real_pauli_rotation(x_mask, z_mask, c, s);
    return;
  }
  const complex y_phase = i_power(y_count);
  // P|b> = y_phase * (-1)^{|b & z|} |b ^ x>
  auto phase = [&](std::uint64_t b) { return parity(b & z_mask) ? -y_phase : y_phase; };
  const complex minus_i_s{0.0, -s};
  if (x_mask == 0) {
    for (std::size_t b = 0; b < amps_.size(); ++b) amps_[b] *= c + minus_i_s * phase(b);
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << (63 - __builtin_clzll(x_mask));
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    if (b & pivot) continue;
    const std::uint64_t f = b ^ x_mask;
    const complex ab = amps_[b];
    const complex af = amps_[f];
    // (P psi)[f] = phase(b) psi[b], (P psi)[b] = phase(f) psi[f]
    amps_[b] = c * ab + minus_i_s * phase(f) * af;
    amps_[f] = c * af + minus_i_s * phase(b) * ab;
  }
}

void Statevector::apply_real_pauli_rotation(std::uint64_t x_mask, std::uint64_t z_mask, double c,
                                            double s) {
  // With P|b> = sign(b) |b ^ x>, exp(-i theta P) maps amplitude pairs through
  // real cosines and signed sines only, so the complex products expand into
  // their real and imaginary parts.
  const double neg_s = -s;
  if (x_mask == 0) {
    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
      const double w = parity(b & z_mask) ? s : neg_s;
      const double re = amps_[b].real();
      const double im = amps_[b].imag();
      amps_[b] = {re * c - im * w, re * w + im * c};
    }
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << (63 - __builtin_clzll(x_mask));
  const std::uint64_t low = pivot - 1;
  const std::uint64_t half = amps_.size() / 2;
  for (std::uint64_t k = 0; k < half; ++k) {
    const std::uint64_t b = ((k & ~low) << 1) | (k & low);
    const std::uint64_t f = b ^ x_mask;
    const complex ab = amps_[b];
    const complex af = amps_[f];
    const double wb = parity(b & z_mask) ? s : neg_s;
    const double wf = parity(f & z_mask) ? s : neg_s;
    amps_[b] = {c * ab.real() - wf * af.imag(), c * ab.imag() + wf * af.real()};
    amps_[f] = {c * af.real() - wb * ab.imag(), c * af.imag() + wb * ab.real()};
  }
}

Statevector Statevector::pauli_applied(std::uint64_t x_mask, std::uint64_t z_mask,
                                       int y_count) const {
  Statevector out = *this;
  const complex y_phase = i_power(y_count);
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    const complex ph = parity(b & z_mask) ? -y_phase : y_phase;
    out.amps_[b ^ x_mask] = ph * amps_[b];
  }
  return out;
}

}  // namespace lrvqe
