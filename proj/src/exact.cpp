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

#include "lrvqe/exact.hpp"

#include <cmath>
#include <string>

#include "lrvqe/error.hpp"

namespace lrvqe {

DenseOperator dense_matrix(const SpinHamiltonian& ham) {
  if (ham.n_sites > kMaxDenseSites) {
    throw CapacityError("dense_matrix: N = " + std::to_string(ham.n_sites) +
                        " exceeds the dense limit of " + std::to_string(kMaxDenseSites));
  }
  if (ham.n_sites < 1) throw InvalidParameter("dense_matrix: empty Hamiltonian");
  const std::size_t dim = std::size_t{1} << ham.n_sites;
  DenseOperator op;
  op.n_qubits = ham.n_sites;
  op.entries = Eigen::MatrixXd::Zero(dim, dim);
  for (const PauliTerm& term : ham.terms) {
    if (static_cast<int>(term.letters.size()) != ham.n_sites) {
      throw InvalidParameter("dense_matrix: term '" + term.letters + "' has wrong length");
    }
    if (term.letters.find('Y') != std::string::npos) {
      throw InvalidParameter("dense_matrix: Y letters make the matrix complex");
    }
    const std::uint64_t x = term.x_mask();
    const std::uint64_t z = term.z_mask();
    for (std::uint64_t b = 0; b < dim; ++b) {
      op.entries(b ^ x, b) += parity(b & z) ? -term.coeff : term.coeff;
    }
  }
  return op;
}

namespace {

void require_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ContractViolation("ground_state: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw ContractViolation("ground_state: matrix is not symmetric (max deviation " +
                            std::to_string(asym) + ")");
  }
}

Statevector to_state(int n_qubits, const Eigen::VectorXd& v) {
  std::vector<complex> amps(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) amps[i] = v[i];
  return Statevector(n_qubits, std::move(amps));
}

}  // namespace

GroundSolution ground_state(const DenseOperator& op) {
  require_symmetric(op.entries);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.entries);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("ground_state: eigensolver failed to converge");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::Index dim = w.size();

  GroundSolution out;
  out.energy = w[0];
  Eigen::Index degeneracy = 1;
  while (degeneracy < dim && w[degeneracy] - w[0] <= kDegeneracyTol) ++degeneracy;
  out.gap = degeneracy < dim ? w[degeneracy] - w[0] : 0.0;

  Eigen::VectorXd rep;
  if (degeneracy == 1) {
    rep = v.col(0);
    Eigen::Index pick = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (std::abs(rep[i]) > best + 1e-12) {
        best = std::abs(rep[i]);
        pick = i;
      }
    }
    if (rep[pick] < 0.0) rep = -rep;
  } else {
    const Eigen::MatrixXd basis = v.leftCols(degeneracy);
    Eigen::Index pick = 0;
    while (pick < dim && basis.row(pick).squaredNorm() <= 1e-16) ++pick;
    rep = basis * basis.row(pick).transpose();
    rep.normalize();
  }
  out.state = to_state(op.n_qubits, rep);
  out.ground_space.reserve(degeneracy);
  for (Eigen::Index g = 0; g < degeneracy; ++g) {
    out.ground_space.push_back(to_state(op.n_qubits, v.col(g)));
  }
  return out;
}

DispersionPoint dispersion(const ModelParams& params, double k) {
  const CouplingTable table = couplings(params);
  DispersionPoint p;
  p.k = k;
  p.eps = params.field();
  for (std::size_t i = 0; i < table.j.size(); ++i) {
    const double r = static_cast<double>(i + 1);
    p.eps -= table.j[i] * std::cos(k * r);
    p.delta += table.j[i] * std::sin(k * r);
  }
  p.energy = std::sqrt(p.eps * p.eps + p.delta * p.delta);
  return p;
}

}  // namespace lrvqe
