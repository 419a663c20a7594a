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

#include "lrvqe/model.hpp"

#include <cmath>

#include "lrvqe/error.hpp"

namespace lrvqe {

void ModelParams::validate() const {
  if (n_sites < 2) {
    throw InvalidParameter("n_sites must be >= 2, got " + std::to_string(n_sites));
  }
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw InvalidParameter("alpha must be finite and non-negative");
  }
  if (!std::isfinite(lam) || lam < 0.0) {
    throw InvalidParameter("lambda must be finite and non-negative");
  }
}

double ModelParams::field() const { return kac_norm(n_sites, alpha); }

double ModelParams::coupling() const { return lam * field(); }

double CouplingTable::total() const {
  double s = 0.0;
  for (double v : j) s += v;
  return s;
}

std::uint64_t PauliTerm::x_mask() const {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    if (letters[q] == 'X' || letters[q] == 'Y') m |= std::uint64_t{1} << q;
  }
  return m;
}

std::uint64_t PauliTerm::z_mask() const {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    if (letters[q] == 'Z' || letters[q] == 'Y') m |= std::uint64_t{1} << q;
  }
  return m;
}

double kac_norm(int n_sites, double alpha) {
  if (n_sites < 2) {
    throw InvalidParameter("kac_norm: n_sites must be >= 2, got " + std::to_string(n_sites));
  }
  double a = 0.0;
  for (int r = 1; r < n_sites; ++r) a += std::pow(static_cast<double>(r), -alpha);
  return a;
}

CouplingTable couplings(const ModelParams& params) {
  params.validate();
  // J / A collapses to lam because J = lam * h and h = A.
  const double scale = params.lam;
  CouplingTable table;
  table.j.reserve(params.n_sites - 1);
  for (int r = 1; r < params.n_sites; ++r) {
    table.j.push_back(scale * std::pow(static_cast<double>(r), -params.alpha));
  }
  return table;
}

SpinHamiltonian build_hamiltonian(const ModelParams& params) {
  params.validate();
  const int n = params.n_sites;
  const double h = params.field();
  const CouplingTable table = couplings(params);

  SpinHamiltonian ham;
  ham.n_sites = n;
  ham.terms.reserve(n + n * (n - 1) / 2);
  for (int site = 0; site < n; ++site) {
    std::string letters(n, 'I');
    letters[site] = 'Z';
    ham.terms.push_back({h, std::move(letters)});
  }
  for (int r = 1; r < n; ++r) {
    for (int site = 0; site + r < n; ++site) {
      std::string letters(n, 'I');
      letters[site] = 'X';
      for (int l = site + 1; l < site + r; ++l) letters[l] = 'Z';
      letters[site + r] = 'X';
      ham.terms.push_back({-table.j[r - 1], std::move(letters)});
    }
  }
  return ham;
}

CriticalFields critical_fields(const ModelParams& params) {
  const CouplingTable table = couplings(params);
  CriticalFields out;
  for (std::size_t i = 0; i < table.j.size(); ++i) {
    const int r = static_cast<int>(i) + 1;
    out.k0 += table.j[i];
    out.kpi += (r % 2 == 0 ? 1.0 : -1.0) * table.j[i];
  }
  return out;
}

}  // namespace lrvqe
