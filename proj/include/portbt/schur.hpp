// Copyright 2026 The portbt Authors
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

#ifndef PORTBT_SCHUR_HPP
#define PORTBT_SCHUR_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "portbt/spin.hpp"

namespace portbt {

/// Sequence of intermediate total spins visited while coupling n spin-1/2
/// systems left to right: j_1 = 1/2 fixed, and each later spin moves the
/// total by +-1/2 (never below 0).  Stored as doubled integers.
struct CouplingPath {
  std::vector<int> two_js;

  CouplingPath() = default;
  explicit CouplingPath(std::vector<int> tj) : two_js(std::move(tj)) { validate(); }

  void validate() const {
    if (two_js.empty() || two_js.front() != 1)
      throw std::invalid_argument("CouplingPath: must start at j = 1/2");
    for (std::size_t k = 1; k < two_js.size(); ++k) {
      const int d = two_js[k] - two_js[k - 1];
      if ((d != 1 && d != -1) || two_js[k] < 0)
        throw std::invalid_argument("CouplingPath: steps must be +-1/2 and stay >= 0");
    }
  }

  int length() const { return static_cast<int>(two_js.size()); }
  int final_two_j() const { return two_js.back(); }

  /// Signs of the n-1 coupling steps (+1 for up, -1 for down).
  std::vector<int> steps() const {
    std::vector<int> s;
    for (std::size_t k = 1; k < two_js.size(); ++k) s.push_back(two_js[k] - two_js[k - 1]);
    return s;
  }

  friend bool operator==(const CouplingPath&, const CouplingPath&) = default;
};

/// One member of the coupled basis: total spin j, projection m, the coupling
/// path that identifies the multiplicity copy, and its dense amplitudes in
/// the computational product basis (|0> = m_z = -1/2, |1> = m_z = +1/2; the
/// first spin is the most significant bit).
struct SchurVector {
  int two_j = 0;
  int two_m = 0;
  int path_ordinal = 0;  ///< position of `path` within its spin sector
  CouplingPath path;
  Eigen::VectorXcd amps;
};

struct SchurOptions {
  int max_spins = 14;  ///< refuse dense construction beyond this many spins
};

/// All coupling paths of n spins ending at total spin j, in lexicographic
/// step order with a down-step ordered before an up-step.  The count equals
/// multiplicity(n, two_j).
inline std::vector<CouplingPath> enumerate_paths(int n, int two_j) {
  if (n <= 0) throw std::invalid_argument("enumerate_paths: n must be positive");
  std::vector<CouplingPath> out;
  std::vector<int> cur{1};
  auto rec = [&](auto&& self, int k, int tj) -> void {
    if (k == n) {
      if (tj == two_j) out.push_back(CouplingPath{std::vector<int>(cur)});
      return;
    }
    // Prune paths that cannot reach two_j in the remaining steps.
    const int remaining = n - k;
    if (std::abs(tj - two_j) > remaining) return;
    if (tj >= 1) {
      cur.push_back(tj - 1);
      self(self, k + 1, tj - 1);
      cur.pop_back();
    }
    cur.push_back(tj + 1);
    self(self, k + 1, tj + 1);
    cur.pop_back();
  };
  rec(rec, 1, 1);
  return out;
}

/// Spin-sector dimensions (two_j -> number of paths) of n coupled spin-1/2
/// systems, computed combinatorially (no dense vectors involved).
inline std::map<int, double> schur_sector_counts(int n) {
  std::map<int, double> counts;
  for (int two_j = two_j_min(n); two_j <= n; two_j += 2)
    counts[two_j] = multiplicity(n, two_j);
  return counts;
}

/// Orthonormal coupled basis of n spin-1/2 systems.
struct SchurBasis {
  int n = 0;
  std::vector<SchurVector> vectors;  ///< grouped by (j desc, m asc, path asc)

  /// Indices of all vectors with total spin two_j.
  std::vector<int> sector(int two_j) const {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(vectors.size()); ++i)
      if (vectors[i].two_j == two_j) idx.push_back(i);
    return idx;
  }

  /// Looks up the vector with the given (j, m, path ordinal); -1 if absent.
  int find(int two_j, int two_m, int path_ordinal) const {
    for (int i = 0; i < static_cast<int>(vectors.size()); ++i) {
      const auto& v = vectors[i];
      if (v.two_j == two_j && v.two_m == two_m && v.path_ordinal == path_ordinal)
        return i;
    }
    return -1;
  }
};

namespace detail {

/// Extends the (2j+1) m-resolved vectors of a prefix by one spin coupled to
/// total spin two_J = two_j +- 1.  Vector layout appends the new spin as the
/// least significant qubit.
inline std::vector<Eigen::VectorXd> couple_step(const std::vector<Eigen::VectorXd>& parent,
                                                int two_j, int two_J) {
  const Eigen::Index dim = parent.empty() ? 1 : parent.front().size();
  std::vector<Eigen::VectorXd> child;
  child.reserve(two_J + 1);
  for (int two_M = -two_J; two_M <= two_J; two_M += 2) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * dim);
    for (int bit = 0; bit <= 1; ++bit) {
      const int sign = bit ? 1 : -1;
      const int two_m1 = two_M - sign;
      if (std::abs(two_m1) > two_j) continue;
      const double c = cg(two_j, two_m1, sign, two_J);
      if (c == 0.0) continue;
      const auto& p = parent[(two_m1 + two_j) / 2];
      for (Eigen::Index idx = 0; idx < dim; ++idx) v[2 * idx + bit] = c * p[idx];
    }
    child.push_back(std::move(v));
  }
  return child;
}

}  // namespace detail

/// Builds the full coupled basis of n spin-1/2 systems: 2^n orthonormal
/// vectors labelled (j, m, path).  Paths are visited depth first with the
/// down-step before the up-step, which makes the path ordinal within each
/// spin sector match lexicographic step order.
inline SchurBasis schur_basis(int n, const SchurOptions& opts = {}) {
  if (n <= 0) throw std::invalid_argument("schur_basis: n must be positive");
  if (n > opts.max_spins)
    throw capacity_error("schur_basis: n = " + std::to_string(n) +
                         " exceeds the dense limit of " + std::to_string(opts.max_spins) +
                         " spins");

  // leaves[two_j] = (path, m-resolved vectors) in path order.
  std::map<int, std::vector<std::pair<CouplingPath, std::vector<Eigen::VectorXd>>>, std::greater<>>
      leaves;
  std::vector<int> cur{1};

  auto rec = [&](auto&& self, int k, int two_j, const std::vector<Eigen::VectorXd>& vecs) -> void {
    if (k == n) {
      leaves[two_j].emplace_back(CouplingPath{std::vector<int>(cur)}, vecs);
      return;
    }
    if (two_j >= 1) {
      cur.push_back(two_j - 1);
      self(self, k + 1, two_j - 1, detail::couple_step(vecs, two_j, two_j - 1));
      cur.pop_back();
    }
    cur.push_back(two_j + 1);
    self(self, k + 1, two_j + 1, detail::couple_step(vecs, two_j, two_j + 1));
    cur.pop_back();
  };

  std::vector<Eigen::VectorXd> seed(2);
  seed[0] = Eigen::Vector2d(1.0, 0.0);  // m = -1/2 -> |0>
  seed[1] = Eigen::Vector2d(0.0, 1.0);  // m = +1/2 -> |1>
  rec(rec, 1, 1, seed);

  SchurBasis basis;
  basis.n = n;
  basis.vectors.reserve(std::size_t{1} << n);
  for (const auto& [two_j, entries] : leaves) {
    for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
      for (int ordinal = 0; ordinal < static_cast<int>(entries.size()); ++ordinal) {
        const auto& [path, vecs] = entries[ordinal];
        SchurVector sv;
        sv.two_j = two_j;
        sv.two_m = two_m;
        sv.path_ordinal = ordinal;
        sv.path = path;
        sv.amps = vecs[(two_m + two_j) / 2].cast<std::complex<double>>();
        basis.vectors.push_back(std::move(sv));
      }
    }
  }
  return basis;
}

/// Dense projector onto the total-spin-j subspace of n spins.
inline Eigen::MatrixXcd spin_projector(const SchurBasis& basis, int two_j) {
  const Eigen::Index dim = Eigen::Index{1} << basis.n;
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& v : basis.vectors)
    if (v.two_j == two_j) proj.noalias() += v.amps * v.amps.adjoint();
  return proj;
}

}  // namespace portbt

#endif  // PORTBT_SCHUR_HPP
