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

#ifndef PORTBT_SPECTRUM_HPP
#define PORTBT_SPECTRUM_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "portbt/dense.hpp"
#include "portbt/schur.hpp"
#include "portbt/spin.hpp"

namespace portbt {

// ---------------------------------------------------------------------------
// Closed-form spectrum of rho = sum_i sigma^(i)
//
// Eigenvalues are labeled by the total spin j of the n-spin block A.  Vectors
// coupling an A-sector j "up" with the output qubit B (total spin j + 1/2)
// share the eigenvalue lambda_minus(n, j); vectors coupling "down" (total
// spin j - 1/2) share lambda_plus(n, j).
// ---------------------------------------------------------------------------

inline double lambda_minus(int n, int two_j) {
  if (n < 1 || !detail::spin_in_range(n, two_j))
    throw std::invalid_argument("lambda_minus: invalid sector (n=" + std::to_string(n) +
                                ", 2j=" + std::to_string(two_j) + ")");
  return (0.5 * n - 0.5 * two_j) * std::exp2(-n);
}

inline double lambda_plus(int n, int two_j) {
  if (n < 1 || !detail::spin_in_range(n, two_j))
    throw std::invalid_argument("lambda_plus: invalid sector (n=" + std::to_string(n) +
                                ", 2j=" + std::to_string(two_j) + ")");
  return (0.5 * n + 0.5 * two_j + 1.0) * std::exp2(-n);
}

/// One total-spin sector s of the (n+1)-qubit space AB.  The "minus" branch
/// collects eigenvectors built on A-spin s - 1/2, the "plus" branch those
/// built on A-spin s + 1/2.  A degeneracy of zero marks an absent branch.
struct SpectrumSector {
  int two_s = 0;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double deg_minus = 0.0;
  double deg_plus = 0.0;
};

/// All sectors of rho for n ports, in ascending s.  The top sector
/// s = (n+1)/2 carries eigenvalue zero on its minus branch: it is the kernel.
inline std::vector<SpectrumSector> rho_spectrum(int n) {
  if (n < 1) throw std::invalid_argument("rho_spectrum: n must be positive");
  std::vector<SpectrumSector> out;
  for (int two_s = (n + 1) & 1; two_s <= n + 1; two_s += 2) {
    SpectrumSector sec;
    sec.two_s = two_s;
    if (two_s >= 1 && detail::spin_in_range(n, two_s - 1)) {
      sec.lambda_minus = lambda_minus(n, two_s - 1);
      sec.deg_minus = (two_s + 1) * multiplicity(n, two_s - 1);
    }
    if (detail::spin_in_range(n, two_s + 1)) {
      sec.lambda_plus = lambda_plus(n, two_s + 1);
      sec.deg_plus = (two_s + 1) * multiplicity(n, two_s + 1);
    }
    out.push_back(sec);
  }
  return out;
}

/// Overlap factor c(s, y) = [ s * lm^(-1/y) + (s+1) * lp^(-1/y) ] / (2s + 1)
/// where lm, lp are the two rho eigenvalues inside AB-sector s, the sector
/// carrying a port-anchored singlet state whose remaining n-1 ports couple to
/// total spin s.  Valid for 0 <= s <= (n-1)/2; y must be nonzero.
inline double c_factor(int n, int two_s, double y) {
  if (n < 1 || !detail::spin_in_range(n - 1, two_s))
    throw std::invalid_argument("c_factor: invalid sector (n=" + std::to_string(n) +
                                ", 2s=" + std::to_string(two_s) + ")");
  if (y == 0.0) throw std::invalid_argument("c_factor: y must be nonzero");
  const double s = 0.5 * two_s;
  const double lp = (0.5 * n + s + 1.5) * std::exp2(-n);
  double acc = (s + 1.0) * std::pow(lp, -1.0 / y);
  if (two_s >= 1) {
    const double lm = (0.5 * n - s + 0.5) * std::exp2(-n);
    acc += s * std::pow(lm, -1.0 / y);
  }
  return acc / (two_s + 1.0);
}

// ---------------------------------------------------------------------------
// Dense operators on the (n+1)-qubit space A_1..A_n, B
// ---------------------------------------------------------------------------

/// Leg dimensions for the space A_1..A_n, B (all qubits, B last).
inline std::vector<Eigen::Index> ab_dims(int n) {
  return std::vector<Eigen::Index>(static_cast<std::size_t>(n) + 1, 2);
}

/// Two-qubit singlet (|01> - |10>) / sqrt(2).
inline Eigen::VectorXcd psi_minus() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[1] = cxd(1.0 / std::sqrt(2.0), 0.0);
  v[2] = cxd(-1.0 / std::sqrt(2.0), 0.0);
  return v;
}

inline Eigen::MatrixXcd singlet_projector() {
  const Eigen::VectorXcd v = psi_minus();
  return v * v.adjoint();
}

/// sigma^(port) = 2^-(n-1) * P_singlet(A_port, B) (x) identity, as a dense
/// matrix on the full (n+1)-qubit space.  Ports are zero-based.
inline Eigen::MatrixXcd build_sigma(int n, int port) {
  if (n < 1 || port < 0 || port >= n)
    throw std::invalid_argument("build_sigma: port out of range");
  Eigen::MatrixXcd full = embed_operator(singlet_projector(), ab_dims(n), {port, n});
  return std::exp2(1 - n) * full;
}

inline Eigen::MatrixXcd build_rho(int n) {
  Eigen::MatrixXcd rho = build_sigma(n, 0);
  for (int port = 1; port < n; ++port) rho += build_sigma(n, port);
  return rho;
}

// ---------------------------------------------------------------------------
// Analytic eigenvectors of rho
// ---------------------------------------------------------------------------

/// One eigenvector of rho: an A-sector vector |Phi(j_A, m, alpha)> coupled
/// with the B qubit to total spin J = j_A +- 1/2.  plus_branch = true means
/// J = j_A - 1/2 (eigenvalue lambda_plus), false means J = j_A + 1/2
/// (eigenvalue lambda_minus).
struct RhoEigenvector {
  double eigenvalue = 0.0;
  int two_J = 0;
  int two_M = 0;
  int two_jA = 0;
  int alpha = 0;
  bool plus_branch = false;
  Eigen::VectorXcd vec;
};

struct RhoEigensystem {
  int n = 0;
  std::vector<RhoEigenvector> vectors;

  Eigen::Index dim() const { return Eigen::Index{1} << (n + 1); }

  /// Projector onto the total-spin-s subspace of AB (both branches).
  Eigen::MatrixXcd sector_projector(int two_s) const {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& ev : vectors)
      if (ev.two_J == two_s) p += ev.vec * ev.vec.adjoint();
    return p;
  }

  /// Projector onto one eigenvalue branch inside sector s.  Returns the zero
  /// matrix when the branch is absent.
  Eigen::MatrixXcd branch_projector(int two_s, bool plus_branch) const {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& ev : vectors)
      if (ev.two_J == two_s && ev.plus_branch == plus_branch) p += ev.vec * ev.vec.adjoint();
    return p;
  }

  /// Projector onto ker(rho): the minus branch of the top sector s = (n+1)/2.
  Eigen::MatrixXcd kernel_projector() const { return branch_projector(n + 1, false); }
};

/// Builds every eigenvector of rho from the Schur basis of the n-spin block.
/// The result is a complete orthonormal basis of the (n+1)-qubit space,
/// including the kernel.
inline RhoEigensystem rho_eigensystem(const SchurBasis& basis) {
  const int n = basis.n;
  RhoEigensystem sys;
  sys.n = n;
  const Eigen::Index dim_a = Eigen::Index{1} << n;
  for (int two_j = n; two_j >= (n & 1); two_j -= 2) {
    const auto& sector = basis.sector(two_j);
    if (sector.empty()) continue;
    const int n_paths = static_cast<int>(sector.size()) / (two_j + 1);
    for (int alpha = 0; alpha < n_paths; ++alpha) {
      for (int branch = 0; branch < 2; ++branch) {
        const bool plus_branch = (branch == 1);
        const int two_J = plus_branch ? two_j - 1 : two_j + 1;
        if (two_J < 0) continue;
        const double eigenvalue =
            plus_branch ? lambda_plus(n, two_j) : lambda_minus(n, two_j);
        for (int two_M = -two_J; two_M <= two_J; two_M += 2) {
          Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(2 * dim_a);
          for (int mb = -1; mb <= 1; mb += 2) {
            const int two_mA = two_M - mb;
            if (two_mA < -two_j || two_mA > two_j) continue;
            const double coeff = cg(two_j, two_mA, mb, two_J);
            if (coeff == 0.0) continue;
            const int idx = basis.find(two_j, two_mA, alpha);
            if (idx < 0)
              throw std::logic_error("rho_eigensystem: missing Schur vector");
            const auto& phi = basis.vectors[static_cast<std::size_t>(idx)].amps;
            const Eigen::Index b_bit = (mb > 0) ? 1 : 0;
            for (Eigen::Index ia = 0; ia < dim_a; ++ia)
              vec[2 * ia + b_bit] += coeff * phi[ia];
          }
          RhoEigenvector entry;
          entry.eigenvalue = eigenvalue;
          entry.two_J = two_J;
          entry.two_M = two_M;
          entry.two_jA = two_j;
          entry.alpha = alpha;
          entry.plus_branch = plus_branch;
          entry.vec = std::move(vec);
          sys.vectors.push_back(std::move(entry));
        }
      }
    }
  }
  return sys;
}

struct EigensystemCheck {
  double max_eigen_residual = 0.0;    // max |rho v - lambda v| over all vectors
  double max_gram_residual = 0.0;     // max |<v_i|v_j> - delta_ij|
  int count = 0;
};

inline EigensystemCheck verify_eigensystem(const RhoEigensystem& sys,
                                           const Eigen::MatrixXcd& rho) {
  EigensystemCheck check;
  check.count = static_cast<int>(sys.vectors.size());
  for (const auto& ev : sys.vectors) {
    const double res = (rho * ev.vec - ev.eigenvalue * ev.vec).cwiseAbs().maxCoeff();
    check.max_eigen_residual = std::max(check.max_eigen_residual, res);
  }
  for (std::size_t i = 0; i < sys.vectors.size(); ++i)
    for (std::size_t j = i; j < sys.vectors.size(); ++j) {
      const cxd g = sys.vectors[i].vec.dot(sys.vectors[j].vec);
      const double target = (i == j) ? 1.0 : 0.0;
      check.max_gram_residual = std::max(check.max_gram_residual, std::abs(g - target));
    }
  return check;
}

/// Port-anchored probe state: a singlet on (A_port, B) tensored with the
/// Schur vector |Phi(s, m, beta)> of the remaining n-1 ports.  Legs are
/// returned in canonical order A_1..A_n, B.
inline Eigen::VectorXcd xi_state(const SchurBasis& rest_basis, int port, int two_s,
                                 int two_m, int beta) {
  const int n = rest_basis.n + 1;
  if (port < 0 || port >= n) throw std::invalid_argument("xi_state: port out of range");
  const int idx = rest_basis.find(two_s, two_m, beta);
  if (idx < 0) throw std::invalid_argument("xi_state: no such Schur vector");
  const Eigen::VectorXcd& phi = rest_basis.vectors[static_cast<std::size_t>(idx)].amps;

  // Assemble on legs ordered (A_port, B, rest...) then permute to canonical.
  Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(Eigen::Index{1} << (n + 1));
  const Eigen::VectorXcd pm = psi_minus();
  const Eigen::Index dim_rest = phi.size();
  for (Eigen::Index pair = 0; pair < 4; ++pair)
    if (pm[pair] != cxd(0.0, 0.0))
      for (Eigen::Index r = 0; r < dim_rest; ++r)
        raw[pair * dim_rest + r] = pm[pair] * phi[r];

  std::vector<int> perm(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    if (k == port)
      perm[static_cast<std::size_t>(k)] = 0;  // A_port was first
    else if (k == n)
      perm[static_cast<std::size_t>(k)] = 1;  // B was second
    else
      perm[static_cast<std::size_t>(k)] = 2 + (k < port ? k : k - 1);
  }
  return permute_legs(raw, ab_dims(n), perm);
}

}  // namespace portbt

#endif  // PORTBT_SPECTRUM_HPP
