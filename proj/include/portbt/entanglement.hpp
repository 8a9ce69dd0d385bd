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

#ifndef PORTBT_ENTANGLEMENT_HPP
#define PORTBT_ENTANGLEMENT_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "portbt/channel.hpp"
#include "portbt/dense.hpp"
#include "portbt/protocols.hpp"
#include "portbt/spin.hpp"

namespace portbt {

/// Shannon entropy in bits of a probability vector; entries at or below
/// zero (roundoff) contribute nothing.
inline double entropy_bits(const Eigen::VectorXd& probs) {
  NeumaierSum acc;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (p > 0.0) acc.add(-p * std::log2(p));
  }
  return acc.value();
}

/// Entropy of a pure state across the cut (keep | rest), from the
/// eigenvalues of the reduced density matrix.
inline double cut_entropy_eig(const Eigen::VectorXcd& state,
                              const std::vector<Eigen::Index>& dims,
                              const std::vector<int>& keep) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(partial_trace_keep(state, dims, keep),
                                                     Eigen::EigenvaluesOnly);
  return entropy_bits(es.eigenvalues());
}

/// Same quantity from the Schmidt coefficients (singular values of the
/// reshaped amplitude matrix); an independent numerical route.
inline double cut_entropy_svd(const Eigen::VectorXcd& state,
                              const std::vector<Eigen::Index>& dims,
                              const std::vector<int>& keep) {
  const Eigen::VectorXd sv = schmidt_values(state, dims, keep);
  return entropy_bits(sv.cwiseProduct(sv));
}

/// Entanglement of the resource state across the A : B cut, in ebits:
/// E = -sum_j (2j+1) g(j) q_j log2 q_j with q_j = weight(j)/2^n.  Evaluated
/// through logarithms so it stays finite for any n.
inline double initial_entanglement(const ResourceSpec& resource) {
  const int n = resource.n;
  NeumaierSum acc;
  for (int two_j = two_j_min(n); two_j <= n; two_j += 2) {
    const double w = resource.weight(two_j);
    if (w <= 0.0) continue;
    const double log_q = std::log(w) - n * std::numbers::ln2;
    const double mass = (two_j + 1.0) * std::exp(log_multiplicity(n, two_j) + log_q);
    acc.add(-mass * log_q / std::numbers::ln2);
  }
  return acc.value();
}

struct EntanglementReport {
  ProtocolVariant variant{};
  int n = 0;
  double E_ini = 0.0;
  double E_res = 0.0;
  double p = 0.0;
  double average_residual = 0.0;     ///< p * E_res (failure branch counted as zero)
  double consumption = 0.0;          ///< E_ini - E_res (successful run)
  double average_consumption = 0.0;  ///< E_ini - p * E_res
  bool residual_available = false;
};

struct ResidualOptions {
  int dense_limit_n = 10;  ///< largest n for which the residual state is materialized
  int svd_limit_n = 6;     ///< largest n for which the SVD entropy cross-check runs
  SchurOptions schur{};
  ChannelLimits limits{};
};

struct ResidualDetail {
  Eigen::VectorXcd state;  ///< normalized success-branch state, legs A_1..A_n, B_1..B_n, C, D
  double branch_probability = 0.0;  ///< trace of the unnormalized branch (= p/n)
  double entropy_eig = 0.0;         ///< residual-cut entropy via reduced eigenvalues
  double entropy_svd = 0.0;         ///< residual-cut entropy via Schmidt coefficients
};

/// Success branch of outcome 1 when half of a singlet on (C, D) is
/// teleported.  The measurement operator is applied as the factored root
/// K = (P^- (x) sqrt(theta)) (X^(-1/2) (x) 1), which satisfies K'K = Pi_1;
/// the branch differs from the sqrt(Pi_1) convention only by an isometry on
/// the measured (A, C) side, so every reduced quantity on Bob's side — in
/// particular the residual-cut entropy — is unchanged, while the large
/// eigensolve of Pi_1 is avoided.
inline ResidualDetail residual_state(const DenseContext& ctx, ProtocolVariant v,
                                     const ResidualOptions& opts = {}) {
  if (is_deterministic(v))
    throw std::invalid_argument(
        "residual_state: residual accounting is defined for the probabilistic variants");
  const int n = ctx.n;
  const int n_legs = 2 * n + 2;
  const std::vector<Eigen::Index> dims(static_cast<std::size_t>(n_legs), 2);
  detail::check_amplitudes(total_dim(dims), opts.limits, "residual_state");

  const ResourceSpec rs = resource_spec(v, n);
  const Eigen::VectorXcd resource = rs.resource_state(ctx.basis_a);
  const Eigen::VectorXcd cd = psi_minus();
  Eigen::VectorXcd full(resource.size() * 4);
  for (Eigen::Index i = 0; i < resource.size(); ++i)
    for (Eigen::Index c = 0; c < 4; ++c) full[i * 4 + c] = resource[i] * cd[c];

  if (!rs.is_mes()) {
    std::vector<int> a_legs;
    for (int k = 0; k < n; ++k) a_legs.push_back(k);
    full = apply_to_legs(full, dims, a_legs, rs.power_matrix(ctx.basis_a, -0.5));
  }
  full = apply_to_legs(full, dims, {0, 2 * n}, singlet_projector());
  if (n >= 2) {
    std::vector<int> rest;
    for (int k = 1; k < n; ++k) rest.push_back(k);
    full = apply_to_legs(full, dims, rest, prob_theta(ctx, v, 0.5));
  } else {
    full *= std::sqrt(prob_theta_weight(v, 1, 0));
  }

  ResidualDetail out;
  out.branch_probability = full.squaredNorm();
  out.state = full / full.norm();
  std::vector<int> residual_cut;  // B_2..B_n: Bob's side minus the teleported port
  for (int k = 1; k < n; ++k) residual_cut.push_back(n + k);
  out.entropy_eig = cut_entropy_eig(out.state, dims, residual_cut);
  // The Jacobi SVD route is quadratic in the larger cut dimension; it is a
  // cross-check, so it only runs where it is cheap.
  out.entropy_svd = (n <= opts.svd_limit_n)
                        ? cut_entropy_svd(out.state, dims, residual_cut)
                        : std::numeric_limits<double>::quiet_NaN();
  return out;
}

inline EntanglementReport entanglement_report(int n, ProtocolVariant v,
                                              const ResidualOptions& opts = {}) {
  if (n < 1) throw std::invalid_argument("entanglement_report: n must be positive");
  if (is_deterministic(v))
    throw std::invalid_argument(
        "entanglement_report: residual accounting is defined for the probabilistic variants");
  EntanglementReport rep;
  rep.variant = v;
  rep.n = n;
  rep.E_ini = initial_entanglement(resource_spec(v, n));
  rep.p = (v == ProtocolVariant::prob_opt) ? success_prob_opt(n) : success_prob_mes(n);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.E_res = rep.average_residual = rep.consumption = rep.average_consumption = nan;
  if (n <= opts.dense_limit_n) {
    const DenseContext ctx = make_context(n, opts.schur);
    const ResidualDetail rd = residual_state(ctx, v, opts);
    rep.E_res = rd.entropy_eig;
    rep.average_residual = rep.p * rep.E_res;
    rep.consumption = rep.E_ini - rep.E_res;
    rep.average_consumption = rep.E_ini - rep.average_residual;
    rep.residual_available = true;
  }
  return rep;
}

/// One report per n = 1..n_max; residual columns are NaN (marked
/// unavailable) beyond the dense limit while E_ini and p stay closed-form.
inline std::vector<EntanglementReport> consumption_sweep(int n_max, ProtocolVariant v,
                                                         const ResidualOptions& opts = {}) {
  if (n_max < 1) throw std::invalid_argument("consumption_sweep: n_max must be positive");
  std::vector<EntanglementReport> rows;
  for (int n = 1; n <= n_max; ++n) rows.push_back(entanglement_report(n, v, opts));
  return rows;
}

}  // namespace portbt

#endif  // PORTBT_ENTANGLEMENT_HPP
