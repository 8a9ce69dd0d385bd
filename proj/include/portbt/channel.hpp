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

#ifndef PORTBT_CHANNEL_HPP
#define PORTBT_CHANNEL_HPP

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "portbt/dense.hpp"
#include "portbt/protocols.hpp"
#include "portbt/schur.hpp"
#include "portbt/spectrum.hpp"
#include "portbt/spin.hpp"

namespace portbt {

struct ChannelLimits {
  Eigen::Index max_amplitudes = Eigen::Index{1} << 24;
  double psd_clamp = 1e-12;  ///< negative-eigenvalue clamp for sqrt of POVM elements
};

namespace detail {

inline void check_amplitudes(Eigen::Index amps, const ChannelLimits& limits,
                             const std::string& who) {
  if (amps > limits.max_amplitudes)
    throw capacity_error(who + ": state of " + std::to_string(amps) +
                         " amplitudes exceeds the dense limit of " +
                         std::to_string(limits.max_amplitudes));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Measured-gauge protocol: POVM elements on (A, C)
//
// The construction-side elements live on A (x) B and sum to X (x) 1.  The
// elements Alice actually measures act on A (x) C and sum to the identity;
// the conversion is an X^(-1/2) sandwich on the A block with the last leg
// read as C instead of B (the matrix entries carry over unchanged).
// ---------------------------------------------------------------------------

struct TeleportationSetup {
  ProtocolVariant variant{};
  int n = 0;
  bool deterministic = false;
  Eigen::VectorXcd resource;                    ///< legs A_1..A_n, B_1..B_n
  std::vector<Eigen::MatrixXcd> measured;       ///< success elements on (A_1..A_n, C)
  std::vector<Eigen::MatrixXcd> sqrt_measured;  ///< their principal square roots
  Eigen::MatrixXcd failure;                     ///< probabilistic: 1 - sum; else zero
};

inline TeleportationSetup make_setup(const DenseContext& ctx, ProtocolVariant v,
                                     const ChannelLimits& limits = {}) {
  const int n = ctx.n;
  TeleportationSetup setup;
  setup.variant = v;
  setup.n = n;
  setup.deterministic = is_deterministic(v);
  const ResourceSpec rs = resource_spec(v, n);
  setup.resource = rs.resource_state(ctx.basis_a);

  const PovmSet povm = build_povm(ctx, v);
  Eigen::MatrixXcd sandwich;
  if (!rs.is_mes()) {
    // X^(-1/2) (x) 1_C; X is full rank for both optimized variants.
    sandwich = embed_operator(rs.power_matrix(ctx.basis_a, -0.5), ab_dims(n),
                              detail::rest_legs(n + 1, n));
  }
  const Eigen::Index dim = Eigen::Index{1} << (n + 1);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& tilde : povm.operative_elements()) {
    Eigen::MatrixXcd el = rs.is_mes() ? tilde : Eigen::MatrixXcd(sandwich * tilde * sandwich);
    el = 0.5 * (el + el.adjoint()).eval();
    sum += el;
    setup.measured.push_back(std::move(el));
  }
  if (setup.deterministic) {
    setup.failure = Eigen::MatrixXcd::Zero(dim, dim);
  } else {
    setup.failure = Eigen::MatrixXcd::Identity(dim, dim) - sum;
  }
  for (const auto& el : setup.measured)
    setup.sqrt_measured.push_back(psd_sqrt(el, limits.psd_clamp));
  return setup;
}

// ---------------------------------------------------------------------------
// Channel application
// ---------------------------------------------------------------------------

struct ChannelResult {
  int n = 0;
  bool deterministic = false;
  std::vector<double> branch_traces;             ///< per success outcome
  std::vector<Eigen::MatrixXcd> branch_outputs;  ///< unnormalized, on B (and D if present)
  double success_probability = 1.0;              ///< det: 1; prob: sum of branch traces
  Eigen::MatrixXcd summed_output;                ///< sum over success outcomes
};

/// Applies the teleportation channel to a density operator on C (2x2) or on
/// C and an untouched ancilla D (4x4).  For every outcome i the branch
/// output is tr_{A \bar B_i C}[ sqrt(Pi_i) (psi (x) input) sqrt(Pi_i) ] with
/// the surviving port relabeled B.
inline ChannelResult apply_channel(const TeleportationSetup& setup,
                                   const Eigen::MatrixXcd& input,
                                   const ChannelLimits& limits = {}) {
  const int n = setup.n;
  if (input.rows() != input.cols() || (input.rows() != 2 && input.rows() != 4))
    throw std::invalid_argument("apply_channel: input must be 2x2 (C) or 4x4 (C,D)");
  if (hermiticity_error(input) > 1e-12)
    throw std::invalid_argument("apply_channel: input density matrix is not Hermitian");
  const bool has_ancilla = (input.rows() == 4);
  const int n_legs = 2 * n + 1 + (has_ancilla ? 1 : 0);
  const std::vector<Eigen::Index> dims(static_cast<std::size_t>(n_legs), 2);
  detail::check_amplitudes(total_dim(dims), limits, "apply_channel");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(input);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw std::invalid_argument("apply_channel: input density matrix is not PSD");

  std::vector<int> meas_legs;
  for (int k = 0; k < n; ++k) meas_legs.push_back(k);
  meas_legs.push_back(2 * n);  // C
  std::vector<int> keep{n};    // B_1 relabeled to B
  if (has_ancilla) keep.push_back(2 * n + 1);

  ChannelResult result;
  result.n = n;
  result.deterministic = setup.deterministic;
  const Eigen::Index out_dim = has_ancilla ? 4 : 2;
  result.branch_traces.assign(setup.measured.size(), 0.0);
  result.branch_outputs.assign(setup.measured.size(),
                               Eigen::MatrixXcd::Zero(out_dim, out_dim));

  for (Eigen::Index w = 0; w < es.eigenvalues().size(); ++w) {
    const double weight = es.eigenvalues()[w];
    if (weight <= 1e-15) continue;
    Eigen::VectorXcd full(setup.resource.size() * input.rows());
    for (Eigen::Index i = 0; i < setup.resource.size(); ++i)
      for (Eigen::Index c = 0; c < input.rows(); ++c)
        full[i * input.rows() + c] = setup.resource[i] * es.eigenvectors()(c, w);
    for (std::size_t i = 0; i < setup.measured.size(); ++i) {
      const Eigen::VectorXcd branch =
          apply_to_legs(full, dims, meas_legs, setup.sqrt_measured[i]);
      // Outcome i teleports onto port i: keep B_i (relabeled B) in the output.
      std::vector<int> keep_i = keep;
      keep_i[0] = n + static_cast<int>(i);
      Eigen::MatrixXcd out = partial_trace_keep(branch, dims, keep_i);
      result.branch_outputs[i] += weight * out;
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < setup.measured.size(); ++i) {
    result.branch_traces[i] = result.branch_outputs[i].trace().real();
    total += result.branch_traces[i];
  }
  result.success_probability = setup.deterministic ? 1.0 : total;
  result.summed_output = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  for (const auto& o : result.branch_outputs) result.summed_output += o;
  return result;
}

// ---------------------------------------------------------------------------
// Oracle metrics
// ---------------------------------------------------------------------------

struct OracleMetrics {
  double F = 0.0;  ///< entanglement fidelity; conditioned on success when probabilistic
  double f = 0.0;  ///< average fidelity (2F+1)/3
  double p = 1.0;  ///< success probability (1 for deterministic)
};

/// Teleports half of a singlet on (C, D) and projects the output (B, D) back
/// onto the singlet.  The probabilistic value is conditioned on success.
inline OracleMetrics oracle_metrics(const TeleportationSetup& setup,
                                    const ChannelLimits& limits = {}) {
  const ChannelResult res = apply_channel(setup, singlet_projector(), limits);
  const Eigen::MatrixXcd proj = singlet_projector();
  double overlap = (proj * res.summed_output).trace().real();
  OracleMetrics m;
  m.p = res.success_probability;
  m.F = setup.deterministic ? overlap : overlap / m.p;
  m.f = average_fidelity(m.F);
  return m;
}

/// Output fidelity <chi| Lambda(|chi><chi|) |chi> for a pure single-qubit
/// input; conditioned on success when probabilistic.
inline double output_fidelity(const TeleportationSetup& setup, const Eigen::VectorXcd& chi,
                              const ChannelLimits& limits = {}) {
  if (chi.size() != 2) throw std::invalid_argument("output_fidelity: input must be a qubit");
  const ChannelResult res = apply_channel(setup, Eigen::MatrixXcd(chi * chi.adjoint()), limits);
  const double raw = (chi.adjoint() * res.summed_output * chi).value().real();
  return setup.deterministic ? raw : raw / res.success_probability;
}

struct SpreadReport {
  int samples = 0;
  std::uint64_t seed = 0;
  double min_fidelity = 0.0;
  double max_fidelity = 0.0;
  double mean_fidelity = 0.0;
  double spread = 0.0;  ///< max - min
};

/// Samples Haar-random pure inputs and reports the spread of the output
/// fidelity; a depolarizing channel has spread 0 up to roundoff.
inline SpreadReport covariance_check(const TeleportationSetup& setup, int k_samples,
                                     std::uint64_t seed, const ChannelLimits& limits = {}) {
  if (k_samples <= 0)
    throw std::invalid_argument("covariance_check: sample count must be positive");
  std::mt19937_64 rng(seed);
  SpreadReport rep;
  rep.samples = k_samples;
  rep.seed = seed;
  NeumaierSum mean;
  for (int k = 0; k < k_samples; ++k) {
    const double f = output_fidelity(setup, haar_state(2, rng), limits);
    if (k == 0) {
      rep.min_fidelity = rep.max_fidelity = f;
    } else {
      rep.min_fidelity = std::min(rep.min_fidelity, f);
      rep.max_fidelity = std::max(rep.max_fidelity, f);
    }
    mean.add(f);
  }
  rep.mean_fidelity = mean.value() / k_samples;
  rep.spread = rep.max_fidelity - rep.min_fidelity;
  return rep;
}

// ---------------------------------------------------------------------------
// Qudit square-root-measurement check
// ---------------------------------------------------------------------------

/// Maximally entangled qudit pair (1/sqrt(d)) sum_k |kk>.
inline Eigen::VectorXcd phi_plus(int d) {
  if (d < 2) throw std::invalid_argument("phi_plus: d must be at least 2");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{d} * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) v[Eigen::Index{k} * d + k] = a;
  return v;
}

inline Eigen::MatrixXcd phi_plus_projector(int d) {
  const Eigen::VectorXcd v = phi_plus(d);
  return v * v.adjoint();
}

struct QuditReport {
  int d = 0;
  int n = 0;
  double f_dense = 0.0;          ///< average fidelity from the dense oracle
  double bound = 0.0;            ///< 1 - d(d-1)/n
  double trace_rho_sq = 0.0;     ///< dense tr rho^2
  double trace_rho_sq_closed = 0.0;
};

/// Builds the qudit square-root-measurement protocol on a maximally
/// entangled resource and evaluates it densely: sigma^(i) built from the
/// maximally entangled projector, SRM elements, entanglement fidelity from
/// teleporting half of a maximally entangled (C, D) pair.
inline QuditReport qudit_srm_check(int d, int n, const ChannelLimits& limits = {}) {
  if (d < 2 || n < 1) throw std::invalid_argument("qudit_srm_check: need d >= 2, n >= 1");
  QuditReport rep;
  rep.d = d;
  rep.n = n;
  rep.bound = 1.0 - static_cast<double>(d) * (d - 1) / n;

  const std::vector<Eigen::Index> ab(static_cast<std::size_t>(n) + 1, d);
  detail::check_amplitudes(total_dim(ab) * total_dim(ab), limits, "qudit_srm_check");
  const Eigen::MatrixXcd pp = phi_plus_projector(d);
  const double scale = std::pow(static_cast<double>(d), 1 - n);
  std::vector<Eigen::MatrixXcd> sigmas;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(total_dim(ab), total_dim(ab));
  for (int port = 0; port < n; ++port) {
    sigmas.push_back(scale * embed_operator(pp, ab, {port, n}));
    rho += sigmas.back();
  }
  rep.trace_rho_sq = (rho * rho).trace().real();
  rep.trace_rho_sq_closed = n * std::pow(static_cast<double>(d), 1 - n) +
                            n * (n - 1.0) * std::pow(static_cast<double>(d), -1 - n);

  const Eigen::MatrixXcd inv_sqrt = psd_power(rho, -0.5);
  std::vector<Eigen::MatrixXcd> povm;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (int port = 0; port < n; ++port) {
    Eigen::MatrixXcd el = inv_sqrt * sigmas[static_cast<std::size_t>(port)] * inv_sqrt;
    el = 0.5 * (el + el.adjoint()).eval();
    sum += el;
    povm.push_back(std::move(el));
  }
  const Eigen::MatrixXcd excess =
      (Eigen::MatrixXcd::Identity(rho.rows(), rho.cols()) - sum) / static_cast<double>(n);
  for (auto& el : povm) el += excess;

  // Resource: maximally entangled pairs, regrouped to A_1..A_n, B_1..B_n.
  Eigen::VectorXcd res = phi_plus(d);
  for (int k = 1; k < n; ++k) {
    const Eigen::VectorXcd prev = res;
    const Eigen::VectorXcd pair = phi_plus(d);
    res = Eigen::VectorXcd(prev.size() * pair.size());
    for (Eigen::Index i = 0; i < prev.size(); ++i)
      for (Eigen::Index p = 0; p < pair.size(); ++p)
        res[i * pair.size() + p] = prev[i] * pair[p];
  }
  std::vector<Eigen::Index> pair_dims(static_cast<std::size_t>(2 * n), d);
  std::vector<int> perm;
  for (int k = 0; k < n; ++k) perm.push_back(2 * k);
  for (int k = 0; k < n; ++k) perm.push_back(2 * k + 1);
  res = permute_legs(res, pair_dims, perm);

  // Teleport half of a maximally entangled (C, D) pair.
  const int n_legs = 2 * n + 2;
  const std::vector<Eigen::Index> dims(static_cast<std::size_t>(n_legs), d);
  detail::check_amplitudes(total_dim(dims), limits, "qudit_srm_check");
  const Eigen::VectorXcd cd = phi_plus(d);
  Eigen::VectorXcd full(res.size() * cd.size());
  for (Eigen::Index i = 0; i < res.size(); ++i)
    for (Eigen::Index c = 0; c < cd.size(); ++c) full[i * cd.size() + c] = res[i] * cd[c];

  std::vector<int> meas_legs;
  for (int k = 0; k < n; ++k) meas_legs.push_back(k);
  meas_legs.push_back(2 * n);
  double F = 0.0;
  for (int port = 0; port < n; ++port) {
    const Eigen::MatrixXcd root = psd_sqrt(povm[static_cast<std::size_t>(port)],
                                           limits.psd_clamp);
    const Eigen::VectorXcd branch = apply_to_legs(full, dims, meas_legs, root);
    const Eigen::MatrixXcd out =
        partial_trace_keep(branch, dims, {n + port, 2 * n + 1});
    F += (pp * out).trace().real();
  }
  rep.f_dense = (F * d + 1.0) / (d + 1.0);
  return rep;
}

}  // namespace portbt

#endif  // PORTBT_CHANNEL_HPP
