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

#ifndef PORTBT_PROTOCOLS_HPP
#define PORTBT_PROTOCOLS_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "portbt/dense.hpp"
#include "portbt/schur.hpp"
#include "portbt/spectrum.hpp"
#include "portbt/spin.hpp"

namespace portbt {

// ---------------------------------------------------------------------------
// Protocol variants
// ---------------------------------------------------------------------------

enum class ProtocolVariant { det_mes, det_opt, prob_mes, prob_opt };

inline std::string variant_name(ProtocolVariant v) {
  switch (v) {
    case ProtocolVariant::det_mes: return "det-mes";
    case ProtocolVariant::det_opt: return "det-opt";
    case ProtocolVariant::prob_mes: return "prob-mes";
    case ProtocolVariant::prob_opt: return "prob-opt";
  }
  throw std::logic_error("variant_name: unreachable");
}

inline ProtocolVariant parse_variant(const std::string& s) {
  if (s == "det-mes") return ProtocolVariant::det_mes;
  if (s == "det-opt") return ProtocolVariant::det_opt;
  if (s == "prob-mes") return ProtocolVariant::prob_mes;
  if (s == "prob-opt") return ProtocolVariant::prob_opt;
  throw std::invalid_argument("unknown variant '" + s +
                              "' (expected det-mes, det-opt, prob-mes or prob-opt)");
}

inline bool is_deterministic(ProtocolVariant v) {
  return v == ProtocolVariant::det_mes || v == ProtocolVariant::det_opt;
}

inline bool uses_mes_resource(ProtocolVariant v) {
  return v == ProtocolVariant::det_mes || v == ProtocolVariant::prob_mes;
}

// ---------------------------------------------------------------------------
// Closed-form performance metrics
// ---------------------------------------------------------------------------

namespace detail {

/// Binomial weights w_k = C(n, k) / 2^n for k = 0..n.  Exact for n <= 66;
/// above that, anchored at the distribution mode via log-gamma and extended
/// outward by the exact multiplicative recurrence, which stays finite even
/// when 2^-n itself underflows.
inline std::vector<double> binomial_weights(int n) {
  if (n < 0) throw std::invalid_argument("binomial_weights: n must be nonnegative");
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  if (n <= 66) {
    const double scale = std::exp2(-n);
    for (int k = 0; k <= n; ++k)
      w[static_cast<std::size_t>(k)] = static_cast<double>(binomial_u64(n, k)) * scale;
    return w;
  }
  const int mode = n / 2;
  w[static_cast<std::size_t>(mode)] =
      std::exp(log_binomial(n, mode) - n * std::numbers::ln2);
  for (int k = mode; k > 0; --k)
    w[static_cast<std::size_t>(k - 1)] =
        w[static_cast<std::size_t>(k)] * k / static_cast<double>(n - k + 1);
  for (int k = mode; k < n; ++k)
    w[static_cast<std::size_t>(k + 1)] =
        w[static_cast<std::size_t>(k)] * (n - k) / static_cast<double>(k + 1);
  return w;
}

}  // namespace detail

/// Entanglement fidelity of the square-root-measurement protocol on a
/// maximally entangled resource, for any n (compensated summation).
inline double fidelity_det_mes(int n) {
  if (n < 1) throw std::invalid_argument("fidelity_det_mes: n must be positive");
  const auto w = detail::binomial_weights(n);
  NeumaierSum acc;
  for (int k = 0; k <= n; ++k) {
    // Expanded square of a/sqrt(k+1) + b/sqrt(n-k+1): the cross term carries
    // an exact integer coefficient, so boundary terms where a or b vanishes
    // stay exact instead of picking up sqrt roundoff.
    const double a = n - 2.0 * k - 1.0;
    const double b = n - 2.0 * k + 1.0;
    const double t2 = a * a / (k + 1.0) + b * b / (n - k + 1.0) +
                      2.0 * a * b / std::sqrt((k + 1.0) * (n - k + 1.0));
    acc.add(w[static_cast<std::size_t>(k)] * t2);
  }
  return acc.value() / 8.0;
}

/// Same quantity evaluated through the sector decomposition; used as an
/// independent consistency check on the binomial form.
inline double fidelity_det_mes_sector(int n) {
  if (n < 1) throw std::invalid_argument("fidelity_det_mes_sector: n must be positive");
  NeumaierSum acc;
  for (int two_s = (n - 1) & 1; two_s <= n - 1; two_s += 2) {
    const double c = c_factor(n, two_s, 2.0);
    acc.add((two_s + 1.0) * multiplicity(n - 1, two_s) * c * c);
  }
  return n * std::exp2(-2 * n) * acc.value();
}

inline double fidelity_det_opt(int n) {
  if (n < 1) throw std::invalid_argument("fidelity_det_opt: n must be positive");
  // Half-angle form of cos^2(pi / (n + 2)); exact at n = 2 where the
  // squared cosine of pi/4 would otherwise round away from 1/2.
  return 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi / (n + 2)));
}

/// Success probability of the probabilistic protocol on a maximally
/// entangled resource, for any n.
inline double success_prob_mes(int n) {
  if (n < 1) throw std::invalid_argument("success_prob_mes: n must be positive");
  const auto w = detail::binomial_weights(n);
  const int k_max = (n % 2 == 1) ? (n - 1) / 2 : n / 2 - 1;
  NeumaierSum acc;
  for (int k = 0; k <= k_max; ++k) {
    const double d = n - 2.0 * k;
    acc.add(w[static_cast<std::size_t>(k)] * d * d / (n + 1.0 - k));
  }
  return acc.value();
}

inline double success_prob_opt(int n) {
  if (n < 1) throw std::invalid_argument("success_prob_opt: n must be positive");
  return static_cast<double>(n) / (n + 3);
}

/// Average fidelity from entanglement fidelity: f = (F d + 1) / (d + 1).
inline double average_fidelity(double F, int d = 2) { return (F * d + 1.0) / (d + 1.0); }

inline double classical_fidelity_limit() { return 2.0 / 3.0; }

/// Large-n references: F -> 1 - 3/(4n) for det-mes, f -> 1 - 1/(2n),
/// p -> 1 - sqrt(8/(pi n)) for prob-mes.
inline double det_mes_fidelity_asymptote(int n) { return 1.0 - 3.0 / (4.0 * n); }
inline double average_fidelity_asymptote(int n) { return 1.0 - 1.0 / (2.0 * n); }
inline double success_prob_asymptote(int n) {
  return 1.0 - std::sqrt(8.0 / (std::numbers::pi * n));
}

struct PerformanceReport {
  ProtocolVariant variant{};
  int n = 0;
  double metric_closed = 0.0;    // F for deterministic, p for probabilistic
  double metric_average_f = 0.0; // f = (2F+1)/3; 1 for probabilistic (faithful on success)
  double asymptote_value = 0.0;
};

inline PerformanceReport performance_report(ProtocolVariant v, int n) {
  PerformanceReport r;
  r.variant = v;
  r.n = n;
  switch (v) {
    case ProtocolVariant::det_mes:
      r.metric_closed = fidelity_det_mes(n);
      r.metric_average_f = average_fidelity(r.metric_closed);
      r.asymptote_value = det_mes_fidelity_asymptote(n);
      break;
    case ProtocolVariant::det_opt: {
      r.metric_closed = fidelity_det_opt(n);
      r.metric_average_f = average_fidelity(r.metric_closed);
      const double x = std::numbers::pi / (n + 2);
      r.asymptote_value = 1.0 - x * x;
      break;
    }
    case ProtocolVariant::prob_mes:
      r.metric_closed = success_prob_mes(n);
      r.metric_average_f = 1.0;
      r.asymptote_value = success_prob_asymptote(n);
      break;
    case ProtocolVariant::prob_opt:
      r.metric_closed = success_prob_opt(n);
      r.metric_average_f = 1.0;
      r.asymptote_value = 1.0 - 3.0 / n;
      break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Resource operator X and resource state
// ---------------------------------------------------------------------------

inline double h_factor(int n) {
  return 6.0 / ((n + 1.0) * (n + 2.0) * (n + 3.0));
}

/// Optimal deterministic X weight per A-sector j.
inline double gamma_weight(int n, int two_j) {
  if (n < 1 || !detail::spin_in_range(n, two_j))
    throw std::invalid_argument("gamma_weight: invalid sector");
  const double s = std::sin(std::numbers::pi * (two_j + 1) / (n + 2));
  return std::exp2(n + 2) * s * s / ((n + 2.0) * (two_j + 1.0) * multiplicity(n, two_j));
}

/// Optimal probabilistic X weight per A-sector j.
inline double nu_weight(int n, int two_j) {
  if (n < 1 || !detail::spin_in_range(n, two_j))
    throw std::invalid_argument("nu_weight: invalid sector");
  return std::exp2(n) * h_factor(n) * (two_j + 1.0) / multiplicity(n, two_j);
}

/// Probabilistic-optimal measurement weight per rest-block sector s.
inline double u_weight(int n, int two_s) {
  if (n < 1 || !detail::spin_in_range(n - 1, two_s))
    throw std::invalid_argument("u_weight: invalid sector");
  return std::exp2(n + 1) * h_factor(n) * (two_s + 1.0) / (n * multiplicity(n - 1, two_s));
}

/// Sector exponent of the generalized square-root measurement,
/// 1/y(s) = ln[D(s) s/(s+1)] / ln[lm(s)/lp(s)].  Defined for s >= 1/2; the
/// s = 0 boundary enters the construction only through its continuity limit,
/// handled in det_opt_branch_weight.
inline double det_opt_exponent(int n, int two_s) {
  if (n < 1 || two_s < 1 || !detail::spin_in_range(n - 1, two_s))
    throw std::invalid_argument("det_opt_exponent: invalid sector");
  const double s = 0.5 * two_s;
  const double D = std::sin(2.0 * std::numbers::pi * (s + 1) / (n + 2)) /
                   std::sin(2.0 * std::numbers::pi * s / (n + 2));
  const double lm = (0.5 * n + 0.5 - s) * std::exp2(-n);
  const double lp = (0.5 * n + 1.5 + s) * std::exp2(-n);
  return std::log(D * s / (s + 1.0)) / std::log(lm / lp);
}

/// Branch weight of the generalized SRM multiplier M = sum_s sum_b sqrt(w) P:
/// on every branch of AB-sector s built on A-sector j the weight is
/// gamma(j)/lambda_branch, which reproduces the z(s), y(s) form on all
/// sectors with s >= 1/2 and extends it continuously to s = 0 (where the
/// exponent relation degenerates).  The kernel branch gets weight 0.
inline double det_opt_branch_weight(int n, int two_s, bool plus_branch) {
  if (n < 1 || two_s < ((n + 1) & 1) || two_s > n + 1 || (((n + 1) ^ two_s) & 1) != 0)
    throw std::invalid_argument("det_opt_branch_weight: invalid sector");
  const double s = 0.5 * two_s;
  if (plus_branch) {
    if (!detail::spin_in_range(n, two_s + 1))
      throw std::invalid_argument("det_opt_branch_weight: plus branch absent");
    const double lp = (0.5 * n + 1.5 + s) * std::exp2(-n);
    return gamma_weight(n, two_s + 1) / lp;
  }
  if (two_s < 1) throw std::invalid_argument("det_opt_branch_weight: minus branch absent");
  if (two_s == n + 1) return 0.0;  // kernel branch
  const double lm = (0.5 * n + 0.5 - s) * std::exp2(-n);
  return gamma_weight(n, two_s - 1) / lm;
}

struct ResourceSpec {
  ProtocolVariant variant{};
  int n = 0;
  std::vector<double> weights;  ///< X weight per A-sector, two_j ascending from two_j_min

  double weight(int two_j) const {
    if (!detail::spin_in_range(n, two_j))
      throw std::invalid_argument("ResourceSpec::weight: invalid sector");
    return weights[static_cast<std::size_t>((two_j - two_j_min(n)) / 2)];
  }

  bool is_mes() const { return uses_mes_resource(variant); }

  /// tr X = sum_j weight(j) (2j+1) g(j); must equal 2^n.
  double trace_x() const {
    NeumaierSum acc;
    for (int two_j = two_j_min(n); two_j <= n; two_j += 2)
      acc.add(weight(two_j) * (two_j + 1.0) * multiplicity(n, two_j));
    return acc.value();
  }

  /// Dense X = sum_j weight(j) P_j on the n-qubit block A.
  Eigen::MatrixXcd x_matrix(const SchurBasis& basis) const { return power_matrix(basis, 1.0); }

  /// Dense X^power (sector weights are all positive, so any real power).
  Eigen::MatrixXcd power_matrix(const SchurBasis& basis, double power) const {
    if (basis.n != n) throw std::invalid_argument("ResourceSpec: basis size mismatch");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
    for (int two_j = two_j_min(n); two_j <= n; two_j += 2)
      x += std::pow(weight(two_j), power) * spin_projector(basis, two_j);
    return x;
  }

  /// Dense resource state (O (x) 1) |psi-><x n on legs A_1..A_n, B_1..B_n,
  /// with O the principal square root of X.  Unit norm.
  Eigen::VectorXcd resource_state(const SchurBasis& basis) const {
    Eigen::VectorXcd v = psi_minus();
    for (int k = 1; k < n; ++k) {
      const Eigen::VectorXcd prev = v;
      v = Eigen::VectorXcd(prev.size() * 4);
      const Eigen::VectorXcd pm = psi_minus();
      for (Eigen::Index i = 0; i < prev.size(); ++i)
        for (Eigen::Index p = 0; p < 4; ++p) v[i * 4 + p] = prev[i] * pm[p];
    }
    // v holds pairs interleaved as A_1 B_1 A_2 B_2 ...; regroup to A..., B...
    std::vector<Eigen::Index> dims(static_cast<std::size_t>(2 * n), 2);
    std::vector<int> perm;
    for (int k = 0; k < n; ++k) perm.push_back(2 * k);      // A_k sits at slot 2k
    for (int k = 0; k < n; ++k) perm.push_back(2 * k + 1);  // B_k at slot 2k+1
    v = permute_legs(v, dims, perm);
    if (!is_mes()) {
      std::vector<int> a_legs(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) a_legs[static_cast<std::size_t>(k)] = k;
      v = apply_to_legs(v, dims, a_legs, power_matrix(basis, 0.5));
    }
    return v / v.norm();
  }
};

inline ResourceSpec resource_spec(ProtocolVariant v, int n) {
  if (n < 1) throw std::invalid_argument("resource_spec: n must be positive");
  ResourceSpec r;
  r.variant = v;
  r.n = n;
  for (int two_j = two_j_min(n); two_j <= n; two_j += 2) {
    double w = 1.0;
    if (v == ProtocolVariant::det_opt) w = gamma_weight(n, two_j);
    if (v == ProtocolVariant::prob_opt) w = nu_weight(n, two_j);
    r.weights.push_back(w);
  }
  return r;
}

// ---------------------------------------------------------------------------
// POVM construction (tilde gauge, on the N+1 qubits A_1..A_n, B)
// ---------------------------------------------------------------------------

/// Shared dense machinery for one value of n: Schur bases for the A block
/// and for a one-port-smaller rest block, plus the analytic rho eigensystem.
struct DenseContext {
  int n = 0;
  SchurBasis basis_a;     ///< n spins
  SchurBasis basis_rest;  ///< n-1 spins (unused when n == 1)
  RhoEigensystem eigsys;  ///< eigenvectors of rho on A (x) B
  Eigen::MatrixXcd rho;
};

inline DenseContext make_context(int n, SchurOptions opts = {}) {
  if (n < 1) throw std::invalid_argument("make_context: n must be positive");
  DenseContext ctx;
  ctx.n = n;
  ctx.basis_a = schur_basis(n, opts);
  if (n >= 2) ctx.basis_rest = schur_basis(n - 1, opts);
  ctx.eigsys = rho_eigensystem(ctx.basis_a);
  ctx.rho = build_rho(n);
  return ctx;
}

/// Projector onto total spin s of the rest block (the n-1 ports other than
/// the anchored one), as a matrix on its ordered 2^(n-1) space.
inline Eigen::MatrixXcd rest_sector_projector(const DenseContext& ctx, int two_s) {
  if (ctx.n == 1) {
    if (two_s != 0) throw std::invalid_argument("rest_sector_projector: bad sector");
    return Eigen::MatrixXcd::Identity(1, 1);
  }
  return spin_projector(ctx.basis_rest, two_s);
}

struct PovmSet {
  ProtocolVariant variant{};
  int n = 0;
  bool deterministic = false;
  std::vector<Eigen::MatrixXcd> elements;  ///< n port elements, excess not folded in
  Eigen::MatrixXcd theta;   ///< factored rest-block operator (probabilistic), else empty
  Eigen::MatrixXcd excess;  ///< det: remainder split across ports; prob: failure element
  Eigen::MatrixXcd completeness_target;  ///< identity or X (x) 1

  /// The elements actually measured: deterministic variants fold excess/n
  /// into every element, probabilistic variants use the raw elements (the
  /// failure element is handled separately).
  std::vector<Eigen::MatrixXcd> operative_elements() const {
    std::vector<Eigen::MatrixXcd> out = elements;
    if (deterministic)
      for (auto& e : out) e += excess / static_cast<double>(n);
    return out;
  }

  double completeness_residual() const {
    Eigen::MatrixXcd sum = excess;
    for (const auto& e : elements) sum += e;
    return (sum - completeness_target).cwiseAbs().maxCoeff();
  }

  double min_element_eigenvalue() const {
    double m = min_eigenvalue(excess);
    for (const auto& e : operative_elements()) m = std::min(m, min_eigenvalue(e));
    return m;
  }
};

namespace detail {

inline std::vector<int> rest_legs(int n, int port) {
  std::vector<int> legs;
  for (int k = 0; k < n; ++k)
    if (k != port) legs.push_back(k);
  return legs;
}

/// Element P^-(A_port, B) (x) theta(rest) embedded on the full AB space.
inline Eigen::MatrixXcd anchored_element(const DenseContext& ctx, int port,
                                         const Eigen::MatrixXcd& theta) {
  const auto dims = ab_dims(ctx.n);
  Eigen::MatrixXcd el = embed_operator(singlet_projector(), dims, {port, ctx.n});
  if (theta.rows() > 1) el = el * embed_operator(theta, dims, rest_legs(ctx.n, port));
  else el *= theta(0, 0).real();
  return el;
}

}  // namespace detail

/// Square-root measurement on the maximally entangled resource:
/// element_i = rho^(-1/2) sigma^(i) rho^(-1/2), excess = 1 - sum.
inline PovmSet srm_povm(const DenseContext& ctx) {
  PovmSet p;
  p.variant = ProtocolVariant::det_mes;
  p.n = ctx.n;
  p.deterministic = true;
  const Eigen::MatrixXcd inv_sqrt = psd_power(ctx.rho, -0.5);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(ctx.rho.rows(), ctx.rho.cols());
  for (int port = 0; port < ctx.n; ++port) {
    Eigen::MatrixXcd el = inv_sqrt * build_sigma(ctx.n, port) * inv_sqrt;
    el = 0.5 * (el + el.adjoint()).eval();
    sum += el;
    p.elements.push_back(std::move(el));
  }
  p.completeness_target = Eigen::MatrixXcd::Identity(ctx.rho.rows(), ctx.rho.cols());
  p.excess = p.completeness_target - sum;
  return p;
}

/// Generalized square-root measurement for the optimal deterministic
/// protocol: element_i = M sigma^(i) M with the branch-diagonal multiplier M.
inline PovmSet det_opt_povm(const DenseContext& ctx) {
  const int n = ctx.n;
  PovmSet p;
  p.variant = ProtocolVariant::det_opt;
  p.n = n;
  p.deterministic = true;
  const Eigen::Index dim = ctx.eigsys.dim();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (int two_s = (n + 1) & 1; two_s <= n + 1; two_s += 2) {
    if (two_s >= 1 && two_s <= n + 1) {
      const double w = det_opt_branch_weight(n, two_s, false);
      if (w > 0.0) M += std::sqrt(w) * ctx.eigsys.branch_projector(two_s, false);
    }
    if (detail::spin_in_range(n, two_s + 1)) {
      const double w = det_opt_branch_weight(n, two_s, true);
      M += std::sqrt(w) * ctx.eigsys.branch_projector(two_s, true);
    }
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (int port = 0; port < n; ++port) {
    Eigen::MatrixXcd el = M * build_sigma(n, port) * M;
    el = 0.5 * (el + el.adjoint()).eval();
    sum += el;
    p.elements.push_back(std::move(el));
  }
  const ResourceSpec rs = resource_spec(ProtocolVariant::det_opt, n);
  p.completeness_target = embed_operator(rs.x_matrix(ctx.basis_a), ab_dims(n),
                                         detail::rest_legs(n + 1, n));
  p.excess = p.completeness_target - sum;
  return p;
}

/// Rest-block sector weight of the probabilistic measurement operators:
/// theta = sum_s weight(s) P_s on the n-1 unanchored ports.
inline double prob_theta_weight(ProtocolVariant v, int n, int two_s) {
  if (v == ProtocolVariant::prob_opt) return u_weight(n, two_s);
  if (v != ProtocolVariant::prob_mes)
    throw std::invalid_argument("prob_theta_weight: deterministic variant");
  if (n < 1 || !detail::spin_in_range(n - 1, two_s))
    throw std::invalid_argument("prob_theta_weight: invalid sector");
  const double lp = (0.5 * n + 0.5 * two_s + 1.5) * std::exp2(-n);
  return std::exp2(1 - n) / lp;
}

/// Dense theta (optionally raised to a power; the sector weights are
/// positive, so any real exponent is meaningful).
inline Eigen::MatrixXcd prob_theta(const DenseContext& ctx, ProtocolVariant v,
                                   double power = 1.0) {
  const int n = ctx.n;
  const Eigen::Index rest_dim = Eigen::Index{1} << (n - 1);
  Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(rest_dim, rest_dim);
  for (int two_s = (n - 1) & 1; two_s <= n - 1; two_s += 2)
    theta += std::pow(prob_theta_weight(v, n, two_s), power) *
             rest_sector_projector(ctx, two_s);
  return theta;
}

/// Probabilistic protocol on the maximally entangled resource:
/// element_i = P^-(A_i, B) (x) theta(rest) with sector weights 1/lambda_plus.
inline PovmSet prob_mes_povm(const DenseContext& ctx) {
  const int n = ctx.n;
  PovmSet p;
  p.variant = ProtocolVariant::prob_mes;
  p.n = n;
  p.deterministic = false;
  p.theta = prob_theta(ctx, ProtocolVariant::prob_mes);
  const Eigen::Index dim = Eigen::Index{1} << (n + 1);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (int port = 0; port < n; ++port) {
    Eigen::MatrixXcd el = detail::anchored_element(ctx, port, p.theta);
    sum += el;
    p.elements.push_back(std::move(el));
  }
  p.completeness_target = Eigen::MatrixXcd::Identity(dim, dim);
  p.excess = p.completeness_target - sum;
  return p;
}

/// Optimal probabilistic protocol: element_i = P^-(A_i, B) (x) theta(rest)
/// with sector weights u(s); completeness target X (x) 1.
inline PovmSet prob_opt_povm(const DenseContext& ctx) {
  const int n = ctx.n;
  PovmSet p;
  p.variant = ProtocolVariant::prob_opt;
  p.n = n;
  p.deterministic = false;
  p.theta = prob_theta(ctx, ProtocolVariant::prob_opt);
  const Eigen::Index dim = Eigen::Index{1} << (n + 1);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (int port = 0; port < n; ++port) {
    Eigen::MatrixXcd el = detail::anchored_element(ctx, port, p.theta);
    sum += el;
    p.elements.push_back(std::move(el));
  }
  const ResourceSpec rs = resource_spec(ProtocolVariant::prob_opt, n);
  p.completeness_target = embed_operator(rs.x_matrix(ctx.basis_a), ab_dims(n),
                                         detail::rest_legs(n + 1, n));
  p.excess = p.completeness_target - sum;
  return p;
}

inline PovmSet build_povm(const DenseContext& ctx, ProtocolVariant v) {
  switch (v) {
    case ProtocolVariant::det_mes: return srm_povm(ctx);
    case ProtocolVariant::det_opt: return det_opt_povm(ctx);
    case ProtocolVariant::prob_mes: return prob_mes_povm(ctx);
    case ProtocolVariant::prob_opt: return prob_opt_povm(ctx);
  }
  throw std::logic_error("build_povm: unreachable");
}

struct ProtocolBundle {
  ResourceSpec resource;
  PovmSet povm;
  PerformanceReport report;
};

inline ProtocolBundle build_protocol(const DenseContext& ctx, ProtocolVariant v) {
  return ProtocolBundle{resource_spec(v, ctx.n), build_povm(ctx, v),
                        performance_report(v, ctx.n)};
}

// ---------------------------------------------------------------------------
// Explicit two-port reference fixture
// ---------------------------------------------------------------------------

/// The fully worked two-port optimal probabilistic protocol: resource state,
/// both measurement elements in the measured (A, C) gauge, and the residual
/// state left on (A, C, B_2) after a successful port-1 outcome.
struct N2Reference {
  Eigen::VectorXcd psi;        ///< legs A_1 A_2 B_1 B_2
  Eigen::VectorXcd eta_minus;  ///< legs A_1 A_2 C
  Eigen::VectorXcd eta_plus;   ///< legs A_1 A_2 C
  Eigen::MatrixXcd pi1;        ///< on A_1 A_2 C
  Eigen::MatrixXcd pi2;        ///< on A_1 A_2 C
  Eigen::MatrixXcd theta1;     ///< (4/5) identity on A_2
  Eigen::VectorXcd psi_res;    ///< legs A_1 A_2 C B_2
  double branch_probability = 0.2;  ///< per-port success probability p/n
};

inline N2Reference n2_reference() {
  const double rt2 = std::sqrt(2.0), rt3 = std::sqrt(3.0);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2), e1 = Eigen::VectorXcd::Zero(2);
  e0[0] = 1.0;
  e1[1] = 1.0;
  const Eigen::VectorXcd pm = psi_minus();
  Eigen::VectorXcd pp = Eigen::VectorXcd::Zero(4);
  pp[1] = 1.0 / rt2;
  pp[2] = 1.0 / rt2;
  const Eigen::VectorXcd v00 = kron(e0, e0), v11 = kron(e1, e1);

  N2Reference ref;
  ref.psi = std::sqrt(0.1) * kron(pm, pm) +
            std::sqrt(0.3) * (kron(v00, v11) + kron(v11, v00) - kron(pp, pp));

  const Eigen::VectorXcd x_minus = 0.5 * (-pp + rt3 * pm);
  const Eigen::VectorXcd x_plus = 0.5 * (pp + rt3 * pm);
  ref.eta_minus = std::sqrt(2.0 / 3.0) * kron(x_minus, e0) + std::sqrt(1.0 / 3.0) * kron(v00, e1);
  ref.eta_plus = std::sqrt(2.0 / 3.0) * kron(x_plus, e1) - std::sqrt(1.0 / 3.0) * kron(v11, e0);
  ref.pi1 = ref.eta_minus * ref.eta_minus.adjoint() + ref.eta_plus * ref.eta_plus.adjoint();
  ref.pi2 = permute_legs_matrix(ref.pi1, {2, 2, 2}, {1, 0, 2});
  ref.theta1 = 0.8 * Eigen::MatrixXcd::Identity(2, 2);
  ref.psi_res = (kron(ref.eta_minus, e1) - kron(ref.eta_plus, e0)) / rt2;
  return ref;
}

}  // namespace portbt

#endif  // PORTBT_PROTOCOLS_HPP
