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

#ifndef PORTBT_CERTIFICATES_HPP
#define PORTBT_CERTIFICATES_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "portbt/dense.hpp"
#include "portbt/protocols.hpp"
#include "portbt/spectrum.hpp"

namespace portbt {

/// One verified dual-feasibility condition.  Inequality constraints report
/// the true minimum eigenvalue of the constraint matrix; equality
/// constraints report minus the largest absolute deviation, so a single
/// threshold (min_eigenvalue >= -tol) covers both kinds.
struct ConstraintCheck {
  std::string name;
  double min_eigenvalue = 0.0;
  bool equality = false;
};

struct CertificateReport {
  ProtocolVariant variant{};
  int n = 0;
  double dual_value = 0.0;
  double primal_value = 0.0;
  double gap = 0.0;  ///< dual - primal; weak duality makes this >= 0 up to roundoff
  std::vector<ConstraintCheck> constraints;

  double worst_min_eigenvalue() const {
    double m = 0.0;
    for (const auto& c : constraints) m = std::min(m, c.min_eigenvalue);
    return m;
  }

  bool passed(double eig_tol = 1e-10, double gap_tol = 1e-10) const {
    return worst_min_eigenvalue() >= -eig_tol && std::abs(gap) <= gap_tol;
  }
};

namespace detail {

inline ConstraintCheck equality_check(const std::string& name, const Eigen::MatrixXcd& lhs,
                                      const Eigen::MatrixXcd& rhs) {
  return ConstraintCheck{name, -(lhs - rhs).cwiseAbs().maxCoeff(), true};
}

inline ConstraintCheck psd_check(const std::string& name, const Eigen::MatrixXcd& m) {
  return ConstraintCheck{name, min_eigenvalue(m), false};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dual witnesses
// ---------------------------------------------------------------------------

/// Dual operator for the optimal deterministic protocol.  Per sector s the
/// branch weights of Omega reduce to the explicit ratios
///   w-(s) = s (1 + D(s)) / (2s+1),  w+(s) = (s+1) (1 + 1/D(s)) / (2s+1),
/// with D(s) = sin(2 pi (s+1)/(n+2)) / sin(2 pi s/(n+2)); the s = 0 boundary
/// carries 1/D = 0 and only the plus branch.
inline Eigen::MatrixXcd det_opt_omega(const DenseContext& ctx) {
  const int n = ctx.n;
  const Eigen::Index dim = ctx.eigsys.dim();
  Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(dim, dim);
  const double scale = std::exp2(1 - n);
  for (int two_s = (n - 1) & 1; two_s <= n - 1; two_s += 2) {
    const double s = 0.5 * two_s;
    const double sin_up = std::sin(2.0 * std::numbers::pi * (s + 1) / (n + 2));
    double w_plus;
    if (two_s == 0) {
      w_plus = 1.0;
    } else {
      const double sin_dn = std::sin(2.0 * std::numbers::pi * s / (n + 2));
      const double D = sin_up / sin_dn;
      const double w_minus = s * (1.0 + D) / (two_s + 1.0);
      w_plus = (s + 1.0) * (1.0 + 1.0 / D) / (two_s + 1.0);
      omega += (scale * w_minus) * ctx.eigsys.branch_projector(two_s, false);
    }
    omega += (scale * w_plus) * ctx.eigsys.branch_projector(two_s, true);
  }
  return omega;
}

/// Dual operator for the probabilistic protocol on the maximally entangled
/// resource: plus-branch projectors weighted by (2s+1)/(s+1).
inline Eigen::MatrixXcd prob_mes_omega(const DenseContext& ctx) {
  const int n = ctx.n;
  const Eigen::Index dim = ctx.eigsys.dim();
  Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(dim, dim);
  for (int two_s = (n - 1) & 1; two_s <= n - 1; two_s += 2) {
    const double s = 0.5 * two_s;
    omega += ((two_s + 1.0) / (s + 1.0)) * ctx.eigsys.branch_projector(two_s, true);
  }
  return omega;
}

/// Dual operator for the optimal probabilistic protocol: both branches
/// weighted, d(s) = (n+3+2s)/(n+3) on plus, e(s) = (n+1-2s)/(n+3) on minus.
inline Eigen::MatrixXcd prob_opt_omega(const DenseContext& ctx) {
  const int n = ctx.n;
  const Eigen::Index dim = ctx.eigsys.dim();
  Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(dim, dim);
  for (int two_s = (n + 1) & 1; two_s <= n + 1; two_s += 2) {
    if (detail::spin_in_range(n, two_s + 1)) {
      const double d = (n + 3.0 + two_s) / (n + 3.0);
      omega += d * ctx.eigsys.branch_projector(two_s, true);
    }
    if (two_s >= 1) {
      const double e = (n + 1.0 - two_s) / (n + 3.0);
      if (e != 0.0) omega += e * ctx.eigsys.branch_projector(two_s, false);
    }
  }
  return omega;
}

// ---------------------------------------------------------------------------
// Certificate reports
// ---------------------------------------------------------------------------

namespace detail {

/// tr over (A_i, B) of (P^-(A_i, B) (x) 1) Omega, as an operator on the rest
/// block; the port constraints of both probabilistic duals require it to be
/// the identity.
inline Eigen::MatrixXcd port_contraction(const DenseContext& ctx,
                                         const Eigen::MatrixXcd& omega, int port) {
  const auto dims = ab_dims(ctx.n);
  const Eigen::MatrixXcd proj = embed_operator(singlet_projector(), dims, {port, ctx.n});
  return partial_trace_matrix(proj * omega, dims, rest_legs(ctx.n, port));
}

}  // namespace detail

inline CertificateReport det_opt_certificate(const DenseContext& ctx) {
  const int n = ctx.n;
  CertificateReport rep;
  rep.variant = ProtocolVariant::det_opt;
  rep.n = n;
  const double a = fidelity_det_opt(n) * std::exp2(2 - n);
  rep.dual_value = std::exp2(n - 2) * a;
  rep.primal_value = fidelity_det_opt(n);
  rep.gap = rep.dual_value - rep.primal_value;

  const Eigen::MatrixXcd omega = det_opt_omega(ctx);
  const Eigen::Index dim_a = Eigen::Index{1} << n;
  std::vector<int> a_legs;
  for (int k = 0; k < n; ++k) a_legs.push_back(k);
  const Eigen::MatrixXcd tr_b = partial_trace_matrix(omega, ab_dims(n), a_legs);
  rep.constraints.push_back(detail::equality_check(
      "tr_B(Omega) = a*1_A", tr_b, a * Eigen::MatrixXcd::Identity(dim_a, dim_a)));
  rep.constraints.push_back(detail::psd_check("Omega >= 0", omega));
  for (int port = 0; port < n; ++port)
    rep.constraints.push_back(detail::psd_check(
        "Omega - sigma_" + std::to_string(port + 1) + " >= 0",
        omega - build_sigma(n, port)));
  return rep;
}

inline CertificateReport prob_mes_certificate(const DenseContext& ctx) {
  const int n = ctx.n;
  CertificateReport rep;
  rep.variant = ProtocolVariant::prob_mes;
  rep.n = n;
  const Eigen::MatrixXcd omega = prob_mes_omega(ctx);
  rep.dual_value = std::exp2(-(n + 1)) * omega.trace().real();
  rep.primal_value = success_prob_mes(n);
  rep.gap = rep.dual_value - rep.primal_value;

  rep.constraints.push_back(detail::psd_check("Omega >= 0", omega));
  const Eigen::Index rest_dim = Eigen::Index{1} << (n - 1);
  for (int port = 0; port < n; ++port)
    rep.constraints.push_back(detail::equality_check(
        "port contraction " + std::to_string(port + 1) + " = 1",
        detail::port_contraction(ctx, omega, port),
        Eigen::MatrixXcd::Identity(rest_dim, rest_dim)));
  return rep;
}

inline CertificateReport prob_opt_certificate(const DenseContext& ctx) {
  const int n = ctx.n;
  CertificateReport rep;
  rep.variant = ProtocolVariant::prob_opt;
  rep.n = n;
  const double a = std::exp2(-n) * n / (n + 3.0);
  rep.dual_value = std::exp2(n) * a;
  rep.primal_value = success_prob_opt(n);
  rep.gap = rep.dual_value - rep.primal_value;

  const Eigen::MatrixXcd omega = prob_opt_omega(ctx);
  rep.constraints.push_back(detail::psd_check("Omega >= 0", omega));
  const Eigen::Index rest_dim = Eigen::Index{1} << (n - 1);
  for (int port = 0; port < n; ++port)
    rep.constraints.push_back(detail::equality_check(
        "port contraction " + std::to_string(port + 1) + " = 1",
        detail::port_contraction(ctx, omega, port),
        Eigen::MatrixXcd::Identity(rest_dim, rest_dim)));
  std::vector<int> a_legs;
  for (int k = 0; k < n; ++k) a_legs.push_back(k);
  const Eigen::MatrixXcd tr_b = partial_trace_matrix(omega, ab_dims(n), a_legs);
  const Eigen::Index dim_a = Eigen::Index{1} << n;
  rep.constraints.push_back(detail::equality_check(
      "2^-(n+1) tr_B(Omega) = a*1_A", std::exp2(-(n + 1)) * tr_b,
      a * Eigen::MatrixXcd::Identity(dim_a, dim_a)));
  return rep;
}

/// Dispatch by variant.  The plain square-root measurement is optimal only
/// within the fixed-resource family and carries no standalone closed-form
/// dual here, so only the three certified variants are accepted.
inline CertificateReport certificate(const DenseContext& ctx, ProtocolVariant v) {
  switch (v) {
    case ProtocolVariant::det_opt: return det_opt_certificate(ctx);
    case ProtocolVariant::prob_mes: return prob_mes_certificate(ctx);
    case ProtocolVariant::prob_opt: return prob_opt_certificate(ctx);
    case ProtocolVariant::det_mes:
      throw std::invalid_argument(
          "certificate: no closed-form dual is implemented for det-mes");
  }
  throw std::logic_error("certificate: unreachable");
}

inline std::vector<ProtocolVariant> certified_variants() {
  return {ProtocolVariant::det_opt, ProtocolVariant::prob_mes, ProtocolVariant::prob_opt};
}

}  // namespace portbt

#endif  // PORTBT_CERTIFICATES_HPP
