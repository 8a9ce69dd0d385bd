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

#ifndef PORTBT_DENSE_HPP
#define PORTBT_DENSE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "portbt/spin.hpp"

namespace portbt {

using cxd = std::complex<double>;

/// Row-major strides for a list of leg dimensions (leg 0 most significant).
inline std::vector<Eigen::Index> leg_strides(const std::vector<Eigen::Index>& dims) {
  std::vector<Eigen::Index> strides(dims.size());
  Eigen::Index s = 1;
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    strides[static_cast<std::size_t>(k)] = s;
    s *= dims[static_cast<std::size_t>(k)];
  }
  return strides;
}

inline Eigen::Index total_dim(const std::vector<Eigen::Index>& dims) {
  Eigen::Index t = 1;
  for (auto d : dims) t *= d;
  return t;
}

namespace detail {

/// Flat offsets of every multi-index over the chosen legs, all other legs
/// fixed at zero.  Enumerated row-major over `legs` in the given order.
inline std::vector<Eigen::Index> subset_offsets(const std::vector<Eigen::Index>& dims,
                                                const std::vector<int>& legs) {
  const auto strides = leg_strides(dims);
  Eigen::Index count = 1;
  for (int l : legs) count *= dims[static_cast<std::size_t>(l)];
  std::vector<Eigen::Index> offsets(static_cast<std::size_t>(count), 0);
  Eigen::Index repeat = count;
  for (int l : legs) {
    const Eigen::Index d = dims[static_cast<std::size_t>(l)];
    const Eigen::Index stride = strides[static_cast<std::size_t>(l)];
    repeat /= d;
    // digit for leg l cycles with period `repeat`, d values per period
    for (Eigen::Index i = 0; i < count; ++i)
      offsets[static_cast<std::size_t>(i)] += ((i / repeat) % d) * stride;
  }
  return offsets;
}

inline std::vector<int> complement_legs(std::size_t n_legs, const std::vector<int>& legs) {
  std::vector<bool> used(n_legs, false);
  for (int l : legs) {
    if (l < 0 || static_cast<std::size_t>(l) >= n_legs)
      throw std::invalid_argument("leg index out of range");
    if (used[static_cast<std::size_t>(l)])
      throw std::invalid_argument("duplicate leg index");
    used[static_cast<std::size_t>(l)] = true;
  }
  std::vector<int> rest;
  for (std::size_t k = 0; k < n_legs; ++k)
    if (!used[k]) rest.push_back(static_cast<int>(k));
  return rest;
}

}  // namespace detail

/// Gathers a state vector into a (targets x rest) matrix, with the target
/// legs enumerated row-major in the order given.
inline Eigen::MatrixXcd gather_legs(const Eigen::VectorXcd& v,
                                    const std::vector<Eigen::Index>& dims,
                                    const std::vector<int>& legs) {
  if (v.size() != total_dim(dims))
    throw std::invalid_argument("gather_legs: vector size does not match dims");
  const auto rest = detail::complement_legs(dims.size(), legs);
  const auto offT = detail::subset_offsets(dims, legs);
  const auto offR = detail::subset_offsets(dims, rest);
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(offT.size()),
                       static_cast<Eigen::Index>(offR.size()));
  for (std::size_t r = 0; r < offR.size(); ++r)
    for (std::size_t t = 0; t < offT.size(); ++t)
      out(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(r)) = v[offT[t] + offR[r]];
  return out;
}

/// Applies a square operator to the chosen legs of a state vector.  The
/// operator is indexed row-major over `legs` in the order given.
inline Eigen::VectorXcd apply_to_legs(const Eigen::VectorXcd& v,
                                      const std::vector<Eigen::Index>& dims,
                                      const std::vector<int>& legs,
                                      const Eigen::MatrixXcd& op) {
  const auto rest = detail::complement_legs(dims.size(), legs);
  const auto offT = detail::subset_offsets(dims, legs);
  const auto offR = detail::subset_offsets(dims, rest);
  if (op.rows() != static_cast<Eigen::Index>(offT.size()) || op.rows() != op.cols())
    throw std::invalid_argument("apply_to_legs: operator dimension mismatch");
  Eigen::MatrixXcd W(static_cast<Eigen::Index>(offT.size()),
                     static_cast<Eigen::Index>(offR.size()));
  for (std::size_t r = 0; r < offR.size(); ++r)
    for (std::size_t t = 0; t < offT.size(); ++t)
      W(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(r)) = v[offT[t] + offR[r]];
  W = (op * W).eval();
  Eigen::VectorXcd out(v.size());
  for (std::size_t r = 0; r < offR.size(); ++r)
    for (std::size_t t = 0; t < offT.size(); ++t)
      out[offT[t] + offR[r]] = W(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(r));
  return out;
}

/// Reduced density matrix of a pure state over the kept legs.
inline Eigen::MatrixXcd partial_trace_keep(const Eigen::VectorXcd& v,
                                           const std::vector<Eigen::Index>& dims,
                                           const std::vector<int>& keep) {
  const Eigen::MatrixXcd W = gather_legs(v, dims, keep);
  return W * W.adjoint();
}

/// Schmidt coefficients (singular values) of a pure state across the cut
/// (legs | complement).
inline Eigen::VectorXd schmidt_values(const Eigen::VectorXcd& v,
                                      const std::vector<Eigen::Index>& dims,
                                      const std::vector<int>& legs) {
  const Eigen::MatrixXcd W = gather_legs(v, dims, legs);
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(W).singularValues();
}

/// Partial trace of a dense operator, keeping the chosen legs.
inline Eigen::MatrixXcd partial_trace_matrix(const Eigen::MatrixXcd& M,
                                             const std::vector<Eigen::Index>& dims,
                                             const std::vector<int>& keep) {
  if (M.rows() != total_dim(dims) || M.rows() != M.cols())
    throw std::invalid_argument("partial_trace_matrix: dimension mismatch");
  const auto rest = detail::complement_legs(dims.size(), keep);
  const auto offK = detail::subset_offsets(dims, keep);
  const auto offR = detail::subset_offsets(dims, rest);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(offK.size()),
                                                static_cast<Eigen::Index>(offK.size()));
  for (std::size_t r = 0; r < offR.size(); ++r)
    for (std::size_t a = 0; a < offK.size(); ++a)
      for (std::size_t b = 0; b < offK.size(); ++b)
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            M(offK[a] + offR[r], offK[b] + offR[r]);
  return out;
}

/// Embeds an operator acting on the chosen legs into the full space
/// (identity on all other legs).
inline Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd& op,
                                       const std::vector<Eigen::Index>& dims,
                                       const std::vector<int>& legs) {
  const auto rest = detail::complement_legs(dims.size(), legs);
  const auto offT = detail::subset_offsets(dims, legs);
  const auto offR = detail::subset_offsets(dims, rest);
  if (op.rows() != static_cast<Eigen::Index>(offT.size()) || op.rows() != op.cols())
    throw std::invalid_argument("embed_operator: operator dimension mismatch");
  const Eigen::Index dim = total_dim(dims);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t r = 0; r < offR.size(); ++r)
    for (std::size_t a = 0; a < offT.size(); ++a)
      for (std::size_t b = 0; b < offT.size(); ++b)
        out(offT[a] + offR[r], offT[b] + offR[r]) = op(static_cast<Eigen::Index>(a),
                                                       static_cast<Eigen::Index>(b));
  return out;
}

/// Flat index permutation realizing a reordering of legs: perm[k] is the old
/// leg sitting at new slot k.  Returns map such that new_vec[i] = old_vec[map[i]].
inline std::vector<Eigen::Index> leg_permutation_map(const std::vector<Eigen::Index>& dims,
                                                     const std::vector<int>& perm) {
  if (perm.size() != dims.size())
    throw std::invalid_argument("leg_permutation_map: permutation size mismatch");
  (void)detail::complement_legs(dims.size(), perm);  // validates permutation
  const auto old_strides = leg_strides(dims);
  std::vector<Eigen::Index> new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k)
    new_dims[k] = dims[static_cast<std::size_t>(perm[k])];
  const Eigen::Index dim = total_dim(dims);
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  const auto new_strides = leg_strides(new_dims);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index old_flat = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      const Eigen::Index digit = (i / new_strides[k]) % new_dims[k];
      old_flat += digit * old_strides[static_cast<std::size_t>(perm[k])];
    }
    map[static_cast<std::size_t>(i)] = old_flat;
  }
  return map;
}

inline Eigen::VectorXcd permute_legs(const Eigen::VectorXcd& v,
                                     const std::vector<Eigen::Index>& dims,
                                     const std::vector<int>& perm) {
  const auto map = leg_permutation_map(dims, perm);
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[map[static_cast<std::size_t>(i)]];
  return out;
}

inline Eigen::MatrixXcd permute_legs_matrix(const Eigen::MatrixXcd& M,
                                            const std::vector<Eigen::Index>& dims,
                                            const std::vector<int>& perm) {
  const auto map = leg_permutation_map(dims, perm);
  Eigen::MatrixXcd out(M.rows(), M.cols());
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      out(r, c) = M(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]);
  return out;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

inline double hermiticity_error(const Eigen::MatrixXcd& M) {
  return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const Eigen::MatrixXcd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-neg_tol, 0] are clamped to zero; anything more negative
/// is an error (the input was not a valid PSD operator).
inline Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& M, double neg_tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -neg_tol)
      throw std::invalid_argument("psd_sqrt: eigenvalue " + std::to_string(ev[i]) +
                                  " below the PSD tolerance " + std::to_string(-neg_tol));
    if (ev[i] < 0.0) ev[i] = 0.0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

/// M^power on the support of a PSD Hermitian matrix: eigenvalues below
/// rel_cutoff times the largest are treated as exact zeros and excluded,
/// which realizes pseudo-inverse semantics for negative powers.
inline Eigen::MatrixXcd psd_power(const Eigen::MatrixXcd& M, double power,
                                  double rel_cutoff = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cutoff = rel_cutoff * std::max(ev.maxCoeff(), 0.0);
  Eigen::VectorXd pv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > cutoff) pv[i] = std::pow(ev[i], power);
  return es.eigenvectors() * pv.asDiagonal() * es.eigenvectors().adjoint();
}

/// Trace distance (1/2)||A - B||_1 between two Hermitian operators.
inline double trace_distance(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A - B, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Compensated (Neumaier) accumulator for long sums of doubles.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

/// Two independent standard normal samples via Box-Muller, driven by the
/// given engine (implementation-pinned, unlike std::normal_distribution).
inline std::pair<double, double> gaussian_pair(std::mt19937_64& rng) {
  // 53-bit uniforms in (0, 1]; u1 > 0 keeps the log finite.
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  constexpr double two_pi = 6.283185307179586476925286766559;
  return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

/// Haar-random pure state of dimension d: i.i.d. complex Gaussian amplitudes,
/// normalized.
inline Eigen::VectorXcd haar_state(Eigen::Index d, std::mt19937_64& rng) {
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto [re, im] = gaussian_pair(rng);
    v[i] = cxd(re, im);
  }
  return v / v.norm();
}

}  // namespace portbt

#endif  // PORTBT_DENSE_HPP
