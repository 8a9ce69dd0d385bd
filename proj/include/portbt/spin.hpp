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

#ifndef PORTBT_SPIN_HPP
#define PORTBT_SPIN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace portbt {

/// Error thrown when a request would exceed a configured dense-size limit.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Angular-momentum label (j, m) stored as doubled integers so that
/// half-integer spins are exact.  Invariants: two_j >= 0, |two_m| <= two_j,
/// and two_j, two_m share parity.
struct SpinLabel {
  int two_j = 0;
  int two_m = 0;

  SpinLabel() = default;
  SpinLabel(int tj, int tm) : two_j(tj), two_m(tm) { validate(); }

  void validate() const {
    if (two_j < 0) throw std::invalid_argument("SpinLabel: two_j must be non-negative");
    if (std::abs(two_m) > two_j)
      throw std::invalid_argument("SpinLabel: |two_m| must not exceed two_j");
    if (((two_j ^ two_m) & 1) != 0)
      throw std::invalid_argument("SpinLabel: two_j and two_m must have equal parity");
  }

  double j() const { return 0.5 * two_j; }
  double m() const { return 0.5 * two_m; }

  friend bool operator==(const SpinLabel&, const SpinLabel&) = default;
};

/// Renders a doubled integer as an exact (half-)integer string, e.g. "2", "3/2".
inline std::string half_int_str(int two_x) {
  if ((two_x & 1) == 0) return std::to_string(two_x / 2);
  return std::to_string(two_x) + "/2";
}

/// Clebsch-Gordan coefficient <j1 m1; 1/2 m2 | J (m1+m2)> for coupling an
/// angular momentum j1 with a single spin-1/2, in the Condon-Shortley phase
/// convention (all coefficients real).
///
/// `half_spin_sign` selects m2 = +1/2 (sign = +1) or m2 = -1/2 (sign = -1).
/// Ill-formed labels throw std::invalid_argument; valid labels that simply do
/// not couple (J outside {j1 - 1/2, j1 + 1/2} or |m1 + m2| > J) return 0.
inline double cg(int two_j1, int two_m1, int half_spin_sign, int two_J) {
  if (half_spin_sign != 1 && half_spin_sign != -1)
    throw std::invalid_argument("cg: half_spin_sign must be +1 or -1");
  SpinLabel{two_j1, two_m1};  // validates j1/m1 parity and range
  if (two_J < 0) throw std::invalid_argument("cg: two_J must be non-negative");

  const int two_M = two_m1 + half_spin_sign;
  if (two_J != two_j1 + 1 && two_J != two_j1 - 1) return 0.0;
  if (std::abs(two_M) > two_J) return 0.0;

  // Doubled arguments: j1 + M + 1/2 = (two_j1 + two_M + 1) / 2, etc.
  const double denom = two_j1 + 1.0;
  const double plus = 0.5 * (two_j1 + two_M + 1);   // j1 + M + 1/2
  const double minus = 0.5 * (two_j1 - two_M + 1);  // j1 - M + 1/2
  if (two_J == two_j1 + 1)
    return half_spin_sign > 0 ? std::sqrt(plus / denom) : std::sqrt(minus / denom);
  return half_spin_sign > 0 ? -std::sqrt(minus / denom) : std::sqrt(plus / denom);
}

/// Exact binomial C(n, k) in unsigned 64-bit arithmetic (valid for n <= 66,
/// the last row whose central value fits), computed by Pascal recursion.
inline std::uint64_t binomial_u64(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > 66) throw std::overflow_error("binomial_u64: n too large for exact 64-bit");
  k = std::min(k, n - k);
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int c = std::min(i, k); c >= 1; --c) row[c] += row[c - 1];
  return row[k];
}

/// Natural log of the binomial coefficient, valid for any n.
inline double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace detail {
inline bool spin_in_range(int n, int two_j) {
  return two_j >= 0 && two_j <= n && ((n ^ two_j) & 1) == 0;
}
}  // namespace detail

/// Number of inequivalent irreducible spin-j components in the decomposition
/// of n coupled spin-1/2 systems; equivalently the number of coupling paths
/// from j1 = 1/2 to j_n = j.  Returns 0 when (n, j) is out of range (j < 0,
/// j > n/2, or parity mismatch).  Exact for n <= 66, Stirling-based above.
inline double multiplicity(int n, int two_j) {
  if (n < 0) throw std::invalid_argument("multiplicity: n must be nonnegative");
  if (n == 0) return two_j == 0 ? 1.0 : 0.0;  // the empty block couples to spin 0
  if (!detail::spin_in_range(n, two_j)) return 0.0;
  const int k = (n - two_j) / 2;  // n/2 - j
  if (n <= 66)
    return static_cast<double>(binomial_u64(n, k)) -
           static_cast<double>(binomial_u64(n, k - 1));
  const double a = std::exp(log_binomial(n, k));
  const double b = k >= 1 ? std::exp(log_binomial(n, k - 1)) : 0.0;
  return a - b;
}

/// Natural log of multiplicity(n, j); -inf when out of range.  Stable for
/// large n where the multiplicity itself overflows a double.
inline double log_multiplicity(int n, int two_j) {
  if (n < 0) throw std::invalid_argument("log_multiplicity: n must be nonnegative");
  if (n == 0)
    return two_j == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (!detail::spin_in_range(n, two_j))
    return -std::numeric_limits<double>::infinity();
  const int k = (n - two_j) / 2;  // n/2 - j
  // (2j+1) / (n/2 + j + 1) * C(n, k): the prefactor is exact in doubles.
  const double prefactor = (two_j + 1.0) / (0.5 * n + 0.5 * two_j + 1.0);
  return std::log(prefactor) + log_binomial(n, k);
}

/// Smallest total spin of n coupled spin-1/2 systems (0 or 1/2), doubled.
inline int two_j_min(int n) { return n & 1; }

}  // namespace portbt

#endif  // PORTBT_SPIN_HPP
