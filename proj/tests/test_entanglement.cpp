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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "portbt/entanglement.hpp"

using namespace portbt;

namespace {

/// Success branch for outcome `port` using the true principal square root of
/// the measurement element, teleporting half of a singlet held on (C, D).
/// Legs: A_1..A_n, B_1..B_n, C, D.
Eigen::VectorXcd sqrt_branch(const DenseContext& ctx, const TeleportationSetup& setup,
                             int port) {
  const int n = ctx.n;
  const std::vector<Eigen::Index> dims(static_cast<std::size_t>(2 * n + 2), 2);
  const Eigen::VectorXcd cd = psi_minus();
  Eigen::VectorXcd full(setup.resource.size() * 4);
  for (Eigen::Index i = 0; i < setup.resource.size(); ++i)
    for (Eigen::Index c = 0; c < 4; ++c) full[i * 4 + c] = setup.resource[i] * cd[c];
  std::vector<int> meas_legs;
  for (int k = 0; k < n; ++k) meas_legs.push_back(k);
  meas_legs.push_back(2 * n);
  return apply_to_legs(full, dims, meas_legs,
                       setup.sqrt_measured[static_cast<std::size_t>(port)]);
}

std::vector<int> residual_cut_legs(int n, int port) {
  std::vector<int> cut;
  for (int k = 0; k < n; ++k)
    if (k != port) cut.push_back(n + k);
  return cut;
}

}  // namespace

TEST_CASE("entropy_bits on known distributions", "[entanglement]") {
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(8, 1.0 / 8.0);
  CHECK(entropy_bits(uniform) == Catch::Approx(3.0).margin(1e-13));
  Eigen::VectorXd pure = Eigen::VectorXd::Zero(4);
  pure[2] = 1.0;
  CHECK(entropy_bits(pure) == 0.0);
  // Tiny negative roundoff entries are ignored.
  Eigen::VectorXd noisy(3);
  noisy << 0.5, 0.5, -1e-16;
  CHECK(entropy_bits(noisy) == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("eigen and Schmidt entropy routes agree", "[entanglement]") {
  std::mt19937_64 rng(3);
  const std::vector<Eigen::Index> dims{2, 2, 2, 2, 2};
  Eigen::VectorXcd v(32);
  for (Eigen::Index i = 0; i < 32; ++i) {
    const auto [a, b] = gaussian_pair(rng);
    v[i] = cxd(a, b);
  }
  v /= v.norm();
  for (const std::vector<int>& keep :
       {std::vector<int>{0}, std::vector<int>{1, 3}, std::vector<int>{0, 2, 4}}) {
    CHECK(std::abs(cut_entropy_eig(v, dims, keep) - cut_entropy_svd(v, dims, keep)) <=
          1e-10);
  }
}

TEST_CASE("initial entanglement of MES resources is exactly n ebits", "[entanglement]") {
  for (int n = 1; n <= 12; ++n) {
    CHECK(initial_entanglement(resource_spec(ProtocolVariant::prob_mes, n)) ==
          Catch::Approx(n).margin(1e-11));
    CHECK(initial_entanglement(resource_spec(ProtocolVariant::det_mes, n)) ==
          Catch::Approx(n).margin(1e-11));
  }
  // The log-space path stays finite far beyond the dense range.
  const double big = initial_entanglement(resource_spec(ProtocolVariant::prob_opt, 300));
  CHECK(std::isfinite(big));
  CHECK(big > 0.0);
  CHECK(big < 300.0);
}

TEST_CASE("initial entanglement matches a dense cut at small n", "[entanglement]") {
  for (ProtocolVariant v : {ProtocolVariant::prob_opt, ProtocolVariant::det_opt}) {
    for (int n : {1, 2, 3, 4}) {
      const SchurBasis basis = schur_basis(n);
      const ResourceSpec rs = resource_spec(v, n);
      const Eigen::VectorXcd psi = rs.resource_state(basis);
      const std::vector<Eigen::Index> dims(static_cast<std::size_t>(2 * n), 2);
      std::vector<int> a_side;
      for (int k = 0; k < n; ++k) a_side.push_back(k);
      CHECK(initial_entanglement(rs) ==
            Catch::Approx(cut_entropy_eig(psi, dims, a_side)).margin(1e-10));
    }
  }
}

TEST_CASE("residual branch equals the fixture state at two ports", "[entanglement]") {
  const DenseContext ctx = make_context(2);
  const TeleportationSetup setup = make_setup(ctx, ProtocolVariant::prob_opt);
  const N2Reference ref = n2_reference();

  const Eigen::VectorXcd branch = sqrt_branch(ctx, setup, 0);
  CHECK(branch.squaredNorm() == Catch::Approx(0.2).margin(1e-12));

  // Expected: psi_res on (A1, A2, C, B2) with the surviving singlet half on
  // (B1, D); reorder to (A1, A2, B1, B2, C, D).
  Eigen::VectorXcd prod(64);
  const Eigen::VectorXcd cd = psi_minus();
  for (Eigen::Index i = 0; i < 16; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) prod[i * 4 + j] = ref.psi_res[i] * cd[j];
  const std::vector<Eigen::Index> dims6(6, 2);
  // prod legs: A1 A2 C B2 B1 D -> target slots A1 A2 B1 B2 C D.
  const Eigen::VectorXcd expected = permute_legs(prod, dims6, {0, 1, 4, 3, 2, 5});
  const Eigen::VectorXcd lhs = branch / branch.norm();
  CHECK(std::abs(std::abs((expected.adjoint() * lhs).value()) - 1.0) <= 1e-10);

  // The factored-root branch is a different purification of the same
  // Bob-side state: reduced matrices agree on (B1, B2, D).
  const ResidualDetail rd = residual_state(ctx, ProtocolVariant::prob_opt);
  CHECK(rd.branch_probability == Catch::Approx(0.2).margin(1e-12));
  const Eigen::MatrixXcd red_k = partial_trace_keep(rd.state, dims6, {2, 3, 5});
  const Eigen::MatrixXcd red_s = partial_trace_keep(lhs, dims6, {2, 3, 5});
  CHECK(trace_distance(red_k, red_s) <= 1e-11);
}

TEST_CASE("factored root reproduces the square-root branch entropy", "[entanglement]") {
  for (int n = 1; n <= 4; ++n) {
    const DenseContext ctx = make_context(n);
    for (ProtocolVariant v : {ProtocolVariant::prob_mes, ProtocolVariant::prob_opt}) {
      const TeleportationSetup setup = make_setup(ctx, v);
      const ResidualDetail rd = residual_state(ctx, v);
      const Eigen::VectorXcd branch = sqrt_branch(ctx, setup, 0);
      CHECK(rd.branch_probability == Catch::Approx(branch.squaredNorm()).margin(1e-11));
      const std::vector<Eigen::Index> dims(static_cast<std::size_t>(2 * n + 2), 2);
      const double e_sqrt = cut_entropy_eig(Eigen::VectorXcd(branch / branch.norm()), dims,
                                            residual_cut_legs(n, 0));
      CHECK(std::abs(rd.entropy_eig - e_sqrt) <= 1e-9);
      CHECK(std::abs(rd.entropy_eig - rd.entropy_svd) <= 1e-10);
    }
  }
}

TEST_CASE("residual entropy does not depend on the outcome", "[entanglement]") {
  for (int n = 2; n <= 4; ++n) {
    const DenseContext ctx = make_context(n);
    for (ProtocolVariant v : {ProtocolVariant::prob_mes, ProtocolVariant::prob_opt}) {
      const TeleportationSetup setup = make_setup(ctx, v);
      const std::vector<Eigen::Index> dims(static_cast<std::size_t>(2 * n + 2), 2);
      std::vector<double> entropies;
      for (int port = 0; port < n; ++port) {
        const Eigen::VectorXcd branch = sqrt_branch(ctx, setup, port);
        entropies.push_back(cut_entropy_eig(Eigen::VectorXcd(branch / branch.norm()), dims,
                                            residual_cut_legs(n, port)));
      }
      for (double e : entropies) CHECK(std::abs(e - entropies[0]) <= 1e-10);
    }
  }
}

TEST_CASE("residual entropy does not depend on the input at two ports", "[entanglement]") {
  const DenseContext ctx = make_context(2);
  const TeleportationSetup setup = make_setup(ctx, ProtocolVariant::prob_opt);
  const std::vector<Eigen::Index> dims(5, 2);  // A1 A2 B1 B2 C
  std::mt19937_64 rng(12);
  std::vector<double> entropies;
  for (int k = 0; k < 20; ++k) {
    const Eigen::VectorXcd chi = haar_state(2, rng);
    Eigen::VectorXcd full(setup.resource.size() * 2);
    for (Eigen::Index i = 0; i < setup.resource.size(); ++i)
      for (Eigen::Index c = 0; c < 2; ++c) full[i * 2 + c] = setup.resource[i] * chi[c];
    Eigen::VectorXcd branch = apply_to_legs(full, dims, {0, 1, 4}, setup.sqrt_measured[0]);
    branch /= branch.norm();
    entropies.push_back(cut_entropy_eig(branch, dims, {3}));  // cut B2
  }
  for (double e : entropies) CHECK(std::abs(e - entropies[0]) <= 1e-10);
  // And the value coincides with the canonical half-singlet definition.
  CHECK(std::abs(entropies[0] - residual_state(ctx, ProtocolVariant::prob_opt).entropy_eig) <=
        1e-9);
}

TEST_CASE("two-port accounting triple", "[entanglement]") {
  const EntanglementReport rep = entanglement_report(2, ProtocolVariant::prob_opt);
  REQUIRE(rep.residual_available);
  CHECK(rep.E_ini == Catch::Approx(1.8955).margin(5e-4));
  CHECK(rep.E_res == Catch::Approx(1.0).margin(1e-6));
  CHECK(rep.consumption == Catch::Approx(0.90).margin(5e-3));
  CHECK(rep.p == Catch::Approx(0.4).margin(1e-12));
  CHECK(rep.average_residual == Catch::Approx(rep.p * rep.E_res).margin(1e-12));
  CHECK(rep.average_consumption ==
        Catch::Approx(rep.E_ini - rep.p * rep.E_res).margin(1e-12));
}

TEST_CASE("single-port case degenerates cleanly", "[entanglement]") {
  // With one port there is nothing left on Bob's side after the teleport:
  // the residual entropy is zero and a full ebit is consumed.
  for (ProtocolVariant v : {ProtocolVariant::prob_mes, ProtocolVariant::prob_opt}) {
    const EntanglementReport rep = entanglement_report(1, v);
    REQUIRE(rep.residual_available);
    CHECK(rep.E_ini == Catch::Approx(1.0).margin(1e-12));
    CHECK(rep.E_res == Catch::Approx(0.0).margin(1e-12));
    CHECK(rep.consumption == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("reports outside the dense limit omit the residual columns", "[entanglement]") {
  ResidualOptions opts;
  opts.dense_limit_n = 3;
  const EntanglementReport rep = entanglement_report(5, ProtocolVariant::prob_mes, opts);
  CHECK_FALSE(rep.residual_available);
  CHECK(std::isnan(rep.E_res));
  CHECK(rep.E_ini == Catch::Approx(5.0).margin(1e-11));
  CHECK(rep.p == Catch::Approx(success_prob_mes(5)).margin(1e-13));
}

TEST_CASE("deterministic variants have no residual accounting", "[entanglement]") {
  const DenseContext ctx = make_context(2);
  CHECK_THROWS_AS(residual_state(ctx, ProtocolVariant::det_opt), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_report(2, ProtocolVariant::det_mes), std::invalid_argument);
}

TEST_CASE("consumption sweep emits one row per port count", "[entanglement]") {
  const auto rows = consumption_sweep(4, ProtocolVariant::prob_opt);
  REQUIRE(rows.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(rows[static_cast<std::size_t>(i)].n == i + 1);
    CHECK(rows[static_cast<std::size_t>(i)].residual_available);
  }
  // MES consumption stays at or above one ebit.
  for (const auto& row : consumption_sweep(5, ProtocolVariant::prob_mes))
    CHECK(row.consumption >= 1.0 - 1e-9);
}
