// Copyright 2026 The GQPINN Authors
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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gqpinn/error.hpp"
#include "gqpinn/symmetry.hpp"
#include "test_util.hpp"

using namespace gqpinn;

namespace {

PauliSum P(std::size_t n, const char* text) { return parse_pauli_sum(text, n); }

Eigen::VectorXcd basis(std::size_t dim, std::size_t index) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

Eigen::VectorXcd bell(bool psi) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  const double a = 1.0 / std::sqrt(2.0);
  if (psi) {
    v(1) = a;
    v(2) = a;
  } else {
    v(0) = a;
    v(3) = a;
  }
  return v;
}

GroupRepresentation trivial_group(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  return GroupRepresentation::finite(n, {{"e", DenseOperator::Identity(d, d)}});
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("finite twirl examples") {
  const auto k4 = k4_rep(2).representation;
  CHECK(max_abs_difference(twirl_finite(P(2, "X1"), k4), P(2, "0.5*X1 + 0.5*X2")) < 1e-12);
  CHECK(twirl_finite(P(2, "Y1"), k4).empty());
  const PauliSum h = P(2, "0.3*X1Y2 - 1.5*Z1");
  CHECK(max_abs_difference(twirl_finite(h, trivial_group(2)), h) < 1e-12);
  CHECK_THROWS_AS(twirl_finite(P(3, "X1"), k4), StructuralError);
}

TEST_CASE("continuous twirl examples") {
  const auto so2 = so2_rep(2).representation;
  CHECK(max_abs_difference(twirl_continuous(P(2, "X1X2"), so2, 64),
                           P(2, "0.5*X1X2 + 0.5*Y1Y2")) < 1e-12);
  CHECK(max_abs_difference(twirl_continuous(P(2, "Z1"), so2, 64), P(2, "Z1")) < 1e-12);
  CHECK(twirl_continuous(P(2, "X1"), so2, 64).empty());
  CHECK_THROWS_AS(twirl_continuous(P(2, "X1X2"), so2, 5), ContractViolation);
  CHECK_NOTHROW(twirl_continuous(P(2, "X1X2"), so2, 6));
}

TEST_CASE("two-qubit generator sets") {
  const auto pool = generator_sets::two_qubit_pool();
  const auto k4 = equivariant_generator_set(pool, k4_rep(2).representation);
  CHECK(generator_sets::set_distance(k4.generators, generator_sets::k4_two_qubit()) < 1e-12);
  const auto so2 = equivariant_generator_set(pool, so2_rep(2).representation);
  CHECK(generator_sets::set_distance(so2.generators, generator_sets::so2_two_qubit()) < 1e-12);
  const auto z2 = equivariant_generator_set(pool, z2_rep().representation);
  CHECK(generator_sets::set_distance(z2.generators, generator_sets::z2_two_qubit()) < 1e-12);
  CHECK(commutes_with(k4, k4_rep(2).representation));
  CHECK(commutes_with(so2, so2_rep(2).representation));
  CHECK(commutes_with(z2, z2_rep().representation));
  CHECK(k4.labels.size() == k4.generators.size());
}

TEST_CASE("four-qubit generator sets") {
  const auto pool = generator_sets::four_qubit_pool();
  const auto so2 = equivariant_generator_set(pool, so2_rep(4).representation);
  CHECK(generator_sets::set_distance(so2.generators, generator_sets::so2_four_qubit()) < 1e-12);

  // The listed K4 set commutes with the (x, y, x, y) representation.
  GeneratorSet listed{generator_sets::k4_four_qubit(), {}};
  CHECK(listed.size() == 7);
  CHECK(commutes_with(listed, k4_rep(4).representation));
  GeneratorSet listed_so2{generator_sets::so2_four_qubit(), {}};
  CHECK(listed_so2.size() == 10);
  CHECK(commutes_with(listed_so2, so2_rep(4).representation));
}

TEST_CASE("set_distance") {
  const auto a = generator_sets::k4_two_qubit();
  auto b = a;
  std::reverse(b.begin(), b.end());
  CHECK(generator_sets::set_distance(a, b) == 0.0);
  b.pop_back();
  CHECK(std::isinf(generator_sets::set_distance(a, b)));
}

TEST_CASE("deduplication keeps first pre-image scaling") {
  const std::vector<PauliSum> pool{P(2, "X1"), P(2, "X2"), P(2, "2*X1"), P(2, "Y1")};
  const auto set = equivariant_generator_set(pool, k4_rep(2).representation);
  REQUIRE(set.size() == 1);
  CHECK(max_abs_difference(set.generators[0], P(2, "0.5*X1 + 0.5*X2")) < 1e-12);
}

TEST_CASE("K4 representation") {
  const auto k4 = k4_rep(2);
  CHECK(k4.representation.elements().size() == 4);
  CHECK(k4.representation.is_closed());
  CHECK(k4_rep(4).representation.is_closed());
  CHECK_THROWS_AS(k4_rep(3), StructuralError);
  // s swaps, p negates.
  const auto z = k4.action.apply(1, std::vector<double>{0.3, -0.7});
  CHECK(z[0] == -0.7);
  CHECK(z[1] == 0.3);
  const auto w = k4.action.apply(2, std::vector<double>{0.3, -0.7});
  CHECK(w[0] == -0.3);
  CHECK(w[1] == 0.7);
}

TEST_CASE("SO(2) representation") {
  const auto so2 = so2_rep(1);
  CHECK(max_abs(so2.representation.at(0.0) - DenseOperator::Identity(2, 2)) < 1e-15);
  CHECK_THROWS_AS(so2_rep(3), StructuralError);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const double x = u(rng), y = u(rng), phi = 3.0 * u(rng);
    const auto v = so2.action.apply_angle(phi, std::vector<double>{x, y});
    auto bloch = [](double a, double b) {
      return exp_generator(P(1, "X1") * a + P(1, "Y1") * b, 1.0, 1);
    };
    const DenseOperator rz = so2.representation.at(phi);
    CHECK(max_abs(bloch(v[0], v[1]) - rz * bloch(x, y) * rz.adjoint()) < 1e-12);
  }

  const Eigen::VectorXcd ket = basis(4, 1);
  const Eigen::VectorXcd out = so2_rep(2).representation.at(std::numbers::pi) * ket;
  CHECK(std::abs(std::abs(out.dot(ket)) - 1.0) < 1e-12);
}

TEST_CASE("Z2 representation") {
  const auto z2 = z2_rep();
  CHECK(z2.representation.elements().size() == 2);
  const PauliSum o = P(2, "Z1Z2 + Y1Z2");
  const DenseOperator up = z2.representation.elements()[1].unitary;
  const DenseOperator od = to_dense(o, 2);
  CHECK(max_abs(up.adjoint() * od * up + od) < 1e-14);
  const auto z = z2.action.apply(1, std::vector<double>{0.4, 0.9});
  CHECK(z[0] == -0.4);
  CHECK(z[1] == 0.9);
}

TEST_CASE("invariant states and observables") {
  CHECK(check_invariant_state(bell(false), k4_rep(2).representation));
  CHECK(check_invariant_state(bell(true), so2_rep(2).representation));
  CHECK_FALSE(check_invariant_state(basis(4, 0), k4_rep(2).representation));
  CHECK(check_invariant_observable(P(2, "X1 + X2"), k4_rep(2).representation));
  CHECK(check_invariant_observable(P(2, "0.5*X1X2 + 0.5*Y1Y2"), so2_rep(2).representation));
  CHECK_FALSE(check_invariant_observable(P(2, "Z1"), k4_rep(2).representation));
}

TEST_CASE("twirl is idempotent and linear") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> coeff(0.0, 1.0);
  const std::vector<GroupRepresentation> groups{k4_rep(2).representation,
                                                so2_rep(2).representation,
                                                z2_rep().representation};
  for (const auto& g : groups) {
    for (int trial = 0; trial < 100; ++trial) {
      const PauliSum h1 = testing::random_pauli_sum(rng, 2, 5);
      const PauliSum h2 = testing::random_pauli_sum(rng, 2, 5);
      const PauliSum t1 = twirl(h1, g);
      CHECK(max_abs_difference(twirl(t1, g), t1) < 1e-11);
      const double a = coeff(rng), b = coeff(rng);
      CHECK(max_abs_difference(twirl(h1 * a + h2 * b, g), t1 * a + twirl(h2, g) * b) < 1e-11);
    }
  }
}

TEST_CASE("continuous twirl is node independent") {
  std::mt19937_64 rng(29);
  const auto so2 = so2_rep(4).representation;
  for (int trial = 0; trial < 20; ++trial) {
    const PauliSum h = testing::random_pauli_sum(rng, 4, 6);
    CHECK(max_abs_difference(twirl_continuous(h, so2, 64), twirl_continuous(h, so2, 128)) <
          1e-12);
  }
}

TEST_CASE("twirled random generators commute with the group") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PauliSum> pool;
    for (int k = 0; k < 4; ++k) pool.push_back(testing::random_pauli_sum(rng, 2, 3));
    CHECK(commutes_with(equivariant_generator_set(pool, k4_rep(2).representation),
                        k4_rep(2).representation));
    CHECK(commutes_with(equivariant_generator_set(pool, so2_rep(2).representation),
                        so2_rep(2).representation));
  }
}

TEST_CASE("invalid representations") {
  DenseOperator bad = DenseOperator::Identity(4, 4) * 2.0;
  CHECK_THROWS(GroupRepresentation::finite(2, {{"e", DenseOperator::Identity(4, 4)},
                                               {"g", bad}}));
  CHECK_THROWS(GroupRepresentation::finite(2, {{"g", pauli_x(2, 1)}}));
}

}
