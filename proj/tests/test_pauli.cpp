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
#include "gqpinn/pauli.hpp"
#include "test_util.hpp"

using namespace gqpinn;

namespace {

PauliSum P(std::size_t n, const char* text) { return parse_pauli_sum(text, n); }

}  // namespace

TEST_SUITE("pauli") {

TEST_CASE("dense realization of single strings") {
  DenseOperator z = to_dense(P(1, "Z1"), 1);
  CHECK(z(0, 0).real() == 1.0);
  CHECK(z(1, 1).real() == -1.0);
  CHECK(std::abs(z(0, 1)) == 0.0);

  DenseOperator xx = to_dense(P(2, "X1X2"), 2);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(xx(r, c).real() == (r + c == 3 ? 1.0 : 0.0));
      CHECK(xx(r, c).imag() == 0.0);
    }
  }
}

TEST_CASE("half sum of X has spectrum -1, 0, 0, 1") {
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(to_dense(P(2, "0.5*X1 + 0.5*X2"), 2));
  const Eigen::VectorXd ev = es.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(ev(1)) < 1e-14);
  CHECK(std::abs(ev(2)) < 1e-14);
  CHECK(ev(3) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("qubit 1 is the most significant bit") {
  DenseOperator x1 = to_dense(P(2, "X1"), 2);
  CHECK(x1(2, 0).real() == 1.0);  // |00> -> |10>
  CHECK(x1(1, 0).real() == 0.0);
}

TEST_CASE("pauli_product phases") {
  auto [p1, c1] = pauli_product(PauliString::from_letters("X"), PauliString::from_letters("Y"));
  CHECK(p1 == Complex(0, 1));
  CHECK(c1 == PauliString::from_letters("Z"));
  auto [p2, c2] = pauli_product(PauliString::from_letters("X"), PauliString::from_letters("X"));
  CHECK(p2 == Complex(1, 0));
  CHECK(c2.is_identity());
  auto [p3, c3] = pauli_product(PauliString::from_letters("XZ"), PauliString::from_letters("ZX"));
  CHECK(p3 == Complex(1, 0));
  // X.Z = -iY and Z.X = iY on the two qubits.
  CHECK(c3 == PauliString::from_letters("YY"));
  CHECK_THROWS_AS(pauli_product(PauliString::from_letters("X"), PauliString::from_letters("XX")),
                  StructuralError);
}

TEST_CASE("pauli_product is associative and matches dense products") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> letter(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Pauli> la(3), lb(3), lc(3);
    for (int q = 0; q < 3; ++q) {
      la[q] = static_cast<Pauli>(letter(rng));
      lb[q] = static_cast<Pauli>(letter(rng));
      lc[q] = static_cast<Pauli>(letter(rng));
    }
    PauliString a(la), b(lb), c(lc);
    auto [pab, ab] = pauli_product(a, b);
    auto [pab_c, ab_c] = pauli_product(ab, c);
    auto [pbc, bc] = pauli_product(b, c);
    auto [pa_bc, a_bc] = pauli_product(a, bc);
    CHECK(ab_c == a_bc);
    CHECK(std::abs(pab * pab_c - pbc * pa_bc) < 1e-15);
    const DenseOperator dense = to_dense(a) * to_dense(b);
    CHECK(max_abs(dense - pab * to_dense(ab)) < 1e-15);
  }
}

TEST_CASE("commutator norms") {
  const DenseOperator x = to_dense(P(1, "X1"), 1);
  const DenseOperator z = to_dense(P(1, "Z1"), 1);
  CHECK(commutator_norm(x, x) == 0.0);
  CHECK(commutator_norm(x, z) == doctest::Approx(2.0));
  CHECK(commutator_norm(swap_gate(2, 1, 2), to_dense(P(2, "X1X2"), 2)) == 0.0);
  CHECK_THROWS_AS(commutator_norm(x, swap_gate(2, 1, 2)), StructuralError);
}

TEST_CASE("exp_generator closed forms") {
  const DenseOperator u = exp_generator(P(1, "X1"), std::numbers::pi, 1);
  const DenseOperator expected = Complex(0, -1) * to_dense(P(1, "X1"), 1);
  CHECK(max_abs(u - expected) < 1e-15);

  std::mt19937_64 rng(3);
  const DenseOperator id = exp_generator(testing::random_pauli_sum(rng, 3, 5), 0.0, 3);
  CHECK(max_abs(id - DenseOperator::Identity(8, 8)) < 1e-15);

  const double theta = 0.83;
  const DenseOperator r = exp_generator(P(2, "0.5*X1X2 + 0.5*Y1Y2"), theta, 2);
  Eigen::VectorXcd ket01 = Eigen::VectorXcd::Zero(4);
  ket01(1) = 1.0;
  const Eigen::VectorXcd out = r * ket01;
  CHECK(std::abs(out(1) - std::cos(theta / 2)) < 1e-14);
  CHECK(std::abs(out(2) - Complex(0, -std::sin(theta / 2))) < 1e-14);
  CHECK(std::abs(out(0)) < 1e-14);
  CHECK(std::abs(out(3)) < 1e-14);
}

TEST_CASE("exp_generator inverse pairs and closed form agreement") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-6.0, 6.0);
  for (int trial = 0; trial < 100; ++trial) {
    const PauliSum h = testing::random_pauli_sum(rng, 2, 4);
    const double theta = angle(rng);
    const DenseOperator prod = exp_generator(h, theta, 2) * exp_generator(h, -theta, 2);
    CHECK(max_abs(prod - DenseOperator::Identity(4, 4)) < 1e-12);
    CHECK(is_unitary(exp_generator(h, theta, 2)));
  }
  std::uniform_int_distribution<int> letter(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Pauli> letters(3);
    for (auto& l : letters) l = static_cast<Pauli>(letter(rng));
    PauliString s(letters);
    const double theta = angle(rng);
    const DenseOperator closed = std::cos(theta / 2) * DenseOperator::Identity(8, 8) -
                                 Complex(0, std::sin(theta / 2)) * to_dense(s);
    const DenseOperator dense = exp_hermitian(to_dense(s), theta);
    CHECK(max_abs(exp_generator(PauliSum(s), theta, 3) - closed) < 1e-12);
    CHECK(max_abs(dense - closed) < 1e-12);
  }
}

TEST_CASE("strings square to identity") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> letter(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Pauli> letters(4);
    for (auto& l : letters) l = static_cast<Pauli>(letter(rng));
    const DenseOperator d = to_dense(PauliString(letters));
    CHECK(max_abs(d * d - DenseOperator::Identity(16, 16)) < 1e-12);
  }
}

TEST_CASE("non-Hermitian exponent is rejected") {
  DenseOperator a = DenseOperator::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(exp_hermitian(a, 1.0), ContractViolation);
}

TEST_CASE("pruning and canonical storage") {
  PauliSum h(2);
  h.add(PauliString::from_letters("XX"), 1.0);
  h.add(PauliString::from_letters("XX"), -1.0 + 1e-13);
  CHECK(h.empty());
  h.add(PauliString::from_letters("ZI"), 0.5);
  h.add(PauliString::from_letters("ZI"), 0.25);
  CHECK(h.size() == 1);
  CHECK(h.coefficient(PauliString::from_letters("ZI")) == 0.75);
}

TEST_CASE("text round trip") {
  for (const char* text : {"0.5*X1X2 + 0.5*Y1Y2", "X1 + X2", "Z1", "-0.25*Z1Z3 + X2",
                           "0.1*Y1Y2Y3 - 3*X3"}) {
    const PauliSum h = P(3, text);
    const PauliSum again = parse_pauli_sum(to_string(h), 3);
    CHECK(again == h);
  }
  CHECK(to_string(PauliSum(2)) == "0");
  CHECK(to_string(P(2, "X1 + X2")) == "X1 + X2");
  const PauliSum h = P(2, "0.5*X1X2 + 0.5*Y1Y2");
  CHECK(h.coefficient(PauliString::from_letters("XX")) == 0.5);
  CHECK(h.coefficient(PauliString::from_letters("YY")) == 0.5);

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const PauliSum r = testing::random_pauli_sum(rng, 4, 6);
    CHECK(parse_pauli_sum(to_string(r), 4) == r);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_pauli_sum("X3", 2), StructuralError);
  CHECK_THROWS_AS(parse_pauli_sum("Q1", 2), StructuralError);
  CHECK_THROWS_AS(parse_pauli_sum("", 2), StructuralError);
  CHECK_THROWS_AS(parse_pauli_sum("X1 +", 2), StructuralError);
  CHECK_THROWS_AS(parse_pauli_sum("X0", 2), StructuralError);
}

TEST_CASE("from_dense inverts to_dense") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const PauliSum h = testing::random_pauli_sum(rng, 3, 7);
    CHECK(max_abs_difference(from_dense(to_dense(h, 3)), h) < 1e-12);
  }
}

TEST_CASE("length mismatch is structural") {
  CHECK_THROWS_AS(to_dense(P(2, "X1"), 3), StructuralError);
  CHECK_THROWS_AS(P(2, "X1") + P(3, "X1"), StructuralError);
}

}
