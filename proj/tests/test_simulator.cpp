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

#include "doctest.h"
#include "gqpinn/ansatz.hpp"
#include "gqpinn/error.hpp"
#include "gqpinn/simulator.hpp"
#include "test_util.hpp"

using namespace gqpinn;

namespace {

PauliSum P(std::size_t n, const char* text) { return parse_pauli_sum(text, n); }

PointSet random_points(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  PointSet pts(dim);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(testing::uniform_vector(rng, dim, -1, 1));
  return pts;
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("empty circuit leaves |00>") {
  Circuit c(2, 0, {}, {}, P(2, "Z1 + Z2"));
  const StateVector s = run(c, {}, {});
  CHECK(std::abs(s(0) - 1.0) < 1e-15);
  CHECK(expectation(s, c.observable()) == 2.0);
}

TEST_CASE("Bell preparation") {
  Circuit c(2, 0,
            {CircuitOp::fixed(FixedGate::H, {1}), CircuitOp::fixed(FixedGate::CNOT, {1, 2})},
            {}, P(2, "X1 + X2"));
  const StateVector s = run(c, {}, {});
  const double a = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s(0) - a) < 1e-15);
  CHECK(std::abs(s(3) - a) < 1e-15);
  CHECK(std::abs(s(1)) < 1e-15);
  CHECK(std::abs(expectation(s, c.observable())) < 1e-15);
}

TEST_CASE("Psi+ expectation of the hopping observable") {
  Circuit c(2, 0,
            {CircuitOp::fixed(FixedGate::H, {1}), CircuitOp::fixed(FixedGate::X, {2}),
             CircuitOp::fixed(FixedGate::CNOT, {1, 2})},
            {}, P(2, "0.5*X1X2 + 0.5*Y1Y2"));
  CHECK(model_eval(c, {}, {}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Bloch encoding at the origin is the identity") {
  Circuit c(1, 2, {CircuitOp::fixed(FixedGate::H, {1})}, {CircuitOp::bloch(1, 0, 1)},
            P(1, "X1"));
  const std::vector<double> z{0.0, 0.0};
  CHECK((run(c, {}, z) - c.initial_state()).norm() < 1e-15);
}

TEST_CASE("expectation of identity and norm preservation") {
  std::mt19937_64 rng(3);
  for (const auto& name : ansatz_names()) {
    const auto a = make_ansatz(name, 2, name == "so2_time" ? 3 : 2);
    const auto theta = testing::uniform_vector(rng, a.circuit.parameter_count(), 0, 6.28);
    const auto z = testing::uniform_vector(rng, a.circuit.input_dim(), -1, 1);
    const StateVector s = run(a.circuit, theta, z);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    PauliSum id(a.circuit.qubits());
    id.add(PauliString(a.circuit.qubits()), 1.0);
    CHECK(std::abs(expectation(s, id) - 1.0) < 1e-12);
  }
}

TEST_CASE("norm preserved after every op") {
  std::mt19937_64 rng(4);
  const Circuit c = build_so2_time(3);
  const auto theta = testing::uniform_vector(rng, c.parameter_count(), 0, 6.28);
  const auto z = testing::uniform_vector(rng, 3, -1, 1);
  StateVector s = c.initial_state();
  for (const auto& op : c.ops()) {
    s = op.matrix(c.qubits(), theta, z) * s;
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("run is deterministic") {
  std::mt19937_64 rng(5);
  const Circuit c = build_k4_4q(2);
  const auto theta = testing::uniform_vector(rng, c.parameter_count(), 0, 6.28);
  const std::vector<double> z{0.3, -0.2};
  const StateVector a = run(c, theta, z);
  const StateVector b = run(c, theta, z);
  CHECK((a - b).norm() == 0.0);
}

TEST_CASE("non-Hermitian expectation is an integrity error") {
  StateVector s = StateVector::Zero(2);
  s(0) = 1.0;
  CHECK_THROWS_AS(expectation(StateVector::Zero(4), P(1, "Z1")), StructuralError);
  // A state with an imaginary expectation cannot arise from a Hermitian
  // observable; only the dimension check is reachable here.
  CHECK(expectation(s, P(1, "Z1")) == 1.0);
}

TEST_CASE("circuit validation") {
  const PauliSum obs = P(2, "Z1");
  CHECK_THROWS_AS(Circuit(2, 1, {CircuitOp::rotation(P(2, "X1"), AngleBinding::parameter(0))},
                          {}, obs),
                  StructuralError);
  CHECK_THROWS_AS(Circuit(2, 1, {}, {CircuitOp::rotation(P(2, "X1"), AngleBinding::parameter(1))},
                          obs),
                  StructuralError);
  CHECK_THROWS_AS(Circuit(2, 1, {}, {CircuitOp::rotation(P(2, "X1"), AngleBinding::input(1))},
                          obs),
                  StructuralError);
  CHECK_THROWS_AS(Circuit(2, 1, {}, {CircuitOp::bloch(1, 0, 1)}, obs), StructuralError);
  CHECK_THROWS_AS(Circuit(2, 0, {}, {CircuitOp::fixed(FixedGate::H, {3})}, obs), StructuralError);
  CHECK_THROWS_AS(CircuitOp::fixed(FixedGate::CNOT, {1, 1}), StructuralError);
  CHECK_THROWS_AS(Circuit(3, 0, {}, {}, obs), StructuralError);

  const Circuit ok(2, 1, {}, {CircuitOp::rotation(P(2, "X1"), AngleBinding::parameter(0))}, obs);
  const std::vector<double> two{0.1, 0.2};
  const std::vector<double> one{0.1};
  CHECK_THROWS_AS(run(ok, two, one), StructuralError);
  CHECK_THROWS_AS(run(ok, one, two), StructuralError);
}

TEST_CASE("compiled evaluation matches the dense reference") {
  std::mt19937_64 rng(7);
  for (const auto& name : ansatz_names()) {
    for (std::size_t p : {1, 3}) {
      const auto a = make_ansatz(name, p, name == "so2_time" ? 3 : 2);
      const CompiledCircuit cc(a.circuit);
      const auto theta = testing::uniform_vector(rng, a.circuit.parameter_count(), 0, 6.28);
      const PointSet pts = random_points(rng, a.circuit.input_dim(), 10);
      std::vector<double> values(pts.size());
      cc.evaluate(theta, pts, values);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(std::abs(values[i] - model_eval(a.circuit, theta, pts[i])) < 1e-12);
        CHECK((cc.state(theta, pts[i]) - run(a.circuit, theta, pts[i])).norm() < 1e-12);
      }
    }
  }
  const auto q3 = make_ansatz("qpinn", 2, 3, 3, 4);
  const CompiledCircuit cc(q3.circuit);
  const auto theta = testing::uniform_vector(rng, q3.circuit.parameter_count(), 0, 6.28);
  const std::vector<double> z{0.1, -0.4, 0.3};
  PointSet pts(3);
  pts.push_back(z);
  std::vector<double> v(1);
  cc.evaluate(theta, pts, v);
  CHECK(std::abs(v[0] - model_eval(q3.circuit, theta, z)) < 1e-12);
}

TEST_CASE("adjoint vector-Jacobian product matches central differences") {
  std::mt19937_64 rng(9);
  for (const auto& name : ansatz_names()) {
    const auto a = make_ansatz(name, 2, name == "so2_time" ? 3 : 2);
    const CompiledCircuit cc(a.circuit);
    const auto theta = testing::uniform_vector(rng, a.circuit.parameter_count(), 0, 6.28);
    const PointSet pts = random_points(rng, a.circuit.input_dim(), 5);
    const auto weights = testing::uniform_vector(rng, pts.size(), -1, 1);
    std::vector<double> grad(theta.size(), 0.0);
    cc.accumulate_vjp(theta, pts, weights, grad);
    auto objective = [&](const std::vector<double>& t) {
      std::vector<double> v(pts.size());
      cc.evaluate(t, pts, v);
      double s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += weights[i] * v[i];
      return s;
    };
    const double h = 1e-5;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      auto tp = theta, tm = theta;
      tp[k] += h;
      tm[k] -= h;
      const double fd = (objective(tp) - objective(tm)) / (2 * h);
      CHECK(std::abs(grad[k] - fd) < 1e-8);
    }
  }
}

TEST_CASE("describe names every op") {
  const Circuit c = build_so2(1);
  for (const auto& op : c.ops()) CHECK_FALSE(op.describe().empty());
  CHECK(c.ops().front().describe() == "R[Z1Z2](theta[0])");
}

}
