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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqpinn/pauli.hpp"
#include "gqpinn/points.hpp"

namespace gqpinn {

using StateVector = Eigen::VectorXcd;

/// Where a rotation angle comes from.
struct AngleBinding {
  enum class Source { Constant, Parameter, Input };

  Source source = Source::Constant;
  std::size_t index = 0;
  /// Constant angle, or a multiplier on the bound parameter/input.
  double value = 0.0;

  static AngleBinding constant(double angle) {
    return {Source::Constant, 0, angle};
  }
  static AngleBinding parameter(std::size_t index, double scale = 1.0) {
    return {Source::Parameter, index, scale};
  }
  static AngleBinding input(std::size_t index, double scale = 1.0) {
    return {Source::Input, index, scale};
  }

  double resolve(std::span<const double> theta,
                 std::span<const double> z) const;
};

enum class FixedGate { H, X, CNOT, SWAP };

/**
 * One circuit instruction. Rotations apply R_G(a) = exp(-i a G / 2) with G a
 * Pauli sum on the whole register; the Bloch encoding applies
 * exp(-i (x X + y Y) / 2) on one qubit from two input coordinates. Qubit
 * indices are 1-based.
 */
class CircuitOp {
 public:
  enum class Kind { Fixed, Rotation, BlochEncoding };

  static CircuitOp fixed(FixedGate gate, std::vector<std::size_t> targets);
  static CircuitOp rotation(PauliSum generator, AngleBinding angle);
  static CircuitOp bloch(std::size_t qubit, std::size_t x_input,
                         std::size_t y_input);

  Kind kind() const { return kind_; }
  FixedGate gate() const { return gate_; }
  const std::vector<std::size_t>& targets() const { return targets_; }
  const PauliSum& generator() const { return generator_; }
  const AngleBinding& angle() const { return angle_; }
  std::size_t x_input() const { return x_input_; }
  std::size_t y_input() const { return y_input_; }

  bool depends_on_input() const;
  bool is_trainable() const;

  /// Full-register matrix of this op at (theta, z).
  DenseOperator matrix(std::size_t n, std::span<const double> theta,
                       std::span<const double> z) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Fixed;
  FixedGate gate_ = FixedGate::H;
  std::vector<std::size_t> targets_;
  PauliSum generator_;
  AngleBinding angle_;
  std::size_t x_input_ = 0;
  std::size_t y_input_ = 0;
};

/**
 * Parametrized circuit: a parameter-free preparation applied to |0...0>,
 * the ordered op list, and the measured observable.
 */
class Circuit {
 public:
  Circuit(std::size_t qubits, std::size_t input_dim, std::vector<CircuitOp> prep,
          std::vector<CircuitOp> ops, PauliSum observable);

  std::size_t qubits() const { return qubits_; }
  std::size_t dimension() const { return std::size_t{1} << qubits_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t parameter_count() const { return parameter_count_; }
  const std::vector<CircuitOp>& prep() const { return prep_; }
  const std::vector<CircuitOp>& ops() const { return ops_; }
  const PauliSum& observable() const { return observable_; }

  /// prep applied to |0...0>.
  StateVector initial_state() const;

 private:
  std::size_t qubits_;
  std::size_t input_dim_;
  std::size_t parameter_count_ = 0;
  std::vector<CircuitOp> prep_;
  std::vector<CircuitOp> ops_;
  PauliSum observable_;
};

/// Reference simulation: every op as a dense 2^n matrix.
StateVector run(const Circuit& c, std::span<const double> theta,
                std::span<const double> z);

/// <s|O|s>. Throws NumericIntegrityError if the imaginary part exceeds 1e-12.
double expectation(const StateVector& s, const PauliSum& observable);

/// expectation(run(c, theta, z), c.observable()).
double model_eval(const Circuit& c, std::span<const double> theta,
                  std::span<const double> z);

/**
 * Batched evaluator for one circuit. For a fixed theta, every maximal run of
 * input-independent ops is fused into one dense matrix; input-dependent ops
 * are applied per point with single-qubit kernels. Also provides the adjoint
 * vector-Jacobian product with respect to theta.
 */
class CompiledCircuit {
 public:
  explicit CompiledCircuit(Circuit circuit);

  const Circuit& circuit() const { return circuit_; }

  void evaluate(std::span<const double> theta, const PointSet& points,
                std::span<double> values) const;

  /// grad += sum_k weights[k] * d f(points[k]) / d theta.
  void accumulate_vjp(std::span<const double> theta, const PointSet& points,
                      std::span<const double> weights,
                      std::span<double> grad) const;

  StateVector state(std::span<const double> theta,
                    std::span<const double> z) const;

 private:
  struct GateTemplate {
    const CircuitOp* op;
    DenseOperator constant;      // fixed gates and constant rotations
    DenseOperator generator;     // dense G for parameter rotations
    DenseOperator eigenvectors;  // G = V diag(lambda) V^dagger
    Eigen::VectorXd eigenvalues;
  };
  struct DataKernel {
    enum class Type { SingleQubit, Bloch, Dense } type;
    std::size_t bit = 0;                   // bit position of the target qubit
    double coeff[4] = {0, 0, 0, 0};        // I, X, Y, Z coefficients
    AngleBinding angle;
    std::size_t x_input = 0, y_input = 0;
    DenseOperator eigenvectors;
    Eigen::VectorXd eigenvalues;
  };
  struct Segment {
    bool data = false;
    std::vector<GateTemplate> gates;  // static segment
    std::vector<DataKernel> kernels;  // data segment
  };
  struct BoundSegment {
    std::vector<Complex> matrix;  // row-major d x d
    std::vector<std::pair<std::size_t, std::vector<Complex>>> derivatives;
  };
  struct Bound;

  Bound bind(std::span<const double> theta) const;
  double forward(const Bound& bound, std::span<const double> z,
                 std::vector<std::vector<Complex>>* inputs,
                 std::vector<Complex>& psi) const;
  void apply_data(const Segment& seg, std::span<const double> z,
                  std::vector<Complex>& psi, bool adjoint) const;

  Circuit circuit_;
  std::size_t dim_;
  std::vector<Complex> initial_;
  std::vector<Complex> observable_;  // row-major d x d
  std::vector<Segment> segments_;
};

}  // namespace gqpinn
